// Copyright 2026 The Unlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNLEARN_TESTS_TEST_UTIL_HPP
#define UNLEARN_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "unlearn/complex_matrix.hpp"

namespace unlearn::test_support {

inline std::string describe(const ComplexMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? "\n  " : "  ");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out << m(r, c) << ' ';
    }
  }
  return out.str();
}

inline ::testing::AssertionResult matrices_near(const char* a_expr, const char* b_expr,
                                                const char* /*tol_expr*/, const ComplexMatrix& a,
                                                const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << a_expr << " and " << b_expr << " differ in shape";
  }
  const double d = frobenius_distance(a, b);
  if (d <= tol) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "||" << a_expr << " - " << b_expr << "||_F = " << d
                                       << " > " << tol << "\n" << a_expr << ":\n" << describe(a)
                                       << "\n" << b_expr << ":\n" << describe(b);
}

// Tr[K rho K^dagger] by explicit index sums; shares no code with the library.
inline double born_probability_by_hand(const ComplexMatrix& k, const ComplexMatrix& rho) {
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      for (std::size_t l = 0; l < k.cols(); ++l) {
        total += k(i, j) * rho(j, l) * std::conj(k(i, l));
      }
    }
  }
  return total.real();
}

}  // namespace unlearn::test_support

#define EXPECT_MATRIX_NEAR(a, b, tol) EXPECT_PRED_FORMAT3(::unlearn::test_support::matrices_near, a, b, tol)
#define ASSERT_MATRIX_NEAR(a, b, tol) ASSERT_PRED_FORMAT3(::unlearn::test_support::matrices_near, a, b, tol)

#endif  // UNLEARN_TESTS_TEST_UTIL_HPP
