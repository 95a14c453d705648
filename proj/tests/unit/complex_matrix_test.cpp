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

#include "unlearn/complex_matrix.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

#include "test_util.hpp"
#include "unlearn/errors.hpp"
#include "unlearn/random_ops.hpp"

using namespace unlearn;

namespace {

const Complex I(0.0, 1.0);

}  // namespace

TEST(complex_matrix, construction_checks) {
  EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  EXPECT_THROW(ComplexMatrix(0, 2), ShapeError);
  EXPECT_THROW(ComplexMatrix(1, 1, {std::numeric_limits<double>::quiet_NaN()}), NumericError);
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), ShapeError);
  const ComplexMatrix m{{1.0, 2.0}, {3.0, I}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(1, 1), I);
  EXPECT_EQ(m.trace(), 1.0 + I);
}

TEST(complex_matrix, multiply) {
  const ComplexMatrix a{{1.0 + I, 2.0}, {0.5, -I}};
  EXPECT_MATRIX_NEAR(multiply(ComplexMatrix::identity(2), a), a, 0.0);
  EXPECT_MATRIX_NEAR(multiply(ComplexMatrix::diagonal({2.0, 3.0}), ComplexMatrix::diagonal({5.0, 7.0})),
                     ComplexMatrix::diagonal({10.0, 21.0}), 0.0);
  const ComplexMatrix nil{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_MATRIX_NEAR(multiply(nil, nil), ComplexMatrix(2, 2), 0.0);
  EXPECT_THROW(multiply(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
}

TEST(complex_matrix, multiply_is_associative) {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const ComplexMatrix a = random::ginibre(n, n, rng);
    const ComplexMatrix b = random::ginibre(n, n, rng);
    const ComplexMatrix c = random::ginibre(n, n, rng);
    EXPECT_MATRIX_NEAR((a * b) * c, a * (b * c), 1e-12);
  }
}

TEST(complex_matrix, dagger) {
  const ComplexMatrix h{{2.0, 1.0 - I}, {1.0 + I, -1.0}};
  EXPECT_MATRIX_NEAR(dagger(h), h, 0.0);
  EXPECT_MATRIX_NEAR(dagger(ComplexMatrix{{0.0, I}, {0.0, 0.0}}),
                     (ComplexMatrix{{0.0, 0.0}, {-I, 0.0}}), 0.0);
  CounterRng rng(3);
  const ComplexMatrix a = random::ginibre(3, 5, rng);
  EXPECT_EQ(dagger(a).rows(), 5u);
  EXPECT_MATRIX_NEAR(dagger(dagger(a)), a, 0.0);
}

TEST(complex_matrix, kron_matches_index_formula) {
  CounterRng rng(5);
  const ComplexMatrix a = random::ginibre(2, 3, rng);
  const ComplexMatrix b = random::ginibre(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 2; ++s)
          EXPECT_EQ(k(i * 3 + r, j * 2 + s), a(i, j) * b(r, s));
}

TEST(svd, diagonal_input) {
  const SvdResult s = svd(ComplexMatrix::diagonal({0.9, 0.5}));
  ASSERT_EQ(s.singular_values.size(), 2u);
  EXPECT_DOUBLE_EQ(s.singular_values[0], 0.9);
  EXPECT_DOUBLE_EQ(s.singular_values[1], 0.5);

  const SvdResult swapped = svd(ComplexMatrix::diagonal({0.5, 0.9}));
  EXPECT_DOUBLE_EQ(swapped.singular_values[0], 0.9);
  EXPECT_DOUBLE_EQ(swapped.singular_values[1], 0.5);
  EXPECT_MATRIX_NEAR(swapped.reconstruct(), ComplexMatrix::diagonal({0.5, 0.9}), 1e-15);
}

TEST(svd, unitary_has_unit_singular_values) {
  CounterRng rng(17);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (double x : svd(random::unitary(n, rng)).singular_values) {
      EXPECT_NEAR(x, 1.0, 1e-12);
    }
  }
}

TEST(svd, ties_keep_input_order) {
  // No rotation is needed, so the identity bases must come back unchanged.
  const SvdResult s = svd(ComplexMatrix::diagonal({0.7, 0.7, 0.7}));
  EXPECT_MATRIX_NEAR(s.left_unitary, ComplexMatrix::identity(3), 0.0);
  EXPECT_MATRIX_NEAR(s.right_unitary_dagger, ComplexMatrix::identity(3), 0.0);
}

TEST(svd, reconstructs_random_matrices) {
  CounterRng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(16);
    const std::size_t cols = 1 + rng.below(16);
    const ComplexMatrix a = random::ginibre(rows, cols, rng);
    const SvdResult s = svd(a);
    ASSERT_EQ(s.singular_values.size(), std::min(rows, cols));
    EXPECT_TRUE(is_unitary(s.left_unitary, 1e-10));
    EXPECT_TRUE(is_unitary(s.right_unitary_dagger, 1e-10));
    EXPECT_LE(frobenius_distance(s.reconstruct(), a), 1e-10 * std::max(1.0, a.frobenius_norm()));
    for (std::size_t i = 1; i < s.singular_values.size(); ++i) {
      EXPECT_GE(s.singular_values[i - 1], s.singular_values[i]);
    }
  }
}

TEST(svd, rank_deficient_input_still_has_unitary_factors) {
  CounterRng rng(8);
  const ComplexMatrix col = random::ginibre(4, 1, rng);
  const ComplexMatrix rank_one = col * dagger(col);
  const SvdResult s = svd(rank_one);
  EXPECT_TRUE(is_unitary(s.left_unitary, 1e-10));
  EXPECT_TRUE(is_unitary(s.right_unitary_dagger, 1e-10));
  EXPECT_LE(frobenius_distance(s.reconstruct(), rank_one), 1e-10 * rank_one.frobenius_norm());
  EXPECT_LT(s.singular_values[1], 1e-12);

  const SvdResult zero = svd(ComplexMatrix(3, 3));
  EXPECT_TRUE(is_unitary(zero.left_unitary, 1e-12));
  EXPECT_EQ(zero.singular_values[0], 0.0);
}

TEST(hermitian_eigen, reconstructs) {
  CounterRng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(16);
    const ComplexMatrix g = random::ginibre(n, n, rng);
    const ComplexMatrix h = Complex(0.5) * (g + dagger(g));
    const HermitianEigen e = hermitian_eigen(h);
    EXPECT_TRUE(is_unitary(e.vectors, 1e-10));
    const ComplexMatrix back =
        e.vectors * ComplexMatrix::diagonal(std::span<const double>(e.values)) * dagger(e.vectors);
    EXPECT_MATRIX_NEAR(back, h, 1e-10 * std::max(1.0, h.frobenius_norm()));
    for (std::size_t i = 1; i < n; ++i) {
      EXPECT_LE(e.values[i - 1], e.values[i]);
    }
  }
}

TEST(hermitian_sqrt, known_values) {
  EXPECT_MATRIX_NEAR(hermitian_sqrt(ComplexMatrix::diagonal({0.25, 0.81})),
                     ComplexMatrix::diagonal({0.5, 0.9}), 1e-15);
  EXPECT_MATRIX_NEAR(hermitian_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4), 0.0);
}

TEST(hermitian_sqrt, squares_back_for_random_psd) {
  CounterRng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(16);
    const ComplexMatrix b = random::ginibre(n, n, rng);
    const ComplexMatrix p = dagger(b) * b;
    const ComplexMatrix root = hermitian_sqrt(p);
    EXPECT_TRUE(is_hermitian(root, 1e-10));
    EXPECT_TRUE(is_psd(root));
    EXPECT_MATRIX_NEAR(root * root, p, 1e-9);
  }
}

TEST(hermitian_sqrt, rejects_negative_and_non_hermitian) {
  EXPECT_THROW(hermitian_sqrt(ComplexMatrix::diagonal({0.1, -0.01})), NotPsdError);
  EXPECT_THROW(hermitian_sqrt(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), NotPsdError);
  EXPECT_THROW(hermitian_sqrt(ComplexMatrix(2, 3)), ShapeError);
  // Within slack: treated as zero.
  EXPECT_MATRIX_NEAR(hermitian_sqrt(ComplexMatrix::diagonal({0.25, -1e-12})),
                     ComplexMatrix::diagonal({0.5, 0.0}), 1e-15);
}

TEST(is_psd, cases) {
  EXPECT_TRUE(is_psd(ComplexMatrix::diagonal({0.1, 0.0})));
  EXPECT_FALSE(is_psd(ComplexMatrix::diagonal({0.1, -0.01}), 1e-10));
  EXPECT_FALSE(is_psd(ComplexMatrix{{1.0, I}, {I, 1.0}}));
  EXPECT_THROW(is_psd(ComplexMatrix(2, 3)), ShapeError);
  CounterRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix k = random::ginibre(4, 4, rng);
    EXPECT_TRUE(is_psd(dagger(k) * k));
  }
}
