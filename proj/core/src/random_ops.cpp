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

#include "unlearn/random_ops.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace unlearn::random {

namespace {

// Inverse principal square root of a Hermitian positive definite matrix.
ComplexMatrix inverse_sqrt(const ComplexMatrix& a) {
  const HermitianEigen eig = hermitian_eigen(a);
  const std::size_t n = a.rows();
  std::vector<Complex> e(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] += eig.vectors(i, k) * w * std::conj(eig.vectors(j, k));
      }
    }
  }
  return ComplexMatrix(n, n, std::move(e));
}

}  // namespace

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng) {
  std::vector<Complex> e(rows * cols);
  for (Complex& z : e) {
    z = rng.complex_normal();
  }
  return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix unitary(std::size_t n, CounterRng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  std::vector<std::vector<Complex>> q;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> v(n);
    for (std::size_t r = 0; r < n; ++r) {
      v[r] = g(r, c);
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : q) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          proj += std::conj(b[r]) * v[r];
        }
        for (std::size_t r = 0; r < n; ++r) {
          v[r] -= proj * b[r];
        }
      }
    }
    double norm = 0.0;
    for (const Complex& z : v) {
      norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (Complex& z : v) {
      z /= norm;
    }
    q.push_back(std::move(v));
  }
  std::vector<Complex> e(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      e[r * n + c] = q[c][r];
    }
  }
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix pure_state_vector(std::size_t n, CounterRng& rng) {
  const ComplexMatrix g = ginibre(n, 1, rng);
  return Complex(1.0 / g.frobenius_norm()) * g;
}

DensityOperator pure_state(std::size_t n, CounterRng& rng) {
  return DensityOperator::pure(pure_state_vector(n, rng));
}

DensityOperator mixed_state(std::size_t n, CounterRng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  const ComplexMatrix gg = g * dagger(g);
  const ComplexMatrix rho = Complex(1.0 / gg.trace().real()) * gg;
  return DensityOperator(Complex(0.5) * (rho + dagger(rho)));
}

ComplexMatrix contraction(std::size_t n, double min_singular, double max_singular, CounterRng& rng) {
  std::vector<double> s(n);
  for (double& x : s) {
    x = rng.uniform(min_singular, max_singular);
  }
  return unitary(n, rng) * ComplexMatrix::diagonal(std::span<const double>(s)) * unitary(n, rng);
}

Povm complete_povm(std::size_t n, std::size_t outcomes, CounterRng& rng) {
  std::vector<ComplexMatrix> gs;
  ComplexMatrix sum(n, n);
  for (std::size_t j = 0; j < outcomes; ++j) {
    gs.push_back(ginibre(n, n, rng));
    sum = sum + dagger(gs.back()) * gs.back();
  }
  const ComplexMatrix w = inverse_sqrt(Complex(0.5) * (sum + dagger(sum)));
  std::vector<KrausOperator> ops;
  for (std::size_t j = 0; j < outcomes; ++j) {
    ops.emplace_back(gs[j] * w, "k" + std::to_string(j));
  }
  return Povm(std::move(ops));
}

}  // namespace unlearn::random
