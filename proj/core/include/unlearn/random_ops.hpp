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

#ifndef UNLEARN_RANDOM_OPS_HPP
#define UNLEARN_RANDOM_OPS_HPP

#include <cstddef>

#include "unlearn/complex_matrix.hpp"
#include "unlearn/povm.hpp"
#include "unlearn/rng.hpp"

// Random operators and states for Monte Carlo harnesses and property tests.
namespace unlearn::random {

/// rows x cols matrix of i.i.d. standard complex Gaussians.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng);

/// Haar-distributed unitary (Gram-Schmidt of a Ginibre matrix with phase fix).
ComplexMatrix unitary(std::size_t n, CounterRng& rng);

/// Unit column vector, uniform on the sphere.
ComplexMatrix pure_state_vector(std::size_t n, CounterRng& rng);

DensityOperator pure_state(std::size_t n, CounterRng& rng);

/// Full-rank mixed state G G^dagger / tr(G G^dagger).
DensityOperator mixed_state(std::size_t n, CounterRng& rng);

/// Contraction U diag(s) V^dagger with Haar U, V and singular values drawn
/// uniformly from [min_singular, max_singular].
ComplexMatrix contraction(std::size_t n, double min_singular, double max_singular, CounterRng& rng);

/// Complete measurement of `outcomes` Kraus operators, G_j S^{-1/2} with G_j
/// Ginibre and S = Sum_j G_j^dagger G_j.
Povm complete_povm(std::size_t n, std::size_t outcomes, CounterRng& rng);

}  // namespace unlearn::random

#endif  // UNLEARN_RANDOM_OPS_HPP
