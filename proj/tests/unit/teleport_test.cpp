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

#include "unlearn/teleport.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "test_util.hpp"
#include "unlearn/errors.hpp"
#include "unlearn/random_ops.hpp"

using namespace unlearn;
using namespace unlearn::teleport;

namespace {

constexpr double kPi = std::numbers::pi;

// Receiver operator for sender outcome m, by explicit index sums:
// K[k][i] = sum_j conj(basis_m[i, j]) * pair[j, k].
ComplexMatrix kraus_by_hand(double theta, std::size_t m) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  // basis[m][2 * payload + sender]
  const double basis[4][4] = {{s, 0, 0, c}, {0, c, s, 0}, {c, 0, 0, -s}, {0, -s, c, 0}};
  const double pair[4] = {c, 0, 0, s};
  std::vector<Complex> out(4);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out[k * 2 + i] += basis[m][i * 2 + j] * pair[j * 2 + k];
  return ComplexMatrix(2, 2, out);
}

Amplitudes random_payload(CounterRng& rng) {
  const ComplexMatrix v = random::pure_state_vector(2, rng);
  return {v(0, 0), v(1, 0)};
}

}  // namespace

TEST(alice_basis, is_orthonormal) {
  for (double theta : {0.0, 0.3, kPi / 3.0, kPi / 2.0}) {
    const auto basis = alice_basis(theta);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex ip = (dagger(basis[i]) * basis[j])(0, 0);
        EXPECT_NEAR(std::abs(ip), i == j ? 1.0 : 0.0, 1e-15);
      }
    }
  }
  EXPECT_THROW(alice_basis(-0.1), DomainError);
  EXPECT_THROW(alice_basis(2.0), DomainError);
}

TEST(alice_basis, maximal_entanglement_gives_bell_states) {
  const auto basis = alice_basis(kPi / 2.0);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_MATRIX_NEAR(basis[0], ComplexMatrix::column({h, 0.0, 0.0, h}), 1e-15);
  EXPECT_MATRIX_NEAR(basis[2], ComplexMatrix::column({h, 0.0, 0.0, -h}), 1e-15);
}

TEST(effective_kraus, matches_index_sums) {
  for (double theta : {0.01, 0.4, kPi / 3.0, 1.2, kPi / 2.0}) {
    const Povm p = effective_kraus(theta);
    ASSERT_EQ(p.size(), 4u);
    for (std::size_t m = 0; m < 4; ++m) {
      EXPECT_MATRIX_NEAR(p[m].matrix(), kraus_by_hand(theta, m), 1e-15);
    }
    EXPECT_TRUE(validate_povm(p, 1e-12).passed);
  }
}

TEST(effective_kraus, closed_forms_at_sixty_degrees) {
  const Povm p = effective_kraus(kPi / 3.0);
  const double c = std::cos(kPi / 6.0);
  const double s = std::sin(kPi / 6.0);
  EXPECT_MATRIX_NEAR(p[0].matrix(), Complex(s * c) * ComplexMatrix::identity(2), 1e-15);
  EXPECT_MATRIX_NEAR(p[1].matrix(), (ComplexMatrix{{0.0, s * c}, {s * c, 0.0}}), 1e-15);
  EXPECT_MATRIX_NEAR(p[2].matrix(), ComplexMatrix::diagonal({c * c, -s * s}), 1e-15);
  EXPECT_MATRIX_NEAR(p[3].matrix(), (ComplexMatrix{{0.0, c * c}, {-s * s, 0.0}}), 1e-15);
  // 1/4 sin^2(60 deg) = 0.1875 for each unitary outcome; total 1 - cos = 0.5.
  const DensityOperator rho = DensityOperator::maximally_mixed(2);
  EXPECT_NEAR(outcome_probability(p, 0, rho), 0.1875, 1e-15);
  EXPECT_NEAR(outcome_probability(p, 1, rho), 0.1875, 1e-15);
  EXPECT_NEAR(multi_outcome_recovery_probability(p).total_recoverable, 0.5, 1e-12);
  EXPECT_NEAR(recovery_probability(kPi / 3.0), 0.5, 1e-15);
}

TEST(effective_kraus, zero_angle_is_rejected) {
  EXPECT_THROW(effective_kraus(0.0), DomainError);
  EXPECT_NEAR(recovery_probability(0.0), 0.0, 0.0);
}

TEST(effective_kraus, bound_matches_closed_form) {
  for (double theta : theta_grid(50)) {
    const Povm p = effective_kraus(theta);
    EXPECT_NEAR(multi_outcome_recovery_probability(p).total_recoverable, recovery_probability(theta), 1e-9);
  }
}

TEST(teleport_channel, corrections_exist_where_expected) {
  const TeleportChannel ch(kPi / 3.0);
  EXPECT_TRUE(ch.witness(0).has_value());
  EXPECT_TRUE(ch.witness(1).has_value());
  EXPECT_FALSE(ch.witness(2).has_value());
  EXPECT_FALSE(ch.witness(3).has_value());
  ASSERT_TRUE(ch.plan(2).has_value());
  ASSERT_TRUE(ch.plan(3).has_value());
  const double s = std::sin(kPi / 6.0);
  EXPECT_NEAR(ch.plan(2)->success_probability, std::pow(s, 4), 1e-12);
  EXPECT_NEAR(ch.plan(3)->success_probability, std::pow(s, 4), 1e-12);
}

TEST(teleport_channel, monte_carlo_rates_and_fidelity) {
  const double theta = kPi / 3.0;
  const TeleportChannel ch(theta);
  const std::size_t n = 40000;
  std::array<std::size_t, 4> alice{};
  std::array<std::size_t, 4> filtered_success{};
  std::size_t delivered = 0;
  CounterRng rng(99);
  for (std::size_t i = 0; i < n; ++i) {
    const TeleportOutcome o = ch.run(random_payload(rng), rng);
    ++alice[o.alice_result];
    EXPECT_EQ(o.bob_filter_applied, o.alice_result >= 2);
    if (o.delivered()) {
      ++delivered;
      ASSERT_TRUE(o.fidelity.has_value());
      EXPECT_NEAR(*o.fidelity, 1.0, 1e-9);
      if (o.bob_filter_applied) ++filtered_success[o.alice_result];
    }
  }
  const auto within = [n](std::size_t count, double p) {
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return std::abs(static_cast<double>(count) / static_cast<double>(n) - p) <= 4.0 * sigma;
  };
  EXPECT_TRUE(within(alice[0], 0.1875));
  EXPECT_TRUE(within(alice[1], 0.1875));
  const double s4 = std::pow(std::sin(theta / 2.0), 4);
  EXPECT_TRUE(within(filtered_success[2], s4));
  EXPECT_TRUE(within(filtered_success[3], s4));
  EXPECT_TRUE(within(delivered, 0.5));
}

TEST(teleport, maximal_entanglement_always_delivers) {
  const TeleportChannel ch(kPi / 2.0);
  CounterRng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const TeleportOutcome o = ch.run(random_payload(rng), rng);
    ASSERT_TRUE(o.delivered());
    EXPECT_NEAR(*o.fidelity, 1.0, 1e-9);
  }
}

TEST(teleport, scenario_validation_and_replay) {
  TeleportScenario bad{0.5, {Complex(1.0), Complex(1.0)}, 1};
  EXPECT_THROW(bad.validate(), DomainError);
  TeleportScenario out_of_range{2.0, {Complex(1.0), Complex(0.0)}, 1};
  EXPECT_THROW(out_of_range.validate(), DomainError);

  const TeleportScenario s{1.0, {Complex(0.6), Complex(0.0, 0.8)}, 1234};
  const TeleportOutcome a = run_protocol(s);
  const TeleportOutcome b = run_protocol(s);
  EXPECT_EQ(a.alice_result, b.alice_result);
  EXPECT_EQ(a.delivered(), b.delivered());
}

TEST(teleport, theta_grid_endpoints) {
  const auto grid = theta_grid(50);
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.01);
  EXPECT_EQ(grid.back(), kPi / 2.0);
}

TEST(teleport, sweep_is_reproducible) {
  const std::vector<double> thetas{0.5, 1.0};
  const auto a = sweep(thetas, 500, 7);
  const auto b = sweep(thetas, 500, 7);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].p_montecarlo, b[r].p_montecarlo);
    EXPECT_NEAR(a[r].p_analytic, 1.0 - std::cos(thetas[r]), 1e-15);
    EXPECT_NEAR(a[r].p_povm_bound, a[r].p_analytic, 1e-9);
    EXPECT_EQ(a[r].n_runs, 500u);
  }
}
