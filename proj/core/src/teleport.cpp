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
#include <sstream>
#include <string>

#include "unlearn/errors.hpp"
#include "unlearn/random_ops.hpp"

namespace unlearn::teleport {

namespace {

void require_theta(double theta, bool allow_zero, const char* op) {
  const bool ok = allow_zero ? (theta >= 0.0) : (theta > 0.0);
  if (!ok || !(theta <= std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << op << ": theta " << theta << " outside " << (allow_zero ? "[0" : "(0") << ", pi/2]";
    throw DomainError(msg.str());
  }
}

ComplexMatrix column_of(const Amplitudes& a) { return ComplexMatrix::column({a[0], a[1]}); }

Amplitudes normalized(const ComplexMatrix& v) {
  const double n = v.frobenius_norm();
  return {v(0, 0) / n, v(1, 0) / n};
}

double fidelity(const Amplitudes& x, const Amplitudes& y) {
  return std::norm(std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]);
}

}  // namespace

void TeleportScenario::validate() const {
  require_theta(theta, true, "TeleportScenario");
  const double norm = std::norm(input[0]) + std::norm(input[1]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw DomainError("TeleportScenario: input state is not normalized");
  }
}

std::array<ComplexMatrix, 4> alice_basis(double theta) {
  require_theta(theta, true, "alice_basis");
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  // Index of |x y> is 2x + y.
  return {ComplexMatrix::column({s, 0.0, 0.0, c}), ComplexMatrix::column({0.0, c, s, 0.0}),
          ComplexMatrix::column({c, 0.0, 0.0, -s}), ComplexMatrix::column({0.0, -s, c, 0.0})};
}

ComplexMatrix shared_pair(double theta) {
  require_theta(theta, true, "shared_pair");
  return ComplexMatrix::column({std::cos(theta / 2), 0.0, 0.0, std::sin(theta / 2)});
}

Povm effective_kraus(double theta) {
  require_theta(theta, false, "effective_kraus");
  const auto basis = alice_basis(theta);
  const ComplexMatrix pair = shared_pair(theta);
  const ComplexMatrix bob_identity = ComplexMatrix::identity(2);

  std::vector<KrausOperator> ops;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    // (<Psi_i| (x) I_bob) maps the 8-dim joint state to Bob's qubit.
    const ComplexMatrix projector = kron(dagger(basis[i]), bob_identity);
    std::vector<Complex> entries(4);
    for (std::size_t in = 0; in < 2; ++in) {
      const ComplexMatrix payload = in == 0 ? ComplexMatrix::column({1.0, 0.0})
                                            : ComplexMatrix::column({0.0, 1.0});
      const ComplexMatrix bob = projector * kron(payload, pair);
      entries[0 * 2 + in] = bob(0, 0);
      entries[1 * 2 + in] = bob(1, 0);
    }
    ops.emplace_back(ComplexMatrix(2, 2, std::move(entries)), "alice" + std::to_string(i));
  }
  return Povm(std::move(ops));
}

double recovery_probability(double theta) {
  require_theta(theta, true, "recovery_probability");
  return 1.0 - std::cos(theta);
}

TeleportChannel::TeleportChannel(double theta) : theta_(theta), povm_(effective_kraus(theta)) {
  for (std::size_t j = 0; j < povm_.size(); ++j) {
    witnesses_[j] = unitary_witness(povm_[j]);
    if (!witnesses_[j]) {
      plans_[j] = procrustean_plan(povm_[j]);
      const auto w = unitary_witness(KrausOperator(plans_[j]->cumulative_success));
      if (!w) {
        throw NumericError("TeleportChannel: filtered branch is not unitary-proportional");
      }
      filter_unitaries_[j] = w->unitary;
    }
  }
}

TeleportOutcome TeleportChannel::run(const Amplitudes& input, CounterRng& rng) const {
  const ComplexMatrix phi = column_of(input);
  std::vector<ComplexMatrix> branches;
  std::vector<double> probs;
  for (const auto& k : povm_.kraus_ops()) {
    branches.push_back(k.matrix() * phi);
    probs.push_back(std::pow(branches.back().frobenius_norm(), 2));
  }
  const std::size_t j = sample_index(probs, rng);
  TeleportOutcome out{j, false, std::nullopt, std::nullopt, std::nullopt};

  if (witnesses_[j]) {
    out.delivered_state = normalized(dagger(witnesses_[j]->unitary) * branches[j]);
  } else if (plans_[j]) {
    out.bob_filter_applied = true;
    const ComplexMatrix filtered = plans_[j]->success_kraus.matrix() * branches[j];
    const double pass = std::pow(filtered.frobenius_norm(), 2) / probs[j];
    if (rng.uniform() < pass) {
      out.bob_filter_result = FilterResult::kSuccess;
      out.delivered_state = normalized(dagger(*filter_unitaries_[j]) * filtered);
    } else {
      out.bob_filter_result = FilterResult::kFailure;
    }
  }
  if (out.delivered_state) {
    out.fidelity = fidelity(input, *out.delivered_state);
  }
  return out;
}

TeleportOutcome run_protocol(const TeleportScenario& s) {
  s.validate();
  CounterRng rng(s.seed);
  return TeleportChannel(s.theta).run(s.input, rng);
}

std::vector<double> theta_grid(std::size_t points) {
  constexpr double lo = 0.01;
  constexpr double hi = std::numbers::pi / 2;
  if (points == 0) {
    return {};
  }
  if (points == 1) {
    return {hi};
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(i + 1 == points ? hi
                                  : lo + (hi - lo) * static_cast<double>(i) /
                                             static_cast<double>(points - 1));
  }
  return out;
}

std::vector<SweepRow> sweep(const std::vector<double>& thetas, std::size_t n_runs,
                            std::uint64_t master_seed) {
  std::vector<SweepRow> rows;
  for (std::size_t r = 0; r < thetas.size(); ++r) {
    const double theta = thetas[r];
    const TeleportChannel channel(theta);
    const std::uint64_t row_seed = derive_seed(master_seed, r);
    std::size_t delivered = 0;
    for (std::size_t i = 0; i < n_runs; ++i) {
      CounterRng rng(derive_seed(row_seed, i));
      const ComplexMatrix v = random::pure_state_vector(2, rng);
      if (channel.run({v(0, 0), v(1, 0)}, rng).delivered()) {
        ++delivered;
      }
    }
    rows.push_back({theta, recovery_probability(theta),
                    multi_outcome_recovery_probability(channel.povm()).total_recoverable,
                    n_runs ? static_cast<double>(delivered) / static_cast<double>(n_runs) : 0.0,
                    n_runs});
  }
  return rows;
}

}  // namespace unlearn::teleport
