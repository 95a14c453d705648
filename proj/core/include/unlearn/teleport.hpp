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

#ifndef UNLEARN_TELEPORT_HPP
#define UNLEARN_TELEPORT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "unlearn/povm.hpp"
#include "unlearn/recovery.hpp"

// Probabilistic teleportation of one qubit through the partially entangled
// pair cos(t/2)|00> + sin(t/2)|11>, where the receiver filters away the
// information that the sender's measurement leaked.
//
// Qubit order in all kets: the payload qubit first, then the sender's half of
// the pair, then the receiver's half.
namespace unlearn::teleport {

using Amplitudes = std::array<Complex, 2>;

struct TeleportScenario {
  double theta;       // radians, [0, pi/2]
  Amplitudes input;   // normalized payload (alpha, beta)
  std::uint64_t seed;

  /// Throws DomainError if theta is out of range or input is not normalized
  /// within 1e-12.
  void validate() const;
};

enum class FilterResult { kSuccess, kFailure };

struct TeleportOutcome {
  std::size_t alice_result;
  bool bob_filter_applied;
  std::optional<FilterResult> bob_filter_result;
  std::optional<Amplitudes> delivered_state;
  /// |<input|delivered>|^2, present when delivered.
  std::optional<double> fidelity;

  bool delivered() const { return delivered_state.has_value(); }
};

/// Sender's measurement basis on (payload, sender half), as 4x1 columns:
///   s|00> + c|11>,  s|10> + c|01>,  c|00> - s|11>,  c|10> - s|01>
/// with c = cos(theta/2), s = sin(theta/2). Throws DomainError outside [0, pi/2].
std::array<ComplexMatrix, 4> alice_basis(double theta);

/// The shared pair as a 4x1 column on (sender half, receiver half).
ComplexMatrix shared_pair(double theta);

/// Effective Kraus operators acting from the payload qubit to the receiver's
/// qubit, one per sender outcome, obtained by projecting the three-qubit state
/// onto alice_basis(theta). Throws DomainError for theta outside (0, pi/2]:
/// at theta = 0 the first two outcomes are zero operators.
Povm effective_kraus(double theta);

/// 1 - cos(theta). Throws DomainError outside [0, pi/2].
double recovery_probability(double theta);

/// Precomputed corrections for one theta, reusable across many runs.
class TeleportChannel {
 public:
  explicit TeleportChannel(double theta);

  double theta() const { return theta_; }
  const Povm& povm() const { return povm_; }

  /// Receiver's unitary undo for outcome j; present for the two
  /// unitary-proportional outcomes.
  const std::optional<UnitaryWitness>& witness(std::size_t j) const { return witnesses_[j]; }
  /// Receiver's filter for outcome j; present for the two information-leaking outcomes.
  const std::optional<RecoveryPlan>& plan(std::size_t j) const { return plans_[j]; }

  TeleportOutcome run(const Amplitudes& input, CounterRng& rng) const;

 private:
  double theta_;
  Povm povm_;
  std::array<std::optional<UnitaryWitness>, 4> witnesses_;
  std::array<std::optional<RecoveryPlan>, 4> plans_;
  // Unitary part W of each filter's cumulative operator q_min * W.
  std::array<std::optional<ComplexMatrix>, 4> filter_unitaries_;
};

/// One protocol run with a generator seeded from s.seed.
TeleportOutcome run_protocol(const TeleportScenario& s);

/// `points` angles evenly spaced on [0.01, pi/2].
std::vector<double> theta_grid(std::size_t points);

struct SweepRow {
  double theta;
  double p_analytic;
  double p_povm_bound;
  double p_montecarlo;
  std::size_t n_runs;
};

/// For each theta: closed form, POVM-minimum bound, and a Monte Carlo estimate
/// over n_runs runs with random payloads. Row r, run i uses
/// CounterRng(derive_seed(derive_seed(master_seed, r), i)).
std::vector<SweepRow> sweep(const std::vector<double>& thetas, std::size_t n_runs,
                            std::uint64_t master_seed);

}  // namespace unlearn::teleport

#endif  // UNLEARN_TELEPORT_HPP
