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

#ifndef UNLEARN_RECOVERY_HPP
#define UNLEARN_RECOVERY_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "unlearn/measurement_tree.hpp"
#include "unlearn/povm.hpp"

// Correction measurements that undo the information gained by a
// non-unitary measurement branch.
//
// A branch operator K with singular values q_1 >= ... >= q_min reveals
// information about the state because its Born probability ranges over
// [q_min^2, q_1^2]. A follow-up two-outcome measurement {S, F} is a correction
// when S K is proportional to a unitary: that outcome then carries no
// information and restores unitary evolution. No correction of any shape can
// succeed with probability above q_min^2, and the filter S = U diag(q_min/q_k) U^dagger
// (U the left singular basis of K) reaches it.
namespace unlearn {

/// Pivot below which a branch is treated as rank deficient by procrustean_plan.
inline constexpr double kRankFloor = 1e-12;

struct RecoveryPlan {
  /// Correction outcome S; S * target is proportional to a unitary.
  KrausOperator success_kraus;
  /// sqrt(I - S^dagger S), the other outcome of the correction.
  KrausOperator failure_kraus;
  /// Cumulative S * target = q_min * W.
  ComplexMatrix cumulative_success;
  /// q_min^2, independent of the input state.
  double success_probability;
  /// Singular values of the cumulative failure branch F * target; at least one is zero.
  std::vector<double> residual_failure_kraus_singular_values;
};

/// Single-shot filter that equalizes the spectrum of k. Throws
/// UnrecoverableBranchError when the smallest singular value is <= 1e-12.
RecoveryPlan procrustean_plan(const KrausOperator& k);

struct BoundReport {
  /// Minimum Born probability of each outcome over all states (q_min^2).
  std::vector<double> per_outcome_min_prob;
  /// Sum of the minima: the largest achievable recovery probability.
  double total_recoverable;
  /// Two outcomes: q_max^2 - q_min^2 of the first operator. Otherwise the
  /// unrecoverable remainder 1 - total_recoverable.
  double visibility;
};

/// Recovery bound for a complete two-outcome measurement. Throws
/// CompletenessError when k0^dagger k0 + k1^dagger k1 misses I by more than 1e-9.
BoundReport binary_recovery_probability(const KrausOperator& k0, const KrausOperator& k1);

BoundReport multi_outcome_recovery_probability(const Povm& p);

/// Squared smallest singular value of k.
double success_bound(const KrausOperator& k);

// -- Partial filtering ------------------------------------------------------
//
// Starting from K0 = diag(a, b), the correction {diag(b, a), complement}
// yields ab * I on success and diag(a sqrt(1-b^2), b sqrt(1-a^2)) on failure,
// which is again full rank and can be retried. The complementary initial
// branch K1 = diag(c, d), c = sqrt(1-a^2), d = sqrt(1-b^2), is treated the
// same way with the roles of its entries swapped.

struct FilterStepResult {
  double step_success;
  double a_next;
  double b_next;
};

/// One retry of the K0 chain: ((ab)^2, a sqrt(1-b^2), b sqrt(1-a^2)).
/// Throws DomainError unless 0 <= b <= a <= 1.
FilterStepResult partial_filter_step(double a, double b);

struct FilterStep {
  std::size_t index;
  double a;  // K0 chain residual entries before this step
  double b;
  double c;  // K1 chain residual entries before this step
  double d;
  double step_success_probability;    // (a b)^2
  double mirror_success_probability;  // (c d)^2
  double cumulative_success;          // both chains, through this step
};

struct FilterTrace {
  std::vector<FilterStep> steps;
  double cumulative_success;
  /// Final K0-chain residual (a, b).
  std::pair<double, double> residual;
  std::size_t iterations_used;
  bool converged;
};

inline constexpr std::size_t kDefaultMaxIter = 200;
inline constexpr double kDefaultFilterTol = 1e-8;

/// Iterates both chains until the smaller residual entry of each drops below
/// tol, or max_iter steps. Non-convergence is reported through the flag.
FilterTrace partial_filter_iterate(double a, double b, std::size_t max_iter = kDefaultMaxIter,
                                   double tol = kDefaultFilterTol);

/// 1 - (a^2 - b^2). Throws DomainError unless 0 <= b <= a <= 1.
double partial_filter_limit(double a, double b);

/// Limiting residual effects (M~_inf^0, M~_inf^1) = (diag(a^2-b^2, 0), diag(0, a^2-b^2)).
std::pair<ComplexMatrix, ComplexMatrix> partial_filter_limit_elements(double a, double b);

// -- Synthesized trees -------------------------------------------------------

struct SynthesizedTree {
  TreeNode root;
  /// Leaves whose cumulative operator is proportional to a unitary.
  std::vector<TreePath> success_paths;
  /// Sum of the (state-independent) success-leaf probabilities.
  double success_probability;
  std::size_t attachments;
};

/// Measures `initial` at the root, then attaches the Procrustean correction
/// below every full-rank outcome. Rank-deficient outcomes stay as dead leaves.
SynthesizedTree build_procrustean_tree(const Povm& initial);

/// Order in which partially corrected residual branches are retried.
enum class FilterSchedule {
  kBreadthFirst,  // alternate between the two initial branches, one round each
  kDepthFirst,    // exhaust the K0 chain before starting on K1
};

/// Partial-filtering tree for K0 = diag(a, b) and its complement, spending at
/// most `max_attachments` correction measurements (the initial measurement is
/// not counted). Residuals whose smaller entry is below `tol` are left as leaves.
SynthesizedTree build_partial_filter_tree(double a, double b, std::size_t max_attachments,
                                          FilterSchedule schedule, double tol = kDefaultFilterTol);

// -- Optimality oracle -------------------------------------------------------

struct OracleReport {
  std::size_t trials;
  /// Random strategies that were complete measurements (the rest were discarded).
  std::size_t feasible_trials;
  /// Largest summed probability of unitary-proportional branches observed.
  double max_observed;
  double bound;
  bool bound_holds;
  /// Filter family t * U diag(1/q_k) U^dagger over t in (0, q_min].
  std::size_t grid_points;
  double grid_best_t;
  double grid_best_probability;
  bool grid_attains_bound;
  /// The family leaves the set of valid measurements just beyond t = q_min.
  bool grid_infeasible_beyond;
};

inline constexpr std::size_t kDefaultOracleGridPoints = 1000;

/// Samples `trials` random correction measurements for k and checks that the
/// summed probability of their unitary-proportional branches never exceeds
/// success_bound(k) + 1e-9. Trial i draws from CounterRng(derive_seed(seed, i)).
OracleReport verify_bound_bruteforce(const KrausOperator& k, std::size_t trials, std::uint64_t seed,
                                     std::size_t grid_points = kDefaultOracleGridPoints);

}  // namespace unlearn

#endif  // UNLEARN_RECOVERY_HPP
