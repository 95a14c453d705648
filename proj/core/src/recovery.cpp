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

#include "unlearn/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <string>

#include "unlearn/errors.hpp"
#include "unlearn/random_ops.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

namespace {

void require_filter_domain(double a, double b, const char* op) {
  if (!(0.0 <= b && b <= a && a <= 1.0)) {
    std::ostringstream msg;
    msg << op << ": need 0 <= b <= a <= 1, got a=" << a << " b=" << b;
    throw DomainError(msg.str());
  }
}

// U diag(weights) U^dagger.
ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, const std::vector<double>& weights) {
  return u * ComplexMatrix::diagonal(std::span<const double>(weights)) * dagger(u);
}

}  // namespace

RecoveryPlan procrustean_plan(const KrausOperator& k) {
  const SvdResult s = svd(k.matrix());
  const double q_min = s.singular_values.back();
  if (q_min <= kRankFloor) {
    throw UnrecoverableBranchError("procrustean_plan: branch '" + k.label() +
                                   "' has a non-trivial nullspace and cannot be corrected");
  }
  std::vector<double> ratios;
  ratios.reserve(s.singular_values.size());
  for (double q : s.singular_values) {
    // Degenerate minima map to exactly 1.
    ratios.push_back(q == q_min ? 1.0 : q_min / q);
  }
  KrausOperator success(conjugate_diagonal(s.left_unitary, ratios), k.label() + ".success");
  KrausOperator failure = complement_kraus(success, k.label() + ".failure");
  ComplexMatrix cumulative = success.matrix() * k.matrix();
  std::vector<double> residual = singular_values(failure.matrix() * k.matrix());
  return RecoveryPlan{std::move(success), std::move(failure), std::move(cumulative), q_min * q_min,
                      std::move(residual)};
}

double success_bound(const KrausOperator& k) {
  const double q_min = singular_values(k.matrix()).back();
  return q_min * q_min;
}

BoundReport binary_recovery_probability(const KrausOperator& k0, const KrausOperator& k1) {
  if (k0.dim() != k1.dim()) {
    throw ShapeError("binary_recovery_probability: dimension mismatch");
  }
  const double residual =
      frobenius_distance(k0.element() + k1.element(), ComplexMatrix::identity(k0.dim()));
  if (residual > kStructuralTol) {
    std::ostringstream msg;
    msg << "binary_recovery_probability: pair is incomplete (residual " << residual << ")";
    throw CompletenessError(msg.str());
  }
  const std::vector<double> s0 = singular_values(k0.matrix());
  const double min0 = s0.back() * s0.back();
  const double min1 = success_bound(k1);
  return BoundReport{{min0, min1}, min0 + min1, s0.front() * s0.front() - min0};
}

BoundReport multi_outcome_recovery_probability(const Povm& p) {
  BoundReport report{{}, 0.0, 0.0};
  for (const auto& k : p.kraus_ops()) {
    report.per_outcome_min_prob.push_back(success_bound(k));
    report.total_recoverable += report.per_outcome_min_prob.back();
  }
  if (p.size() == 2) {
    const std::vector<double> s0 = singular_values(p[0].matrix());
    report.visibility = s0.front() * s0.front() - s0.back() * s0.back();
  } else {
    report.visibility = 1.0 - report.total_recoverable;
  }
  return report;
}

FilterStepResult partial_filter_step(double a, double b) {
  require_filter_domain(a, b, "partial_filter_step");
  const double ab = a * b;
  return FilterStepResult{ab * ab, a * std::sqrt(1.0 - b * b), b * std::sqrt(1.0 - a * a)};
}

FilterTrace partial_filter_iterate(double a, double b, std::size_t max_iter, double tol) {
  require_filter_domain(a, b, "partial_filter_iterate");
  FilterTrace trace{{}, 0.0, {a, b}, 0, false};
  double c = std::sqrt(1.0 - a * a);
  double d = std::sqrt(1.0 - b * b);
  for (std::size_t j = 0; j < max_iter; ++j) {
    const FilterStepResult k0 = partial_filter_step(a, b);
    // The K1 chain is the same recursion with its larger entry d leading.
    const FilterStepResult k1 = partial_filter_step(d, c);
    trace.cumulative_success += k0.step_success + k1.step_success;
    trace.steps.push_back(
        {j, a, b, c, d, k0.step_success, k1.step_success, trace.cumulative_success});
    a = k0.a_next;
    b = k0.b_next;
    d = k1.a_next;
    c = k1.b_next;
    trace.iterations_used = j + 1;
    if (b < tol && c < tol) {
      trace.converged = true;
      break;
    }
  }
  trace.residual = {a, b};
  return trace;
}

double partial_filter_limit(double a, double b) {
  require_filter_domain(a, b, "partial_filter_limit");
  return 1.0 - (a * a - b * b);
}

std::pair<ComplexMatrix, ComplexMatrix> partial_filter_limit_elements(double a, double b) {
  require_filter_domain(a, b, "partial_filter_limit_elements");
  const double gap = a * a - b * b;
  return {ComplexMatrix::diagonal({gap, 0.0}), ComplexMatrix::diagonal({0.0, gap})};
}

SynthesizedTree build_procrustean_tree(const Povm& initial) {
  SynthesizedTree out{attach_povm(TreeNode::root(initial.dim()), initial), {}, 0.0, 0};
  for (std::size_t j = 0; j < initial.size(); ++j) {
    const TreeNode& child = out.root.children()[j];
    if (auto w = unitary_witness(child.cumulative_kraus())) {
      out.success_paths.push_back(child.path());
      out.success_probability += w->scale * w->scale;
      continue;
    }
    if (singular_values(child.cumulative_kraus().matrix()).back() <= kRankFloor) {
      continue;
    }
    const RecoveryPlan plan = procrustean_plan(child.cumulative_kraus());
    const TreePath path = child.path();
    out.root = attach_at(out.root, path,
                         Povm({plan.success_kraus, plan.failure_kraus}));
    ++out.attachments;
    TreePath success = path;
    success.push_back(0);
    out.success_paths.push_back(std::move(success));
    out.success_probability += plan.success_probability;
  }
  return out;
}

SynthesizedTree build_partial_filter_tree(double a, double b, std::size_t max_attachments,
                                          FilterSchedule schedule, double tol) {
  require_filter_domain(a, b, "build_partial_filter_tree");
  const KrausOperator k0(ComplexMatrix::diagonal({a, b}), "k0");
  const Povm initial({k0, complement_kraus(k0, "k1")});
  SynthesizedTree out{attach_povm(TreeNode::root(2), initial), {}, 0.0, 0};

  std::deque<TreePath> pending{{0}, {1}};
  while (!pending.empty()) {
    const TreePath path = pending.front();
    pending.pop_front();
    const KrausOperator& residual = find_node(out.root, path)->cumulative_kraus();
    if (auto w = unitary_witness(residual)) {
      out.success_paths.push_back(path);
      out.success_probability += w->scale * w->scale;
      continue;
    }
    const double x = residual.matrix()(0, 0).real();
    const double y = residual.matrix()(1, 1).real();
    if (std::min(x, y) < tol || out.attachments >= max_attachments) {
      continue;
    }
    const KrausOperator retry(ComplexMatrix::diagonal({y, x}), "retry.success");
    out.root = attach_at(out.root, path, Povm({retry, complement_kraus(retry, "retry.failure")}));
    ++out.attachments;

    TreePath success = path;
    success.push_back(0);
    out.success_paths.push_back(success);
    out.success_probability += (x * y) * (x * y);

    TreePath next = path;
    next.push_back(1);
    if (schedule == FilterSchedule::kBreadthFirst) {
      pending.push_back(std::move(next));
    } else {
      pending.push_front(std::move(next));
    }
  }
  return out;
}

OracleReport verify_bound_bruteforce(const KrausOperator& k, std::size_t trials, std::uint64_t seed,
                                     std::size_t grid_points) {
  const std::size_t n = k.dim();
  const SvdResult s = svd(k.matrix());
  const double q_min = s.singular_values.back();
  OracleReport report{trials, 0, 0.0, q_min * q_min, true, grid_points, 0.0, 0.0, false, false};
  const ComplexMatrix identity = ComplexMatrix::identity(n);

  // Pseudo-inverse pieces of k for strategies aimed at unitary branches.
  const bool invertible = q_min > kRankFloor;
  std::vector<double> inverse_sigma;
  for (double q : s.singular_values) {
    inverse_sigma.push_back(invertible ? 1.0 / q : 0.0);
  }
  const ComplexMatrix k_inverse = dagger(s.right_unitary_dagger) *
                                  ComplexMatrix::diagonal(std::span<const double>(inverse_sigma)) *
                                  dagger(s.left_unitary);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(derive_seed(seed, trial));
    const std::size_t outcomes = 2 + static_cast<std::size_t>(rng.below(3));
    std::vector<ComplexMatrix> branches;

    if (!invertible || rng.below(3) == 0) {
      // Unstructured: a Haar-like random complete measurement.
      const Povm random_povm = random::complete_povm(n, outcomes, rng);
      for (const auto& op : random_povm.kraus_ops()) {
        branches.push_back(op.matrix());
      }
    } else {
      // Aim some branches at unitary cumulative evolution, W_i k^-1 scaled by
      // a random factor that may overshoot what completeness allows; complete
      // with randomly rotated shares of whatever is left.
      const std::size_t aimed = 1 + static_cast<std::size_t>(rng.below(outcomes - 1));
      std::vector<ComplexMatrix> targets;
      ComplexMatrix load(n, n);
      for (std::size_t i = 0; i < aimed; ++i) {
        targets.push_back(Complex(rng.uniform(0.05, 1.0)) * random::unitary(n, rng) * k_inverse);
        load = load + dagger(targets.back()) * targets.back();
      }
      const double top = hermitian_eigen(load).values.back();
      const double overshoot = rng.below(4) == 0 ? 1.0 : rng.uniform(0.0, 1.25);
      const double scale = std::sqrt(overshoot / top);
      for (const auto& t : targets) {
        branches.push_back(Complex(scale) * t);
      }
      const ComplexMatrix rest = identity - Complex(scale * scale) * load;
      if (!is_psd(rest)) {
        continue;
      }
      const std::size_t fillers = outcomes - aimed;
      std::vector<double> shares(fillers);
      double share_total = 0.0;
      for (double& x : shares) {
        x = rng.uniform(0.1, 1.0);
        share_total += x;
      }
      for (double x : shares) {
        branches.push_back(random::unitary(n, rng) *
                           hermitian_sqrt(Complex(x / share_total) * rest));
      }
    }

    ComplexMatrix total(n, n);
    for (const auto& c : branches) {
      total = total + dagger(c) * c;
    }
    if (frobenius_distance(total, identity) > kStructuralTol) {
      continue;
    }
    ++report.feasible_trials;

    double unitary_mass = 0.0;
    for (const auto& c : branches) {
      const std::vector<double> sv = singular_values(c * k.matrix());
      if (sv.front() - sv.back() <= kStructuralTol && sv.front() > 0.0) {
        unitary_mass += sv.front() * sv.front();
      }
    }
    report.max_observed = std::max(report.max_observed, unitary_mass);
  }
  report.bound_holds = report.max_observed <= report.bound + kStructuralTol;

  if (invertible && grid_points > 0) {
    const ComplexMatrix equalizer = s.left_unitary *
                                    ComplexMatrix::diagonal(std::span<const double>(inverse_sigma)) *
                                    dagger(s.left_unitary);
    auto feasible = [&](const ComplexMatrix& filter) {
      return is_psd(identity - dagger(filter) * filter);
    };
    for (std::size_t i = 1; i <= grid_points; ++i) {
      const double t = i == grid_points
                           ? q_min
                           : q_min * static_cast<double>(i) / static_cast<double>(grid_points);
      const ComplexMatrix filter = Complex(t) * equalizer;
      if (!feasible(filter)) {
        continue;
      }
      const std::vector<double> sv = singular_values(filter * k.matrix());
      if (sv.front() - sv.back() > kStructuralTol) {
        continue;
      }
      const double p = sv.front() * sv.front();
      if (p > report.grid_best_probability) {
        report.grid_best_probability = p;
        report.grid_best_t = t;
      }
    }
    report.grid_attains_bound = report.grid_best_t == q_min &&
                                std::abs(report.grid_best_probability - report.bound) <= 1e-12;
    report.grid_infeasible_beyond = !feasible(Complex(q_min * (1.0 + 1e-6)) * equalizer);
  }
  return report;
}

}  // namespace unlearn
