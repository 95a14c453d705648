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

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.hpp"
#include "unlearn/errors.hpp"
#include "unlearn/random_ops.hpp"
#include "unlearn/recovery.hpp"

using namespace unlearn;

TEST(partial_filter_step, reference_values) {
  const FilterStepResult r = partial_filter_step(0.8, 0.6);
  EXPECT_NEAR(r.step_success, 0.2304, 1e-15);
  EXPECT_NEAR(r.a_next, 0.64, 1e-15);
  EXPECT_NEAR(r.b_next, 0.36, 1e-15);
}

TEST(partial_filter_step, edge_cases) {
  // Equal entries stay equal.
  const FilterStepResult eq = partial_filter_step(0.5, 0.5);
  EXPECT_NEAR(eq.step_success, 0.0625, 1e-15);
  EXPECT_NEAR(eq.a_next, eq.b_next, 1e-15);
  // b = 0: nothing to gain.
  const FilterStepResult zero = partial_filter_step(0.7, 0.0);
  EXPECT_EQ(zero.step_success, 0.0);
  EXPECT_EQ(zero.b_next, 0.0);
  EXPECT_NEAR(zero.a_next, 0.7, 1e-15);
  EXPECT_THROW(partial_filter_step(0.5, 0.6), DomainError);
  EXPECT_THROW(partial_filter_step(1.1, 0.5), DomainError);
  EXPECT_THROW(partial_filter_step(0.5, -0.1), DomainError);
}

TEST(partial_filter_iterate, converges_to_limit) {
  const FilterTrace t = partial_filter_iterate(0.8, 0.6);
  EXPECT_TRUE(t.converged);
  EXPECT_LE(t.iterations_used, kDefaultMaxIter);
  EXPECT_NEAR(t.cumulative_success, 0.72, 1e-6);
  ASSERT_GE(t.steps.size(), 2u);
  EXPECT_NEAR(t.steps[0].step_success_probability, 0.2304, 1e-15);
  EXPECT_NEAR(t.steps[0].mirror_success_probability, 0.2304, 1e-15);
  EXPECT_NEAR(t.steps[0].cumulative_success, 0.4608, 1e-15);
  EXPECT_NEAR(t.steps[1].a, 0.64, 1e-15);
  EXPECT_NEAR(t.steps[1].b, 0.36, 1e-15);
}

TEST(partial_filter_iterate, mirror_identity_after_first_step) {
  const FilterTrace t = partial_filter_iterate(0.9, 0.3, 50, 0.0);
  ASSERT_EQ(t.steps.size(), 50u);
  EXPECT_NEAR(t.steps[0].c, std::sqrt(1.0 - 0.81), 1e-15);
  EXPECT_NEAR(t.steps[0].d, std::sqrt(1.0 - 0.09), 1e-15);
  for (std::size_t j = 1; j < t.steps.size(); ++j) {
    EXPECT_NEAR(t.steps[j].c, t.steps[j].b, 1e-15);
    EXPECT_NEAR(t.steps[j].d, t.steps[j].a, 1e-15);
  }
}

TEST(partial_filter_iterate, invariants_along_the_trace) {
  for (double a : {0.95, 0.8, 0.55, 0.3}) {
    for (double ratio : {0.1, 0.5, 0.9}) {
      const double b = a * ratio;
      const double gap = a * a - b * b;
      const FilterTrace t = partial_filter_iterate(a, b, 100, 0.0);
      for (std::size_t j = 1; j < t.steps.size(); ++j) {
        const FilterStep& s = t.steps[j];
        EXPECT_NEAR(s.a * s.a - s.b * s.b, gap, 1e-12);
        // Probability is conserved: recovered so far plus the two residual branches.
        const double before = t.steps[j - 1].cumulative_success;
        EXPECT_NEAR(before + s.a * s.a + s.c * s.c, 1.0, 1e-12);
        EXPECT_NEAR(before + s.b * s.b + s.d * s.d, 1.0, 1e-12);
        EXPECT_GE(s.cumulative_success, t.steps[j - 1].cumulative_success);
      }
      EXPECT_LE(t.cumulative_success, partial_filter_limit(a, b) + 1e-12);
    }
  }
}

TEST(partial_filter_iterate, degenerate_inputs) {
  const FilterTrace projector = partial_filter_iterate(1.0, 0.0);
  EXPECT_TRUE(projector.converged);
  EXPECT_EQ(projector.iterations_used, 1u);
  EXPECT_EQ(projector.cumulative_success, 0.0);
}

TEST(partial_filter_iterate, equal_entries_converge_slowly) {
  // With a = b the remaining probability 2 b_n^2 shrinks like 2/n, not geometrically.
  const FilterTrace t1 = partial_filter_iterate(0.6, 0.6, 1000, 0.0);
  const FilterTrace t2 = partial_filter_iterate(0.6, 0.6, 2000, 0.0);
  const double e1 = 1.0 - t1.cumulative_success;
  const double e2 = 1.0 - t2.cumulative_success;
  EXPECT_FALSE(t1.converged);
  EXPECT_NEAR(e1 * 1000.0, 2.0, 0.05);
  EXPECT_NEAR(e1 / e2, 2.0, 0.01);
}

TEST(partial_filter_iterate, non_convergence_is_flagged) {
  const FilterTrace t = partial_filter_iterate(0.9, 0.9, 5);
  EXPECT_FALSE(t.converged);
  EXPECT_EQ(t.iterations_used, 5u);
  EXPECT_EQ(t.steps.size(), 5u);
}

TEST(partial_filter_limit, values) {
  EXPECT_NEAR(partial_filter_limit(0.8, 0.6), 0.72, 1e-15);
  EXPECT_NEAR(partial_filter_limit(0.5, 0.5), 1.0, 1e-15);
  EXPECT_NEAR(partial_filter_limit(1.0, 0.0), 0.0, 1e-15);
  EXPECT_THROW(partial_filter_limit(0.3, 0.4), DomainError);
  const auto [m0, m1] = partial_filter_limit_elements(0.8, 0.6);
  EXPECT_MATRIX_NEAR(m0, ComplexMatrix::diagonal({0.28, 0.0}), 1e-15);
  EXPECT_MATRIX_NEAR(m1, ComplexMatrix::diagonal({0.0, 0.28}), 1e-15);
}

TEST(build_partial_filter_tree, breadth_first_rounds) {
  const SynthesizedTree t = build_partial_filter_tree(0.8, 0.6, 2, FilterSchedule::kBreadthFirst);
  EXPECT_EQ(t.attachments, 2u);
  EXPECT_NEAR(t.success_probability, 0.4608, 1e-12);
  ASSERT_EQ(t.success_paths.size(), 2u);
  EXPECT_EQ(t.success_paths[0], (TreePath{0, 0}));
  EXPECT_EQ(t.success_paths[1], (TreePath{1, 0}));
  EXPECT_TRUE(validate_tree(t.root, 1e-9).passed);
}

TEST(build_partial_filter_tree, depth_first_exhausts_first_chain) {
  const SynthesizedTree t = build_partial_filter_tree(0.8, 0.6, 2, FilterSchedule::kDepthFirst);
  const FilterStepResult s1 = partial_filter_step(0.8, 0.6);
  const FilterStepResult s2 = partial_filter_step(s1.a_next, s1.b_next);
  EXPECT_NEAR(t.success_probability, s1.step_success + s2.step_success, 1e-12);
  ASSERT_EQ(t.success_paths.size(), 2u);
  EXPECT_EQ(t.success_paths[1], (TreePath{0, 1, 0}));
}

TEST(build_partial_filter_tree, matches_iterate_and_state_independence) {
  const FilterTrace trace = partial_filter_iterate(0.8, 0.6, 10, 0.0);
  const SynthesizedTree t = build_partial_filter_tree(0.8, 0.6, 20, FilterSchedule::kBreadthFirst, 0.0);
  EXPECT_NEAR(t.success_probability, trace.cumulative_success, 1e-12);
  EXPECT_TRUE(validate_tree(t.root, 1e-9).passed);

  CounterRng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    double recovered = 0.0;
    for (const auto& lp : leaf_probabilities(t.root, random::pure_state(2, rng))) {
      for (const auto& sp : t.success_paths) {
        if (lp.path == sp) recovered += lp.probability;
      }
    }
    EXPECT_NEAR(recovered, t.success_probability, 1e-10);
  }
}

TEST(build_partial_filter_tree, schedules_agree_with_large_budget) {
  const SynthesizedTree bfs = build_partial_filter_tree(0.8, 0.6, 1000, FilterSchedule::kBreadthFirst);
  const SynthesizedTree dfs = build_partial_filter_tree(0.8, 0.6, 1000, FilterSchedule::kDepthFirst);
  EXPECT_NEAR(bfs.success_probability, 0.72, 1e-6);
  EXPECT_NEAR(dfs.success_probability, 0.72, 1e-6);
}
