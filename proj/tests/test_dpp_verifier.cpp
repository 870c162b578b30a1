// Copyright 2026 The nashset Authors
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


#include "nashset/dpp_verifier.hpp"
#include "nashset/examples.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nashset {
namespace {

Payoff P(std::initializer_list<const char*> xs) {
  Payoff out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const char* x : xs) out(i++) = parse_rational(x);
  return out;
}

ValueSet<Rational> S(std::initializer_list<Payoff> xs) {
  ValueSet<Rational> out;
  for (const auto& x : xs) out.insert(x);
  return out;
}

TEST(CompareSets, Relations) {
  const auto a = S({P({"0", "1"})});
  const auto ab = S({P({"0", "1"}), P({"1", "0"})});
  const auto c = S({P({"2", "2"})});
  EXPECT_EQ(compare_sets(a, a).relation, DppRelation::equal);
  EXPECT_EQ(compare_sets(a, ab).relation, DppRelation::lhs_subset);
  EXPECT_EQ(compare_sets(ab, a).relation, DppRelation::rhs_subset);
  EXPECT_EQ(compare_sets(a, c).relation, DppRelation::incomparable);
  const auto r = compare_sets(ab, a);
  ASSERT_EQ(r.lhs_only.size(), 1u);
  EXPECT_TRUE(exactly_equal<Rational>(r.lhs_only[0], P({"1", "0"})));
  EXPECT_TRUE(r.rhs_only.empty());
}

TEST(VerifyDpp, PathExampleFullIsEqual) {
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  for (int t0 = 1; t0 <= 2; ++t0) {
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, t0), ValueVariant::full,
                              PsiClass::path);
    EXPECT_EQ(r.relation, DppRelation::equal) << t0;
    EXPECT_EQ(r.lhs, S({P({"0", "1/4"}), P({"1/4", "0"}), P({"1/8", "1/8"})}));
  }
}

TEST(VerifyDpp, StateContinuationLosesPathValue) {
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 2), ValueVariant::full,
                            PsiClass::state);
  EXPECT_EQ(r.relation, DppRelation::rhs_subset);
  EXPECT_EQ(r.rhs, S({P({"0", "1/4"}), P({"1/4", "0"})}));
  ASSERT_EQ(r.lhs_only.size(), 1u);
  EXPECT_TRUE(exactly_equal<Rational>(r.lhs_only[0], P({"1/8", "1/8"})));
}

TEST(VerifyDpp, StateVariantGainsPathValue) {
  const GameSpec spec = load_example("state");
  const PathTree tree = build_path_tree(spec);
  const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::state,
                            PsiClass::path);
  EXPECT_EQ(r.relation, DppRelation::lhs_subset);
  EXPECT_FALSE(r.lhs.contains(P({"1/8", "1/8"})));
  EXPECT_TRUE(r.rhs.contains(P({"1/8", "1/8"})));
}

TEST(VerifyDpp, RandomPositiveSpecsAreEqual) {
  RandomSpecOptions opts;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    const int t0 = 1 + static_cast<int>(seed % 2);
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, t0), ValueVariant::full,
                              PsiClass::path);
    EXPECT_EQ(r.relation, DppRelation::equal) << "seed " << seed;
  }
}

TEST(VerifyDpp, RandomHittingTimesAreEqual) {
  RandomSpecOptions opts;
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    const auto tau = StoppingTime::hitting(spec, tree, {spec.state_labels[1][0], spec.state_labels[2][1]});
    const auto r = verify_dpp(spec, tree, 0, tau, ValueVariant::full, PsiClass::path);
    EXPECT_EQ(r.relation, DppRelation::equal) << "seed " << seed;
  }
}

TEST(VerifyDpp, ZeroKernelsKeepPartialInclusion) {
  RandomSpecOptions opts;
  opts.allow_zero = true;
  int zero_specs = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    if (has_positive_kernel(spec, tree)) continue;
    ++zero_specs;
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::full,
                              PsiClass::path);
    EXPECT_TRUE(r.rhs_only.empty()) << "seed " << seed;
  }
  EXPECT_GT(zero_specs, 5);
}

TEST(VerifyDpp, SymmetricVariantIsEqual) {
  RandomSpecOptions opts;
  for (std::uint64_t seed = 40; seed < 46; ++seed) {
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::symmetric,
                              PsiClass::path);
    EXPECT_EQ(r.relation, DppRelation::equal) << "seed " << seed;
  }
}

TEST(VerifyDpp, StateVariantPartialInclusionOnMarkovSpecs) {
  RandomSpecOptions opts;
  opts.markov = true;
  for (std::uint64_t seed = 60; seed < 66; ++seed) {
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::state,
                              PsiClass::path);
    EXPECT_TRUE(r.lhs_only.empty()) << "seed " << seed;
  }
}

TEST(VerifyDpp, RejectsTerminalPrefix) {
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  const PrefixId leaf = tree.range_at(tree.horizon()).first;
  EXPECT_THROW(verify_dpp(spec, tree, leaf, StoppingTime::deterministic(tree, 1), ValueVariant::full,
                          PsiClass::path),
               ValidationError);
}

TEST(ParetoExample, TimeOneCostsAndSets) {
  const ParetoExample ex = pareto_dpp_counterexample(parse_rational("1/100"));
  ASSERT_EQ(ex.branch_values.size(), 4u);
  // J(1, x, a) for a = (0,0), (0,1), (1,0), (1,1)
  const std::vector<std::vector<Payoff>> costs{
      {P({"3", "3"}), P({"4", "4"}), P({"4", "4"}), P({"2", "2"})},
      {P({"6", "6"}), P({"11", "7"}), P({"11", "7"}), P({"1", "5"})},
      {P({"6", "6"}), P({"7", "11"}), P({"7", "11"}), P({"5", "1"})},
      {P({"7", "7"}), P({"10", "10"}), P({"10", "10"}), P({"4", "4"})}};
  const std::vector<Payoff> psi{P({"2", "2"}), P({"1", "5"}), P({"5", "1"}), P({"4", "4"})};
  const std::vector<Payoff> psi_tilde{P({"3", "3"}), P({"6", "6"}), P({"6", "6"}), P({"7", "7"})};
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t a = 0; a < 4; ++a)
      EXPECT_TRUE(exactly_equal<Rational>(ex.branch_costs[s][a], costs[s][a])) << s << " " << a;
    EXPECT_EQ(ex.branch_values[s], S({psi[s], psi_tilde[s]})) << s;
    EXPECT_EQ(ex.branch_pareto[s], S({psi[s]})) << s;
  }
}

TEST(ParetoExample, ContinuationSelectionGivesFourFour) {
  const Rational eps = parse_rational("1/100");
  const ParetoExample ex = pareto_dpp_counterexample(eps);
  ASSERT_EQ(ex.report.rhs.size(), 1u);
  const Payoff y = *ex.report.rhs.begin();
  for (int i = 0; i < 2; ++i) EXPECT_LE(abs(y(i) - 4), 12 * eps);
  EXPECT_EQ(ex.report.selections, 1u);
}

TEST(ParetoExample, MixedContinuationReachesTwoTwo) {
  const Rational eps = parse_rational("1/100");
  const GameSpec spec = pareto_example_spec(eps);
  const PathTree tree = build_path_tree(spec);
  // (0,0) leads to s10 w.p. 1 - 3 eps: 2 (1 - 3 eps) + eps (6 + 6 + 4) = 2 + 10 eps
  const std::vector<Payoff> psi{P({"2", "2"}), P({"6", "6"}), P({"6", "6"}), P({"4", "4"})};
  bool found = false;
  for (const auto& e : one_step_equilibria(spec, tree, 0, psi))
    if (e.action == 0) {
      found = true;
      EXPECT_TRUE(exactly_equal<Rational>(e.value, P({"21/10", "21/10"})));
    }
  EXPECT_TRUE(found);
  const ParetoExample ex = pareto_dpp_counterexample(eps);
  EXPECT_TRUE(ex.report.lhs.contains(P({"21/10", "21/10"})));
  EXPECT_EQ(ex.report.relation, DppRelation::incomparable);
}

TEST(ParetoExample, RejectsLargeEps) {
  EXPECT_THROW(pareto_dpp_counterexample(parse_rational("3/10")), ValidationError);
}

TEST(OpenLoop, ValuesMatchFormulas) {
  for (double sigma : {0.0, 0.5, 1.0, 2.0}) {
    const OpenLoopDemo d = open_loop_lq_demo(sigma);
    EXPECT_LT((d.v_closed - d.formula_closed).cwiseAbs().maxCoeff(), 1e-10) << sigma;
    EXPECT_LT((d.v_composed - d.formula_composed).cwiseAbs().maxCoeff(), 1e-10) << sigma;
    EXPECT_LT(d.closed_residual, 1e-12);
    EXPECT_LT(d.composed_residual, 1e-12);
    EXPECT_GT((d.v_closed - d.v_composed).cwiseAbs().minCoeff(), 0.0);
  }
}

TEST(OpenLoop, EquilibriumControls) {
  const OpenLoopDemo d = open_loop_lq_demo(1.0);
  EXPECT_NEAR(d.closed_controls(0), -0.5, 1e-12);
  EXPECT_NEAR(d.closed_controls(2), -1.0, 1e-12);  // alpha(t1) = xi - 1
  EXPECT_NEAR(d.closed_controls(4), 1.0, 1e-12);
  EXPECT_NEAR(d.composed_controls(0), -1.0, 1e-12);
  EXPECT_NEAR(d.continuation_curvature, -1.5, 1e-12);
  const OpenLoopDemo z = open_loop_lq_demo(0.0);
  EXPECT_NEAR(z.v_closed(0), -1.5, 1e-10);
  EXPECT_NEAR(z.v_composed(0), -4.0, 1e-10);
}

}  // namespace
}  // namespace nashset
