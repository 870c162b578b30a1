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

#include <limits>
#include <map>

namespace nashset {

std::string to_string(DppRelation r) {
  switch (r) {
    case DppRelation::equal: return "equal";
    case DppRelation::lhs_subset: return "lhs_subset";
    case DppRelation::rhs_subset: return "rhs_subset";
    case DppRelation::incomparable: return "incomparable";
  }
  return "equal";
}

std::string to_string(PsiClass c) { return c == PsiClass::path ? "path" : "state"; }

PsiClass parse_psi_class(std::string_view s) {
  if (s == "path") return PsiClass::path;
  if (s == "state") return PsiClass::state;
  throw ValidationError("unknown psi class '" + std::string(s) + "'");
}

DppReport compare_sets(const ValueSet<Rational>& lhs, const ValueSet<Rational>& rhs) {
  DppReport out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.lhs_only = lhs.minus(rhs);
  out.rhs_only = rhs.minus(lhs);
  if (out.lhs_only.empty() && out.rhs_only.empty())
    out.relation = DppRelation::equal;
  else if (out.lhs_only.empty())
    out.relation = DppRelation::lhs_subset;
  else if (out.rhs_only.empty())
    out.relation = DppRelation::rhs_subset;
  else
    out.relation = DppRelation::incomparable;
  return out;
}

DppReport verify_dpp(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                     const StoppingTime& tau, ValueVariant variant, PsiClass psi_class,
                     const EngineOptions& options) {
  if (spec.is_terminal(tree, prefix))
    throw ValidationError("the evaluation prefix must be non-terminal");
  const ValueSet<Rational> lhs = set_value(spec, tree, prefix, variant, 0, options);
  const std::vector<PrefixId> stops = tau.stopped_prefixes(tree, prefix);

  // Selection groups: one psi choice per group, applied to all its members.
  std::vector<std::vector<PrefixId>> groups;
  if (psi_class == PsiClass::state) {
    std::map<std::pair<int, int>, std::size_t> index;
    for (PrefixId p : stops) {
      auto [it, inserted] = index.emplace(std::pair{tree.time(p), tree.state(p)}, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(p);
    }
  } else {
    for (PrefixId p : stops) groups.push_back({p});
  }
  std::vector<std::vector<Payoff>> choices;
  for (const auto& members : groups) {
    ValueSet<Rational> common = set_value(spec, tree, members.front(), variant, 0, options);
    for (std::size_t k = 1; k < members.size(); ++k) {
      const ValueSet<Rational> other = set_value(spec, tree, members[k], variant, 0, options);
      ValueSet<Rational> both;
      for (const auto& y : common)
        if (other.contains(y)) both.insert(y);
      common = both;
    }
    choices.push_back(common.points());
  }

  std::uint64_t total = 1;
  bool empty = false;
  for (const auto& c : choices) {
    if (c.empty()) {
      empty = true;
      total = 0;
      break;
    }
    total = total > options.selection_cap ? total : total * c.size();
  }
  if (total > options.selection_cap) throw CapExceeded("continuation selections", total, options.selection_cap);

  ValueSet<Rational> rhs;
  std::map<PrefixId, Payoff> psi;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t g = groups.size(); g-- > 0;) {
      const auto& c = choices[g];
      for (PrefixId p : groups[g]) psi[p] = c[rest % c.size()];
      rest /= c.size();
    }
    const GameSpec cut = truncate_game(spec, tree, tau, psi, prefix);
    rhs.merge(set_value(cut, tree, prefix, variant, 0, options));
  }
  DppReport out = compare_sets(lhs, rhs);
  out.selections = total;
  out.empty_continuation = empty;
  return out;
}

namespace {

// Profiles (as joint actions) of the first-period game for a selection.
std::vector<JointAction> profiles(const GameSpec& spec, const PathTree& tree,
                                  const std::vector<Payoff>& psi) {
  std::vector<JointAction> out;
  for (const auto& e : one_step_equilibria(spec, tree, 0, psi)) out.push_back(e.action);
  return out;
}

// The same spec with every first-step row replaced by its limit as eps -> 0.
GameSpec unperturbed(const GameSpec& spec) {
  GameSpec out = spec;
  for (auto& row : out.transition[0]) {
    std::size_t arg = 0;
    for (std::size_t s = 1; s < row.size(); ++s)
      if (row[s] > row[arg]) arg = s;
    for (std::size_t s = 0; s < row.size(); ++s) row[s] = s == arg ? 1 : 0;
  }
  out.require_positive = false;
  return out;
}

}  // namespace

ParetoExample pareto_dpp_counterexample(const Rational& eps, const EngineOptions& options) {
  ParetoExample out;
  out.eps = eps;
  const GameSpec spec = pareto_example_spec(eps);
  const PathTree tree = build_path_tree(spec);
  const ActionSpace space = spec.action_space();
  const GameSpec limit = unperturbed(spec);

  for (int s = 0; s < tree.child_count(0); ++s) {
    const PrefixId p = tree.child(0, s);
    out.branch_labels.push_back(spec.state_labels[1][s]);
    out.branch_values.push_back(set_value(spec, tree, p, ValueVariant::full, 0, options));
    out.branch_pareto.push_back(pareto_filter(out.branch_values.back()));
    std::vector<Payoff> costs;
    for (JointAction a = 0; a < space.count(); ++a) costs.push_back(cost_J(spec, tree, p, constant_policy(tree, a)));
    out.branch_costs.push_back(std::move(costs));
  }

  // eps is admissible when no continuation selection changes its first-period
  // equilibrium profiles relative to the limit kernel.
  std::vector<std::vector<Payoff>> sets;
  std::uint64_t total = 1;
  for (const auto& v : out.branch_values) {
    sets.push_back(v.points());
    total *= v.size();
  }
  std::vector<Payoff> psi(sets.size());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t s = sets.size(); s-- > 0;) {
      psi[s] = sets[s][rest % sets[s].size()];
      rest /= sets[s].size();
    }
    if (profiles(spec, tree, psi) != profiles(limit, tree, psi))
      throw ValidationError("eps = " + format_rational(eps) +
                            " changes the first-period equilibrium structure");
  }

  out.root_values = set_value(spec, tree, 0, ValueVariant::full, 0, options);
  out.report = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::pareto,
                          PsiClass::path, options);
  return out;
}

OpenLoopDemo open_loop_lq_demo(double sigma) {
  OpenLoopDemo out;
  out.sigma = sigma;
  // Whole game. Unknowns u = (a1, a2, c1, c2, d1, d2); player i's cost is
  //   1/2 (c_i^2 + d_i^2) + 4 a_i^2 + 2 a_i - (c1 + c2)(a1 + a2) - (d1 + d2) sigma
  // and the first-order conditions in (c_i, d_i, a_i) are linear.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(6);
  for (int i = 0; i < 2; ++i) {
    m(i, 2 + i) = 1;  // d/dc_i
    m(i, 0) = -1;
    m(i, 1) = -1;
    m(2 + i, 4 + i) = 1;  // d/dd_i
    r(2 + i) = sigma;
    m(4 + i, i) = 8;  // d/da_i
    m(4 + i, 2) = -1;
    m(4 + i, 3) = -1;
    r(4 + i) = -2;
  }
  const Eigen::VectorXd u = m.fullPivLu().solve(r);
  out.closed_controls = u;
  out.closed_residual = (m * u - r).norm();
  for (int i = 0; i < 2; ++i) {
    const double a = u(i), c = u(2 + i), d = u(4 + i);
    out.v_closed(i) = 0.5 * (c * c + d * d) + 4 * a * a + 2 * a - (u(2) + u(3)) * (u(0) + u(1)) -
                      (u(4) + u(5)) * sigma;
  }

  // Second period at state x: cost 1/2 b_i^2 - (b1 + b2) x, so b_i = x. The
  // value is quadratic in x; its curvature comes from the solve at x = 1.
  Eigen::Matrix2d m2 = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d b = m2.lu().solve(Eigen::Vector2d(1.0, 1.0));
  const double kappa = 0.5 * b(0) * b(0) - (b(0) + b(1));
  out.continuation_curvature = kappa;
  // First period against psi(x) = kappa x^2 with x = a1 + a2 + sigma xi:
  //   4 a_i^2 + 2 a_i + kappa ((a1 + a2)^2 + sigma^2)
  Eigen::Matrix2d m1;
  m1 << 8 + 2 * kappa, 2 * kappa, 2 * kappa, 8 + 2 * kappa;
  const Eigen::Vector2d r1(-2.0, -2.0);
  const Eigen::Vector2d a = m1.lu().solve(r1);
  out.composed_controls = a;
  out.composed_residual = (m1 * a - r1).norm();
  for (int i = 0; i < 2; ++i) {
    const double s = a(0) + a(1);
    out.v_composed(i) = 4 * a(i) * a(i) + 2 * a(i) + kappa * (s * s + sigma * sigma);
  }
  const double s2 = sigma * sigma;
  out.formula_closed = Eigen::Vector2d::Constant(-1.5 * (s2 + 1));
  out.formula_composed = Eigen::Vector2d::Constant(-(1.5 * s2 + 4));
  return out;
}

}  // namespace nashset
