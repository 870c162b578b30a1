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


#pragma once

#include "nashset/equilibrium.hpp"
#include "nashset/game_model.hpp"
#include "nashset/value_set.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace nashset {

enum class DppRelation { equal, lhs_subset, rhs_subset, incomparable };
enum class PsiClass { path, state };

std::string to_string(DppRelation r);
std::string to_string(PsiClass c);
PsiClass parse_psi_class(std::string_view s);

struct DppReport {
  ValueSet<Rational> lhs;
  ValueSet<Rational> rhs;
  DppRelation relation = DppRelation::equal;
  std::vector<Payoff> lhs_only;  // lhs \ rhs
  std::vector<Payoff> rhs_only;  // rhs \ lhs
  std::uint64_t selections = 0;
  bool empty_continuation = false;  // some stopped prefix had no admissible psi
};

DppReport compare_sets(const ValueSet<Rational>& lhs, const ValueSet<Rational>& rhs);

/// lhs: the variant's set value at `prefix`. rhs: the union over
/// continuation selections psi (psi(x) in the variant's set value at the
/// stopped prefix x, shared across equal (time, state) when psi_class is
/// state) of the variant's equilibrium values in the game truncated at tau
/// with terminal condition psi.
DppReport verify_dpp(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                     const StoppingTime& tau, ValueVariant variant, PsiClass psi_class,
                     const EngineOptions& options = {});

struct ParetoExample {
  Rational eps;
  DppReport report;                      // lhs: Pareto set value at the root
  std::vector<std::string> branch_labels;
  std::vector<ValueSet<Rational>> branch_values;  // full set value at each time-1 state
  std::vector<ValueSet<Rational>> branch_pareto;
  std::vector<std::vector<Payoff>> branch_costs;  // J(1, x, a) per joint action
  ValueSet<Rational> root_values;                  // full set value at the root
};

/// The two-period Pareto example at `eps`. Throws ValidationError when eps
/// changes the one-step equilibrium profiles of any continuation selection
/// relative to the unperturbed kernel.
ParetoExample pareto_dpp_counterexample(const Rational& eps, const EngineOptions& options = {});

struct OpenLoopDemo {
  double sigma = 0;
  Eigen::Vector2d v_closed;
  Eigen::Vector2d v_composed;
  Eigen::Vector2d formula_closed;
  Eigen::Vector2d formula_composed;
  Eigen::VectorXd closed_controls;    // a1, a2, c1, c2, d1, d2 with alpha_i(t1) = c_i + d_i xi
  Eigen::Vector2d composed_controls;  // first-period actions of the composed game
  double continuation_curvature = 0;  // psi(x) = curvature * x^2
  double closed_residual = 0;
  double composed_residual = 0;
};

/// Two-period linear-quadratic game with open-loop controls, solved through
/// its first-order conditions both in one piece and period by period.
OpenLoopDemo open_loop_lq_demo(double sigma);

}  // namespace nashset
