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

#include "nashset/game_model.hpp"
#include "nashset/value_set.hpp"

#include <cstdint>
#include <vector>

namespace nashset {

struct EngineOptions {
  std::uint64_t policy_cap = 10'000'000;
  std::uint64_t selection_cap = 100'000;
  int threads = 0;  // 0: NASHSET_THREADS or hardware concurrency
};

enum class ValueVariant { full, state, symmetric, pareto, strong_pareto };

std::string to_string(ValueVariant v);
ValueVariant parse_value_variant(std::string_view s);
/// The policy class whose equilibria define the variant.
PolicyClass variant_class(ValueVariant v);

struct BestResponse {
  Rational value;
  Policy deviation;  // `policy` with player i's components replaced
};

/// min over player i's deviations in `deviations` of J_i, others frozen.
/// Path-dependent and symmetric classes deviate freely; the state class
/// deviates among state-dependent controls only. Ties go to the lowest
/// action index.
BestResponse best_response(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                           const Policy& policy, int player,
                           PolicyClass deviations = PolicyClass::path_dependent);

struct NashCheck {
  bool equilibrium = false;
  Payoff value;  // J(t, x, policy)
  Payoff slack;  // J_i - best response value, per player
};

/// Throws ValidationError when the policy does not belong to `cls`.
NashCheck is_equilibrium(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                         const Policy& policy, const Rational& eps, PolicyClass cls);

struct EquilibriumRecord {
  Policy policy;
  Payoff value;
  Payoff slack;
};

struct Enumeration {
  ValueSet<Rational> values;
  /// One witness (the first in enumeration order) per distinct value.
  std::vector<EquilibriumRecord> witnesses;
  std::uint64_t policies = 0;
  std::uint64_t equilibria = 0;
};

/// Number of joint policies of the class that matter at `prefix`.
/// Saturates at UINT64_MAX.
std::uint64_t policy_count(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                           PolicyClass cls);

/// All eps-equilibria of the class at `prefix`. Throws CapExceeded.
Enumeration enumerate_equilibria(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                 const Rational& eps, PolicyClass cls,
                                 const EngineOptions& options = {});

ValueSet<Rational> set_value_bruteforce(const GameSpec& spec, const PathTree& tree,
                                        PrefixId prefix, const Rational& eps, PolicyClass cls,
                                        const EngineOptions& options = {});

/// Brute-force set value of a variant (pareto variants filter the full set).
ValueSet<Rational> set_value(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                             ValueVariant variant, const Rational& eps = 0,
                             const EngineOptions& options = {});

struct StaticEquilibrium {
  JointAction action;
  Payoff value;
};

/// Pure Nash profiles of a static game given by one cost vector per joint
/// action.
std::vector<StaticEquilibrium> static_equilibria(const ActionSpace& space,
                                                 const std::vector<Payoff>& costs);

/// Equilibria of the one-period game at a non-terminal `prefix` whose
/// continuation value at child s is psi[s].
std::vector<StaticEquilibrium> one_step_equilibria(const GameSpec& spec, const PathTree& tree,
                                                   PrefixId prefix,
                                                   const std::vector<Payoff>& psi);

/// Backward recursion through one-step games. Requires q > 0 below
/// `prefix`. Throws ValidationError or CapExceeded.
ValueSet<Rational> set_value_dpp(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                 const EngineOptions& options = {});

/// J(t, x, alpha) over every joint policy (deduplicated).
ValueSet<Rational> all_policy_values(const GameSpec& spec, const PathTree& tree,
                                     PrefixId prefix, const EngineOptions& options = {});

/// Keeps values not strictly dominated by J of any joint policy.
ValueSet<Rational> strong_pareto_filter(const GameSpec& spec, const PathTree& tree,
                                        PrefixId prefix, const ValueSet<Rational>& values,
                                        const EngineOptions& options = {});

/// min over all joint policies of lambda . J(t, x, alpha), by backward
/// induction on the team problem.
Rational team_optimum(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                      const std::vector<Rational>& lambda);

}  // namespace nashset
