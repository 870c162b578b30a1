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


#include "nashset/planner.hpp"

namespace nashset {

Scalarization Scalarization::normalized(std::vector<Rational> weights) {
  if (weights.empty()) throw ValidationError("scalarization needs at least one weight");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw ValidationError("scalarization weights must be nonnegative");
    sum += w;
  }
  if (sum == 0) throw ValidationError("scalarization weights sum to zero");
  for (auto& w : weights) w /= sum;
  return Scalarization(std::move(weights));
}

Scalarization Scalarization::exact(std::vector<Rational> weights) {
  Rational sum = 0;
  for (const auto& w : weights) sum += w;
  if (sum != 1)
    throw ValidationError("scalarization weights sum to " + format_rational(sum) + ", expected 1");
  return normalized(std::move(weights));
}

Scalarization Scalarization::uniform(int players) {
  return normalized(std::vector<Rational>(static_cast<std::size_t>(players), Rational(1)));
}

bool Scalarization::strictly_positive() const {
  for (const auto& w : lambda_)
    if (w <= 0) return false;
  return true;
}

Rational Scalarization::apply(const Payoff& y) const {
  if (y.size() != static_cast<Eigen::Index>(lambda_.size()))
    throw ValidationError("scalarization has " + std::to_string(lambda_.size()) + " weights, point has " +
                          std::to_string(y.size()) + " entries");
  Rational out = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) out += lambda_[static_cast<std::size_t>(i)] * y(i);
  return out;
}

std::optional<PlannerOptimum> planner_optimum(const ValueSet<Rational>& vs, const Scalarization& lam) {
  if (vs.empty()) return std::nullopt;
  PlannerOptimum out;
  bool first = true;
  for (const auto& y : vs) {
    const Rational v = lam.apply(y);
    if (first || v < out.value) {
      out.value = v;
      out.argmin.clear();
      first = false;
    }
    if (v == out.value) out.argmin.push_back(y);
  }
  return out;
}

ProbeReport time_inconsistency_probe(const GameSpec& spec, const PathTree& tree, const Scalarization& lam,
                                     const EngineOptions& options) {
  if (lam.players() != spec.players())
    throw ValidationError("scalarization size does not match the player count");
  if (!has_positive_kernel(spec, tree)) throw ValidationError("the probe requires q > 0");
  ProbeReport out;
  out.dictatorship_value = team_optimum(spec, tree, 0, lam.lambda());
  const Enumeration root = enumerate_equilibria(spec, tree, 0, 0, PolicyClass::path_dependent, options);
  out.root = planner_optimum(root.values, lam);
  if (!out.root) return out;
  out.selected = out.root->argmin.front();
  for (const auto& w : root.witnesses)
    if (exactly_equal(w.value, out.selected)) out.selection = w.policy;

  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
    if (tree.time(p) == 0 || spec.is_terminal(tree, p)) continue;
    bool below_stop = false;
    for (PrefixId q = tree.parent(p); q >= 0; q = tree.parent(q))
      if (spec.stopped[q]) below_stop = true;
    if (below_stop) continue;
    ProbeEntry e;
    e.time = tree.time(p);
    e.prefix = p;
    e.optimum = planner_optimum(set_value_bruteforce(spec, tree, p, 0, PolicyClass::path_dependent, options), lam);
    e.continuation = cost_J(spec, tree, p, out.selection);
    e.continuation_value = lam.apply(e.continuation);
    e.consistent = e.optimum && e.optimum->value == e.continuation_value;
    if (!e.consistent && !out.first_inconsistency) out.first_inconsistency = out.entries.size();
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace nashset
