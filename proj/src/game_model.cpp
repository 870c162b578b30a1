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

#include "nashset/game_model.hpp"

#include <algorithm>
#include <limits>

namespace nashset {

ActionSpace::ActionSpace(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  strides_.assign(sizes_.size(), 1);
  std::uint64_t count = 1;
  for (int i = static_cast<int>(sizes_.size()) - 1; i >= 0; --i) {
    if (sizes_[i] <= 0) throw ValidationError("empty action set for player " + std::to_string(i));
    strides_[i] = static_cast<JointAction>(count);
    count *= static_cast<std::uint64_t>(sizes_[i]);
    if (count > std::numeric_limits<JointAction>::max())
      throw ValidationError("joint action space too large");
  }
  count_ = static_cast<JointAction>(count);
}

JointAction ActionSpace::encode(std::span<const int> actions) const {
  JointAction a = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    a += static_cast<JointAction>(actions[i]) * strides_[i];
  return a;
}

std::vector<int> ActionSpace::decode(JointAction a) const {
  std::vector<int> out(sizes_.size());
  for (int i = 0; i < players(); ++i) out[i] = component(a, i);
  return out;
}

bool ActionSpace::is_symmetric(JointAction a) const {
  for (int i = 1; i < players(); ++i)
    if (component(a, i) != component(a, 0)) return false;
  return true;
}

bool ActionSpace::all_sizes_equal() const {
  return std::adjacent_find(sizes_.begin(), sizes_.end(), std::not_equal_to<>()) == sizes_.end();
}

PathTree::PathTree(std::vector<int> state_counts) : counts_(std::move(state_counts)) {
  if (counts_.empty()) throw ValidationError("path tree needs at least one time");
  std::int64_t width = 1;
  std::int64_t offset = 0;
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    if (counts_[t] <= 0) throw ValidationError("empty state set at time " + std::to_string(t));
    width *= counts_[t];
    if (offset + width > std::numeric_limits<PrefixId>::max())
      throw ValidationError("path tree too large");
    offset_.push_back(offset);
    width_.push_back(width);
    offset += width;
  }
  time_.resize(static_cast<std::size_t>(offset));
  state_.resize(time_.size());
  parent_.resize(time_.size());
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    for (std::int64_t k = 0; k < width_[t]; ++k) {
      const auto id = static_cast<std::size_t>(offset_[t] + k);
      time_[id] = static_cast<int>(t);
      state_[id] = static_cast<int>(k % counts_[t]);
      parent_[id] = t == 0 ? -1 : static_cast<PrefixId>(offset_[t - 1] + k / counts_[t]);
    }
  }
}

PrefixId PathTree::first_child(PrefixId p) const {
  const int t = time_[p];
  const std::int64_t k = p - offset_[t];
  return static_cast<PrefixId>(offset_[t + 1] + k * counts_[t + 1]);
}

PrefixId PathTree::ancestor(PrefixId p, int t) const {
  while (time_[p] > t) p = parent_[p];
  return p;
}

bool PathTree::extends(PrefixId p, PrefixId q) const {
  return time_[p] >= time_[q] && ancestor(p, time_[q]) == q;
}

std::vector<int> PathTree::states_along(PrefixId p) const {
  std::vector<int> out(static_cast<std::size_t>(time_[p]) + 1);
  for (PrefixId q = p; q >= 0; q = parent_[q]) out[time_[q]] = state_[q];
  return out;
}

PrefixId PathTree::find(std::span<const int> states) const {
  if (states.empty() || states.size() > counts_.size()) return -1;
  std::int64_t k = 0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (states[t] < 0 || states[t] >= counts_[t]) return -1;
    k = k * counts_[t] + states[t];
  }
  return static_cast<PrefixId>(offset_[states.size() - 1] + k);
}

std::vector<int> GameSpec::state_counts() const {
  std::vector<int> out;
  for (const auto& s : state_labels) out.push_back(static_cast<int>(s.size()));
  return out;
}

ActionSpace GameSpec::action_space() const {
  std::vector<int> sizes;
  for (const auto& a : action_labels) sizes.push_back(static_cast<int>(a.size()));
  return ActionSpace(std::move(sizes));
}

bool operator==(const GameSpec& a, const GameSpec& b) {
  if (a.state_labels != b.state_labels || a.action_labels != b.action_labels ||
      a.transition != b.transition || a.running_cost != b.running_cost ||
      a.stopped != b.stopped || a.state_dependent != b.state_dependent ||
      a.require_positive != b.require_positive || a.terminal.size() != b.terminal.size())
    return false;
  for (std::size_t p = 0; p < a.terminal.size(); ++p)
    if (!exactly_equal(a.terminal[p], b.terminal[p])) return false;
  return true;
}

PathTree build_path_tree(const GameSpec& spec) { return PathTree(spec.state_counts()); }

namespace {

void check(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

void validate(const GameSpec& spec) {
  check(spec.horizon() >= 1, "horizon must be at least 1");
  check(spec.players() >= 1, "at least one player required");
  for (std::size_t t = 0; t < spec.state_labels.size(); ++t)
    check(!spec.state_labels[t].empty(), "empty state set at time " + std::to_string(t));
  for (int i = 0; i < spec.players(); ++i)
    check(!spec.action_labels[i].empty(), "empty action set for player " + std::to_string(i));
  const PathTree tree = build_path_tree(spec);
  const ActionSpace space = spec.action_space();
  const std::size_t n = tree.prefix_count();
  check(spec.transition.size() == n && spec.running_cost.size() == n &&
            spec.terminal.size() == n && spec.stopped.size() == n,
        "per-prefix tables do not match the path tree");
  const auto players = static_cast<std::size_t>(spec.players());
  for (PrefixId p = 0; p < static_cast<PrefixId>(n); ++p) {
    const std::string where = prefix_label(spec, tree, p);
    if (spec.is_terminal(tree, p))
      check(spec.terminal[p].size() == static_cast<Eigen::Index>(players),
            "terminal cost missing at " + where);
    if (tree.is_leaf(p)) continue;
    const auto& rows = spec.transition[p];
    check(rows.size() == space.count(), "transition rows missing at " + where);
    for (JointAction a = 0; a < space.count(); ++a) {
      const auto& row = rows[a];
      check(row.size() == static_cast<std::size_t>(tree.child_count(p)),
            "transition row has wrong length at " + where);
      Rational sum = 0;
      for (const auto& q : row) {
        check(q >= 0, "negative transition probability at " + where);
        if (spec.require_positive) check(q > 0, "zero transition probability at " + where);
        sum += q;
      }
      check(sum == 1, "transition row at " + where + " sums to " + format_rational(sum));
    }
    check(spec.running_cost[p].size() == players, "running costs missing at " + where);
    for (std::size_t i = 0; i < players; ++i)
      check(spec.running_cost[p][i].size() == static_cast<std::size_t>(space.size(static_cast<int>(i))),
            "running cost of player " + std::to_string(i) + " has wrong length at " + where);
  }
  if (spec.state_dependent)
    check(has_state_dependent_data(spec, tree),
          "state_dependent flag set but data depends on the path");
}

bool has_state_dependent_data(const GameSpec& spec, const PathTree& tree) {
  for (int t = 0; t <= tree.horizon(); ++t) {
    const auto [lo, hi] = tree.range_at(t);
    std::vector<PrefixId> first(static_cast<std::size_t>(tree.state_count(t)), -1);
    for (PrefixId p = lo; p < hi; ++p) {
      PrefixId& ref = first[tree.state(p)];
      if (ref < 0) {
        ref = p;
        continue;
      }
      if (spec.stopped[p] != spec.stopped[ref]) return false;
      if (spec.is_terminal(tree, p) && !exactly_equal(spec.terminal[p], spec.terminal[ref]))
        return false;
      if (!tree.is_leaf(p) && (spec.transition[p] != spec.transition[ref] ||
                               spec.running_cost[p] != spec.running_cost[ref]))
        return false;
    }
  }
  return true;
}

bool has_positive_kernel(const GameSpec& spec, const PathTree& tree, PrefixId from) {
  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
    if (tree.is_leaf(p) || (from >= 0 && !tree.extends(p, from))) continue;
    for (const auto& row : spec.transition[p])
      for (const auto& q : row)
        if (q <= 0) return false;
  }
  return true;
}

std::string to_string(PolicyClass c) {
  switch (c) {
    case PolicyClass::path_dependent: return "path";
    case PolicyClass::state_dependent: return "state";
    case PolicyClass::symmetric: return "symmetric";
  }
  return "path";
}

PolicyClass parse_policy_class(std::string_view s) {
  if (s == "path" || s == "path_dependent") return PolicyClass::path_dependent;
  if (s == "state" || s == "state_dependent") return PolicyClass::state_dependent;
  if (s == "symmetric") return PolicyClass::symmetric;
  throw ValidationError("unknown policy class '" + std::string(s) + "'");
}

bool satisfies_class(const Policy& policy, const GameSpec& spec, const PathTree& tree,
                     PrefixId from) {
  const ActionSpace space = spec.action_space();
  std::map<std::pair<int, int>, JointAction> by_state;
  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
    if (tree.is_leaf(p) || (from >= 0 && !tree.extends(p, from))) continue;
    const JointAction a = policy.at(p);
    if (a >= space.count()) return false;
    switch (policy.tag) {
      case PolicyClass::path_dependent:
        break;
      case PolicyClass::state_dependent: {
        auto [it, inserted] = by_state.emplace(std::pair{tree.time(p), tree.state(p)}, a);
        if (!inserted && it->second != a) return false;
        break;
      }
      case PolicyClass::symmetric:
        if (!space.is_symmetric(a)) return false;
        break;
    }
  }
  return true;
}

Policy constant_policy(const PathTree& tree, JointAction a, PolicyClass tag) {
  return Policy{std::vector<JointAction>(tree.prefix_count(), a), tag};
}

StoppingTime StoppingTime::deterministic(const PathTree& tree, int t0) {
  StoppingTime tau;
  tau.stop.assign(tree.prefix_count(), false);
  const auto [lo, hi] = tree.range_at(std::min(t0, tree.horizon()));
  for (PrefixId p = lo; p < hi; ++p) tau.stop[p] = true;
  return tau;
}

StoppingTime StoppingTime::hitting(const GameSpec& spec, const PathTree& tree,
                                   const std::vector<std::string>& labels) {
  StoppingTime tau;
  tau.stop.assign(tree.prefix_count(), false);
  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
    const auto& name = spec.state_labels[tree.time(p)][tree.state(p)];
    tau.stop[p] = std::find(labels.begin(), labels.end(), name) != labels.end();
  }
  return tau;
}

PrefixId StoppingTime::stop_prefix(const PathTree& tree, PrefixId leaf) const {
  for (int t = 1; t < tree.horizon(); ++t) {
    const PrefixId a = tree.ancestor(leaf, t);
    if (stop[a]) return a;
  }
  return leaf;
}

std::vector<PrefixId> StoppingTime::stopped_prefixes(const PathTree& tree, PrefixId from) const {
  if (from < 0) from = 0;
  std::vector<PrefixId> out;
  std::vector<PrefixId> stack{from};
  while (!stack.empty()) {
    const PrefixId p = stack.back();
    stack.pop_back();
    if (tree.is_leaf(p)) {
      out.push_back(p);
      continue;
    }
    for (int s = tree.child_count(p) - 1; s >= 0; --s) {
      const PrefixId c = tree.child(p, s);
      if (stop[c])
        out.push_back(c);
      else
        stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> path_measure(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                   const Policy& policy) {
  std::vector<Rational> mass(tree.path_count(), Rational(0));
  std::vector<std::pair<PrefixId, Rational>> stack{{prefix, Rational(1)}};
  while (!stack.empty()) {
    auto [p, m] = std::move(stack.back());
    stack.pop_back();
    if (tree.is_leaf(p)) {
      mass[tree.path_index(p)] += m;
      continue;
    }
    const auto& row = spec.transition[p][policy.at(p)];
    for (int s = 0; s < tree.child_count(p); ++s)
      if (row[s] != 0) stack.emplace_back(tree.child(p, s), m * row[s]);
  }
  return mass;
}

namespace {

Payoff cost_J_rec(const GameSpec& spec, const PathTree& tree, const ActionSpace& space,
                  PrefixId p, const Policy& policy) {
  if (spec.is_terminal(tree, p)) return spec.terminal[p];
  const JointAction a = policy.at(p);
  const int n = spec.players();
  Payoff out(n);
  for (int i = 0; i < n; ++i) out(i) = spec.running_cost[p][i][space.component(a, i)];
  const auto& row = spec.transition[p][a];
  for (int s = 0; s < tree.child_count(p); ++s) {
    if (row[s] == 0) continue;
    out += row[s] * cost_J_rec(spec, tree, space, tree.child(p, s), policy);
  }
  return out;
}

}  // namespace

Payoff cost_J(const GameSpec& spec, const PathTree& tree, PrefixId prefix, const Policy& policy) {
  return cost_J_rec(spec, tree, spec.action_space(), prefix, policy);
}

GameSpec truncate_game(const GameSpec& spec, const PathTree& tree, const StoppingTime& tau,
                       const std::map<PrefixId, Payoff>& psi, PrefixId from) {
  GameSpec out = spec;
  for (PrefixId p : tau.stopped_prefixes(tree, from)) {
    auto it = psi.find(p);
    if (it == psi.end())
      throw ValidationError("terminal condition missing at " + prefix_label(spec, tree, p));
    if (it->second.size() != spec.players())
      throw ValidationError("terminal condition has wrong size at " + prefix_label(spec, tree, p));
    if (!tree.is_leaf(p)) out.stopped[p] = true;
    out.terminal[p] = it->second;
  }
  out.state_dependent = spec.state_dependent && has_state_dependent_data(out, tree);
  return out;
}

std::string prefix_label(const GameSpec& spec, const PathTree& tree, PrefixId p) {
  std::string out;
  const auto states = tree.states_along(p);
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (t) out += '>';
    out += spec.state_labels[t][states[t]];
  }
  return out;
}

std::string joint_action_label(const GameSpec& spec, JointAction a) {
  const ActionSpace space = spec.action_space();
  std::string out = "(";
  for (int i = 0; i < space.players(); ++i) {
    if (i) out += ',';
    out += spec.action_labels[i][space.component(a, i)];
  }
  return out + ")";
}

PrefixId find_prefix(const GameSpec& spec, const PathTree& tree,
                     const std::vector<std::string>& labels) {
  std::vector<int> states;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (t >= spec.state_labels.size()) return -1;
    const auto& names = spec.state_labels[t];
    auto it = std::find(names.begin(), names.end(), labels[t]);
    if (it == names.end()) return -1;
    states.push_back(static_cast<int>(it - names.begin()));
  }
  return tree.find(states);
}

}  // namespace nashset
