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

#include "nashset/errors.hpp"
#include "nashset/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nashset {

using PrefixId = std::int32_t;
using JointAction = std::uint32_t;

/// Mixed-radix encoding of joint actions. Player 0 is the most significant
/// digit, so increasing indices enumerate profiles lexicographically.
class ActionSpace {
 public:
  ActionSpace() = default;
  explicit ActionSpace(std::vector<int> sizes);

  int players() const { return static_cast<int>(sizes_.size()); }
  int size(int player) const { return sizes_[player]; }
  JointAction count() const { return count_; }

  int component(JointAction a, int player) const {
    return static_cast<int>((a / strides_[player]) % sizes_[player]);
  }
  /// `a` with player's component replaced by `action`.
  JointAction with(JointAction a, int player, int action) const {
    return a - static_cast<JointAction>(component(a, player)) * strides_[player] +
           static_cast<JointAction>(action) * strides_[player];
  }
  JointAction encode(std::span<const int> actions) const;
  std::vector<int> decode(JointAction a) const;

  /// Every player uses the same action index.
  bool is_symmetric(JointAction a) const;
  bool all_sizes_equal() const;

 private:
  std::vector<int> sizes_;
  std::vector<JointAction> strides_;
  JointAction count_ = 0;
};

/// All paths of a finite state tree S_0 x ... x S_T with every prefix
/// (x_0..x_t) given a dense id. Ids are grouped by time and ordered
/// lexicographically by state index inside each time, so the children of a
/// prefix are a contiguous id range.
class PathTree {
 public:
  explicit PathTree(std::vector<int> state_counts);

  int horizon() const { return static_cast<int>(counts_.size()) - 1; }
  int state_count(int t) const { return counts_[t]; }
  std::size_t prefix_count() const { return time_.size(); }
  std::size_t path_count() const { return static_cast<std::size_t>(width_.back()); }

  int time(PrefixId p) const { return time_[p]; }
  int state(PrefixId p) const { return state_[p]; }
  PrefixId parent(PrefixId p) const { return parent_[p]; }
  bool is_leaf(PrefixId p) const { return time_[p] == horizon(); }

  /// Ids of all prefixes at time t.
  std::pair<PrefixId, PrefixId> range_at(int t) const {
    return {static_cast<PrefixId>(offset_[t]),
            static_cast<PrefixId>(offset_[t] + width_[t])};
  }
  std::size_t count_at(int t) const { return static_cast<std::size_t>(width_[t]); }

  PrefixId first_child(PrefixId p) const;
  PrefixId child(PrefixId p, int next_state) const { return first_child(p) + next_state; }
  int child_count(PrefixId p) const { return counts_[time_[p] + 1]; }

  /// The ancestor of p at time t <= time(p).
  PrefixId ancestor(PrefixId p, int t) const;
  /// True when p equals q on coordinates 0..time(q).
  bool extends(PrefixId p, PrefixId q) const;
  std::vector<int> states_along(PrefixId p) const;
  PrefixId find(std::span<const int> states) const;
  /// Position of a leaf among all paths.
  std::size_t path_index(PrefixId leaf) const {
    return static_cast<std::size_t>(leaf - offset_.back());
  }
  PrefixId leaf(std::size_t path_index) const {
    return static_cast<PrefixId>(offset_.back() + static_cast<std::int64_t>(path_index));
  }

 private:
  std::vector<int> counts_;
  std::vector<std::int64_t> offset_;
  std::vector<std::int64_t> width_;
  std::vector<int> time_;
  std::vector<int> state_;
  std::vector<PrefixId> parent_;
};

/// A discrete N-player game on a path tree. All per-prefix tables are
/// indexed by PathTree prefix ids of `PathTree(state_counts())`.
///
/// A prefix marked `stopped` ends the game there with payoff
/// `terminal[p]`; leaves always stop. Truncated games (terminal time tau,
/// terminal condition psi) are expressed this way.
struct GameSpec {
  std::vector<std::vector<std::string>> state_labels;   // per time
  std::vector<std::vector<std::string>> action_labels;  // per player

  // transition[p][a][s'] for non-leaf prefixes; empty for leaves.
  std::vector<std::vector<std::vector<Rational>>> transition;
  // running_cost[p][i][a_i] for non-leaf prefixes; empty for leaves.
  std::vector<std::vector<std::vector<Rational>>> running_cost;
  // terminal[p] has size N at leaves and stopped prefixes, 0 elsewhere.
  std::vector<Payoff> terminal;
  std::vector<bool> stopped;

  bool state_dependent = false;   // asserts the Markov restriction on q, f, g
  bool require_positive = false;  // asserts q > 0

  int horizon() const { return static_cast<int>(state_labels.size()) - 1; }
  int players() const { return static_cast<int>(action_labels.size()); }
  std::vector<int> state_counts() const;
  ActionSpace action_space() const;
  bool is_terminal(const PathTree& tree, PrefixId p) const {
    return tree.is_leaf(p) || stopped[p];
  }
};

bool operator==(const GameSpec& a, const GameSpec& b);

/// Checks shapes, exact normalization of every kernel row, nonnegativity,
/// the q > 0 flag and the state_dependent flag against the data. Throws
/// ValidationError.
void validate(const GameSpec& spec);

PathTree build_path_tree(const GameSpec& spec);

/// Whether q, f and g only depend on the current state (checked on data).
bool has_state_dependent_data(const GameSpec& spec, const PathTree& tree);
/// Whether every transition probability below `from` is strictly positive.
bool has_positive_kernel(const GameSpec& spec, const PathTree& tree, PrefixId from = -1);

enum class PolicyClass { path_dependent, state_dependent, symmetric };

std::string to_string(PolicyClass c);
PolicyClass parse_policy_class(std::string_view s);

/// An adapted joint control: one joint action per prefix. Adaptedness is
/// structural since the key is the prefix itself.
struct Policy {
  std::vector<JointAction> actions;  // indexed by prefix id
  PolicyClass tag = PolicyClass::path_dependent;

  JointAction at(PrefixId p) const { return actions[static_cast<std::size_t>(p)]; }
};

/// Checks the invariants implied by `policy.tag` on prefixes at times >= t
/// extending `from`.
bool satisfies_class(const Policy& policy, const GameSpec& spec, const PathTree& tree,
                     PrefixId from = -1);

Policy constant_policy(const PathTree& tree, JointAction a,
                       PolicyClass tag = PolicyClass::path_dependent);

/// A stopping time as a stop/continue flag per prefix; tau(x) is the first
/// time the flag is set along x, or T.
struct StoppingTime {
  std::vector<bool> stop;

  static StoppingTime deterministic(const PathTree& tree, int t0);
  /// First time the path visits a state whose label is in `labels`.
  static StoppingTime hitting(const GameSpec& spec, const PathTree& tree,
                              const std::vector<std::string>& labels);

  /// The prefix at which the path through leaf `leaf` stops.
  PrefixId stop_prefix(const PathTree& tree, PrefixId leaf) const;
  int value(const PathTree& tree, PrefixId leaf) const {
    return tree.time(stop_prefix(tree, leaf));
  }
  /// First-stop prefixes among the extensions of `from` (deduplicated,
  /// in id order).
  std::vector<PrefixId> stopped_prefixes(const PathTree& tree, PrefixId from) const;
};

/// Path probabilities P^{t,x,alpha} indexed by path (leaf) index.
std::vector<Rational> path_measure(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                   const Policy& policy);

/// J(t, x, alpha) for the prefix x at time t = tree.time(prefix).
Payoff cost_J(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
              const Policy& policy);

/// The game with terminal time tau and terminal condition psi. `psi` must
/// hold an entry for every first-stop prefix extending `from` (-1: all).
GameSpec truncate_game(const GameSpec& spec, const PathTree& tree, const StoppingTime& tau,
                       const std::map<PrefixId, Payoff>& psi, PrefixId from = -1);

/// Human-readable prefix label, e.g. "s0>s10>s2".
std::string prefix_label(const GameSpec& spec, const PathTree& tree, PrefixId p);
std::string joint_action_label(const GameSpec& spec, JointAction a);

/// Resolves a list of state labels (x_0..x_t) to a prefix id.
PrefixId find_prefix(const GameSpec& spec, const PathTree& tree,
                     const std::vector<std::string>& labels);

}  // namespace nashset
