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


#include "nashset/game_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace nashset {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

Rational rational_from(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ValidationError(where + ": expected a rational string such as \"1/2\" or an integer");
}

std::vector<std::string> labels_from(const Json& v, const std::string& prefix, const std::string& what) {
  if (v.is_number_integer()) return index_labels(v.get<int>(), prefix);
  require(v.is_array(), what + " must be a label list or a count");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (x.is_string())
      out.push_back(x.get<std::string>());
    else if (x.is_number_integer())
      out.push_back(std::to_string(x.get<long long>()));
    else
      throw ValidationError(what + " labels must be strings or integers");
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      require(out[i] != out[j], "duplicate label '" + out[i] + "' in " + what);
  return out;
}

std::string label_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ValidationError("labels must be strings or integers");
}

int index_of(const std::vector<std::string>& labels, const std::string& name, const std::string& what) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return static_cast<int>(i);
  throw ValidationError("unknown " + what + " '" + name + "'");
}

// Prefixes addressed by an entry, with the override level of the match
// (1 for a state key, 2 for a prefix key).
struct Target {
  std::vector<PrefixId> prefixes;
  int level = 0;
};

Target resolve_target(const GameSpec& spec, const PathTree& tree, const Json& entry,
                      std::optional<int> default_time) {
  Target out;
  if (entry.contains("prefix")) {
    std::vector<std::string> names;
    for (const auto& x : entry.at("prefix")) names.push_back(label_of(x));
    const PrefixId p = find_prefix(spec, tree, names);
    require(p >= 0, "unknown prefix in entry " + entry.dump());
    if (entry.contains("time"))
      require(entry.at("time").get<int>() == tree.time(p), "time does not match prefix in " + entry.dump());
    out.prefixes.push_back(p);
    out.level = 2;
    return out;
  }
  require(entry.contains("state"), "entry needs 'prefix' or 'state': " + entry.dump());
  int t = 0;
  if (entry.contains("time"))
    t = entry.at("time").get<int>();
  else if (default_time)
    t = *default_time;
  else
    throw ValidationError("entry keyed by state needs 'time': " + entry.dump());
  require(t >= 0 && t <= tree.horizon(), "time out of range in " + entry.dump());
  const int s = index_of(spec.state_labels[t], label_of(entry.at("state")), "state");
  const auto [lo, hi] = tree.range_at(t);
  for (PrefixId p = lo; p < hi; ++p)
    if (tree.state(p) == s) out.prefixes.push_back(p);
  out.level = 1;
  return out;
}

std::vector<JointAction> resolve_actions(const GameSpec& spec, const ActionSpace& space, const Json& entry) {
  std::vector<JointAction> out;
  if (!entry.contains("action") || (entry.at("action").is_string() && entry.at("action") == "*")) {
    for (JointAction a = 0; a < space.count(); ++a) out.push_back(a);
    return out;
  }
  const auto& v = entry.at("action");
  require(v.is_array() && static_cast<int>(v.size()) == spec.players(),
          "joint action must list one action per player: " + entry.dump());
  std::vector<int> idx;
  for (int i = 0; i < spec.players(); ++i)
    idx.push_back(index_of(spec.action_labels[i], label_of(v[i]), "action"));
  out.push_back(space.encode(idx));
  return out;
}

}  // namespace

std::vector<std::string> index_labels(int n, const std::string& prefix) {
  require(n > 0, "label count must be positive");
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

GameSpec game_from_json(const Json& doc) {
  try {
    GameSpec spec;
    require(doc.is_object(), "game spec must be a JSON object");
    const int horizon = doc.at("horizon").get<int>();
    require(horizon >= 1, "horizon must be at least 1");
    const auto& states = doc.at("states");
    require(states.is_array() && static_cast<int>(states.size()) == horizon + 1,
            "'states' must list horizon+1 state sets");
    for (std::size_t t = 0; t < states.size(); ++t)
      spec.state_labels.push_back(labels_from(states[t], "s" + std::to_string(t) + "_", "states"));
    const int players = doc.at("players").get<int>();
    require(players >= 1, "at least one player required");
    const auto& actions = doc.at("actions");
    if (actions.is_array() && !actions.empty() && actions[0].is_array()) {
      require(static_cast<int>(actions.size()) == players, "'actions' must list one set per player");
      for (const auto& a : actions) spec.action_labels.push_back(labels_from(a, "", "actions"));
    } else {
      // one set shared by every player
      for (int i = 0; i < players; ++i) spec.action_labels.push_back(labels_from(actions, "", "actions"));
    }

    const PathTree tree = build_path_tree(spec);
    const ActionSpace space = spec.action_space();
    const std::size_t n = tree.prefix_count();
    spec.transition.assign(n, {});
    spec.running_cost.assign(n, {});
    spec.terminal.assign(n, Payoff());
    spec.stopped.assign(n, false);

    std::vector<std::vector<int>> trans_level(n);
    for (PrefixId p = 0; p < static_cast<PrefixId>(n); ++p) {
      if (tree.is_leaf(p)) continue;
      const int width = tree.child_count(p);
      spec.transition[p].assign(space.count(), std::vector<Rational>());
      trans_level[p].assign(space.count(), 0);
      if (width == 1)
        for (auto& row : spec.transition[p]) row.assign(1, Rational(1));
      spec.running_cost[p].resize(static_cast<std::size_t>(players));
      for (int i = 0; i < players; ++i) spec.running_cost[p][i].assign(space.size(i), Rational(0));
    }

    if (doc.contains("transitions")) {
      for (const auto& entry : doc.at("transitions")) {
        const Target target = resolve_target(spec, tree, entry, std::nullopt);
        const auto joint = resolve_actions(spec, space, entry);
        for (PrefixId p : target.prefixes) {
          require(!tree.is_leaf(p), "transition given at a terminal-time prefix: " + entry.dump());
          const int t1 = tree.time(p) + 1;
          std::vector<Rational> row(tree.child_count(p), Rational(0));
          for (const auto& [name, value] : entry.at("probs").items())
            row[index_of(spec.state_labels[t1], name, "state")] = rational_from(value, "probability");
          for (JointAction a : joint) {
            if (trans_level[p][a] > target.level) continue;
            trans_level[p][a] = target.level;
            spec.transition[p][a] = row;
          }
        }
      }
    }
    for (PrefixId p = 0; p < static_cast<PrefixId>(n); ++p)
      for (std::size_t a = 0; a < spec.transition[p].size(); ++a)
        require(!spec.transition[p][a].empty(),
                "missing transition at " + prefix_label(spec, tree, p) + " for action " +
                    joint_action_label(spec, static_cast<JointAction>(a)));

    if (doc.contains("running_costs")) {
      std::vector<std::vector<int>> level(n, std::vector<int>(static_cast<std::size_t>(players), 0));
      for (const auto& entry : doc.at("running_costs")) {
        require(!(entry.contains("action") && entry.at("action").is_array()),
                "running costs depend on the player's own action only: " + entry.dump());
        const Target target = resolve_target(spec, tree, entry, std::nullopt);
        std::vector<int> who;
        if (entry.contains("player")) {
          const int i = entry.at("player").get<int>();
          require(i >= 0 && i < players, "player out of range in " + entry.dump());
          who.push_back(i);
        } else {
          for (int i = 0; i < players; ++i) who.push_back(i);
        }
        for (PrefixId p : target.prefixes) {
          require(!tree.is_leaf(p), "running cost given at a terminal-time prefix: " + entry.dump());
          for (int i : who) {
            if (level[p][i] > target.level) continue;
            auto& row = spec.running_cost[p][i];
            if (entry.contains("costs")) {
              const auto& c = entry.at("costs");
              const auto& list = entry.contains("player") || !c[0].is_array() ? c : c[i];
              require(list.is_array() && list.size() == row.size(),
                      "running cost list must have one entry per own action: " + entry.dump());
              for (std::size_t k = 0; k < row.size(); ++k) row[k] = rational_from(list[k], "running cost");
            } else {
              const Rational c = rational_from(entry.at("cost"), "running cost");
              if (entry.contains("action"))
                row[index_of(spec.action_labels[i], label_of(entry.at("action")), "action")] = c;
              else
                std::fill(row.begin(), row.end(), c);
            }
            level[p][i] = target.level;
          }
        }
      }
    }

    std::vector<int> term_level(n, 0);
    if (doc.contains("terminal_costs")) {
      for (const auto& entry : doc.at("terminal_costs")) {
        const Target target = resolve_target(spec, tree, entry, tree.horizon());
        const auto& c = entry.at("cost");
        require(c.is_array() && static_cast<int>(c.size()) == players,
                "terminal cost needs one entry per player: " + entry.dump());
        Payoff value(players);
        for (int i = 0; i < players; ++i) value(i) = rational_from(c[i], "terminal cost");
        for (PrefixId p : target.prefixes) {
          if (term_level[p] > target.level) continue;
          term_level[p] = target.level;
          spec.terminal[p] = value;
          if (!tree.is_leaf(p)) spec.stopped[p] = true;
        }
      }
    }
    const auto [leaf_lo, leaf_hi] = tree.range_at(tree.horizon());
    for (PrefixId p = leaf_lo; p < leaf_hi; ++p)
      require(spec.terminal[p].size() == players,
              "missing terminal cost at " + prefix_label(spec, tree, p));

    if (doc.contains("flags")) {
      const auto& flags = doc.at("flags");
      spec.state_dependent = flags.value("state_dependent", false);
      spec.require_positive = flags.value("q_positive", false);
    }
    validate(spec);
    return spec;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed game spec: ") + e.what());
  }
}

Json game_to_json(const GameSpec& spec) {
  const PathTree tree = build_path_tree(spec);
  const ActionSpace space = spec.action_space();
  auto prefix_json = [&](PrefixId p) {
    Json out = Json::array();
    const auto states = tree.states_along(p);
    for (std::size_t t = 0; t < states.size(); ++t) out.push_back(spec.state_labels[t][states[t]]);
    return out;
  };
  Json doc;
  doc["horizon"] = spec.horizon();
  doc["states"] = spec.state_labels;
  doc["players"] = spec.players();
  doc["actions"] = spec.action_labels;
  Json transitions = Json::array();
  Json running = Json::array();
  Json terminal = Json::array();
  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
    if (spec.is_terminal(tree, p)) {
      Json cost = Json::array();
      for (Eigen::Index i = 0; i < spec.terminal[p].size(); ++i)
        cost.push_back(format_rational(spec.terminal[p](i)));
      terminal.push_back({{"prefix", prefix_json(p)}, {"cost", cost}});
    }
    if (tree.is_leaf(p)) continue;
    const auto& next = spec.state_labels[tree.time(p) + 1];
    for (JointAction a = 0; a < space.count(); ++a) {
      Json action = Json::array();
      for (int i = 0; i < space.players(); ++i)
        action.push_back(spec.action_labels[i][space.component(a, i)]);
      Json probs = Json::object();
      for (std::size_t s = 0; s < next.size(); ++s)
        probs[next[s]] = format_rational(spec.transition[p][a][s]);
      transitions.push_back({{"prefix", prefix_json(p)}, {"action", action}, {"probs", probs}});
    }
    for (int i = 0; i < spec.players(); ++i) {
      Json costs = Json::array();
      for (const auto& c : spec.running_cost[p][i]) costs.push_back(format_rational(c));
      running.push_back({{"prefix", prefix_json(p)}, {"player", i}, {"costs", costs}});
    }
  }
  doc["transitions"] = std::move(transitions);
  doc["running_costs"] = std::move(running);
  doc["terminal_costs"] = std::move(terminal);
  doc["flags"] = {{"state_dependent", spec.state_dependent}, {"q_positive", spec.require_positive}};
  return doc;
}

GameSpec load_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open game spec " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return game_from_json(doc);
}

void save_game(const GameSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << game_to_json(spec).dump(2) << '\n';
}

}  // namespace nashset
