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


#include "nashset/equilibrium.hpp"

#include "nashset/parallel.hpp"

#include <limits>
#include <map>

namespace nashset {

std::string to_string(ValueVariant v) {
  switch (v) {
    case ValueVariant::full: return "full";
    case ValueVariant::state: return "state";
    case ValueVariant::symmetric: return "symmetric";
    case ValueVariant::pareto: return "pareto";
    case ValueVariant::strong_pareto: return "strong_pareto";
  }
  return "full";
}

ValueVariant parse_value_variant(std::string_view s) {
  if (s == "full") return ValueVariant::full;
  if (s == "state") return ValueVariant::state;
  if (s == "symmetric") return ValueVariant::symmetric;
  if (s == "pareto") return ValueVariant::pareto;
  if (s == "strong_pareto" || s == "strong-pareto") return ValueVariant::strong_pareto;
  throw ValidationError("unknown value variant '" + std::string(s) + "'");
}

PolicyClass variant_class(ValueVariant v) {
  switch (v) {
    case ValueVariant::state: return PolicyClass::state_dependent;
    case ValueVariant::symmetric: return PolicyClass::symmetric;
    default: return PolicyClass::path_dependent;
  }
}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

// The decision prefixes below `from`, flattened for repeated evaluation.
// Node 0 is `from` itself; parents precede children.
struct Subtree {
  const GameSpec& spec;
  const PathTree& tree;
  ActionSpace space;
  int players;
  std::vector<PrefixId> nodes;
  std::vector<int> parent;
  // child_local[k][s] is the local index of child s, or -1 when that child
  // is terminal (its payoff is then spec.terminal[child]).
  std::vector<std::vector<int>> child_local;
  std::vector<std::vector<PrefixId>> child_prefix;
  // state-class slots: (time, state) of decision nodes
  std::vector<int> slot_of;
  std::vector<std::pair<int, int>> slots;
  std::vector<int> slot_rep;

  Subtree(const GameSpec& s, const PathTree& t, PrefixId from)
      : spec(s), tree(t), space(s.action_space()), players(s.players()) {
    if (spec.is_terminal(tree, from)) return;
    std::vector<int> local(tree.prefix_count(), -1);
    // BFS keeps ids increasing, so parents precede children.
    nodes.push_back(from);
    parent.push_back(-1);
    local[from] = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const PrefixId p = nodes[k];
      std::vector<int> kids;
      std::vector<PrefixId> kid_ids;
      for (int st = 0; st < tree.child_count(p); ++st) {
        const PrefixId c = tree.child(p, st);
        kid_ids.push_back(c);
        if (spec.is_terminal(tree, c)) {
          kids.push_back(-1);
        } else {
          local[c] = static_cast<int>(nodes.size());
          kids.push_back(local[c]);
          nodes.push_back(c);
          parent.push_back(static_cast<int>(k));
        }
      }
      child_local.push_back(std::move(kids));
      child_prefix.push_back(std::move(kid_ids));
    }
    std::map<std::pair<int, int>, int> index;
    for (PrefixId p : nodes) index.emplace(std::pair{tree.time(p), tree.state(p)}, 0);
    int next = 0;
    for (auto& [key, value] : index) {
      value = next++;
      slots.push_back(key);
    }
    slot_rep.assign(slots.size(), -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const int sl = index.at({tree.time(nodes[k]), tree.state(nodes[k])});
      slot_of.push_back(sl);
      if (slot_rep[sl] < 0) slot_rep[sl] = static_cast<int>(k);
    }
  }

  std::size_t size() const { return nodes.size(); }

  // Whether q, f and the continuation structure agree across each slot.
  bool markov() const {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const int r = slot_rep[slot_of[k]];
      if (r == static_cast<int>(k)) continue;
      const PrefixId p = nodes[k];
      const PrefixId q = nodes[r];
      if (spec.transition[p] != spec.transition[q] || spec.running_cost[p] != spec.running_cost[q])
        return false;
      for (std::size_t s = 0; s < child_local[k].size(); ++s) {
        const bool tp = child_local[k][s] < 0;
        const bool tq = child_local[r][s] < 0;
        if (tp != tq) return false;
        if (tp && !exactly_equal(spec.terminal[child_prefix[k][s]], spec.terminal[child_prefix[r][s]]))
          return false;
      }
    }
    return true;
  }
};

// Per-node cost and best-response caches for one joint policy over a
// Subtree. Best responses here are over unrestricted deviations.
class NodeCache {
 public:
  NodeCache(const Subtree& sub, bool need_br)
      : sub_(sub), n_(sub.players), need_br_(need_br),
        action_(sub.size(), 0),
        j_(sub.size() * static_cast<std::size_t>(n_)),
        br_(need_br ? sub.size() * static_cast<std::size_t>(n_) : 0),
        tmp_(0), acc_(0) {}

  JointAction& action(std::size_t k) { return action_[k]; }
  JointAction action(std::size_t k) const { return action_[k]; }

  void recompute(std::size_t k) {
    const PrefixId p = sub_.nodes[k];
    const JointAction a = action_[k];
    const auto& row = sub_.spec.transition[p][a];
    const auto& cost = sub_.spec.running_cost[p];
    for (int i = 0; i < n_; ++i) {
      Rational& out = j_[k * n_ + i];
      out = cost[i][sub_.space.component(a, i)];
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s].is_zero()) continue;
        tmp_ = row[s];
        tmp_ *= child_j(k, s, i);
        out += tmp_;
      }
    }
    if (!need_br_) return;
    for (int i = 0; i < n_; ++i) {
      Rational& best = br_[k * n_ + i];
      for (int b = 0; b < sub_.space.size(i); ++b) {
        const auto& dev_row = sub_.spec.transition[p][sub_.space.with(a, i, b)];
        acc_ = cost[i][b];
        for (std::size_t s = 0; s < dev_row.size(); ++s) {
          if (dev_row[s].is_zero()) continue;
          tmp_ = dev_row[s];
          tmp_ *= child_br(k, s, i);
          acc_ += tmp_;
        }
        if (b == 0 || acc_ < best) best = acc_;
      }
    }
  }

  void recompute_all() {
    for (std::size_t k = sub_.size(); k-- > 0;) recompute(k);
  }

  const Rational& j(std::size_t k, int i) const { return j_[k * n_ + i]; }
  const Rational& br(std::size_t k, int i) const { return br_[k * n_ + i]; }

  const Rational& child_j(std::size_t k, std::size_t s, int i) const {
    const int c = sub_.child_local[k][s];
    return c < 0 ? sub_.spec.terminal[sub_.child_prefix[k][s]](i) : j_[c * n_ + i];
  }
  const Rational& child_br(std::size_t k, std::size_t s, int i) const {
    const int c = sub_.child_local[k][s];
    return c < 0 ? sub_.spec.terminal[sub_.child_prefix[k][s]](i) : br_[c * n_ + i];
  }

  Payoff root_value() const {
    Payoff out(n_);
    for (int i = 0; i < n_; ++i) out(i) = j_[i];
    return out;
  }

 private:
  const Subtree& sub_;
  int n_;
  bool need_br_;
  std::vector<JointAction> action_;
  std::vector<Rational> j_;
  std::vector<Rational> br_;
  Rational tmp_;
  Rational acc_;
};

// Value of player i's best state-dependent deviation from the joint actions
// in `cache`, with the witness deviation per slot.
Rational state_best_response(const Subtree& sub, const NodeCache& cache, int i,
                             bool markov, std::uint64_t cap, std::vector<int>* witness) {
  const std::size_t nslots = sub.slots.size();
  const auto& space = sub.space;
  const auto& spec = sub.spec;
  if (markov) {
    std::vector<Rational> v(nslots);
    std::vector<int> arg(nslots, 0);
    // slots are ordered by time, so later slots are deeper
    for (std::size_t sl = nslots; sl-- > 0;) {
      const std::size_t k = static_cast<std::size_t>(sub.slot_rep[sl]);
      const PrefixId p = sub.nodes[k];
      const JointAction a = cache.action(k);
      Rational best;
      for (int b = 0; b < space.size(i); ++b) {
        const auto& row = spec.transition[p][space.with(a, i, b)];
        Rational acc = spec.running_cost[p][i][b];
        for (std::size_t s = 0; s < row.size(); ++s) {
          if (row[s].is_zero()) continue;
          const int c = sub.child_local[k][s];
          acc += row[s] * (c < 0 ? spec.terminal[sub.child_prefix[k][s]](i)
                                 : v[static_cast<std::size_t>(sub.slot_of[c])]);
        }
        if (b == 0 || acc < best) {
          best = acc;
          arg[sl] = b;
        }
      }
      v[sl] = best;
    }
    if (witness) *witness = arg;
    return v[static_cast<std::size_t>(sub.slot_of[0])];
  }
  // Path-dependent data: enumerate player i's state-dependent controls.
  const std::uint64_t count = saturating_pow(static_cast<std::uint64_t>(space.size(i)), nslots);
  if (count > cap) throw CapExceeded("state-dependent deviations", count, cap);
  std::vector<int> dev(nslots, 0);
  std::vector<Rational> val(sub.size());
  Rational best;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t sl = nslots; sl-- > 0;) {
      dev[sl] = static_cast<int>(rest % static_cast<std::uint64_t>(space.size(i)));
      rest /= static_cast<std::uint64_t>(space.size(i));
    }
    for (std::size_t k = sub.size(); k-- > 0;) {
      const PrefixId p = sub.nodes[k];
      const int b = dev[static_cast<std::size_t>(sub.slot_of[k])];
      const auto& row = spec.transition[p][space.with(cache.action(k), i, b)];
      Rational acc = spec.running_cost[p][i][b];
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s].is_zero()) continue;
        const int c = sub.child_local[k][s];
        acc += row[s] * (c < 0 ? spec.terminal[sub.child_prefix[k][s]](i) : val[static_cast<std::size_t>(c)]);
      }
      val[k] = acc;
    }
    if (idx == 0 || val[0] < best) {
      best = val[0];
      if (witness) *witness = dev;
    }
  }
  return best;
}

// The enumeration variables of a policy class over a Subtree.
struct Variables {
  std::vector<int> var_of;            // node -> variable
  std::vector<JointAction> choices;   // digit -> joint action
  std::size_t count = 0;

  Variables(const Subtree& sub, PolicyClass cls) {
    const auto& space = sub.space;
    if (cls == PolicyClass::symmetric) {
      if (!space.all_sizes_equal())
        throw ValidationError("symmetric policies need equal action sets for all players");
      for (JointAction a = 0; a < space.count(); ++a)
        if (space.is_symmetric(a)) choices.push_back(a);
    } else {
      for (JointAction a = 0; a < space.count(); ++a) choices.push_back(a);
    }
    if (cls == PolicyClass::state_dependent) {
      var_of = sub.slot_of;
      count = sub.slots.size();
    } else {
      for (std::size_t k = 0; k < sub.size(); ++k) var_of.push_back(static_cast<int>(k));
      count = sub.size();
    }
  }

  std::uint64_t policies() const { return saturating_pow(choices.size(), count); }
};

Policy make_policy(const PathTree& tree, const Subtree& sub, const NodeCache& cache,
                   PolicyClass cls) {
  Policy out = constant_policy(tree, 0, cls);
  for (std::size_t k = 0; k < sub.size(); ++k) out.actions[sub.nodes[k]] = cache.action(k);
  if (cls == PolicyClass::state_dependent) {
    // fill the rest of each slot so the witness is state dependent everywhere
    std::map<std::pair<int, int>, JointAction> by_slot;
    for (std::size_t k = 0; k < sub.size(); ++k)
      by_slot[sub.slots[static_cast<std::size_t>(sub.slot_of[k])]] = cache.action(k);
    for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
      auto it = by_slot.find({tree.time(p), tree.state(p)});
      if (it != by_slot.end()) out.actions[p] = it->second;
    }
  }
  return out;
}

struct ChunkResult {
  ValueSet<Rational> values;
  std::vector<EquilibriumRecord> witnesses;
  std::uint64_t equilibria = 0;
};

// Walks policies [begin, end) of the class in odometer order, calling
// visit(cache) after each is evaluated.
template <typename Visit>
void walk_policies(const Subtree& sub, const Variables& vars, bool need_br, std::uint64_t begin,
                   std::uint64_t end, Visit&& visit) {
  if (begin >= end) return;
  NodeCache cache(sub, need_br);
  const std::size_t nv = vars.count;
  const std::uint64_t base = vars.choices.size();
  std::vector<std::size_t> digit(nv, 0);
  std::uint64_t rest = begin;
  for (std::size_t v = nv; v-- > 0;) {
    digit[v] = static_cast<std::size_t>(rest % base);
    rest /= base;
  }
  for (std::size_t k = 0; k < sub.size(); ++k)
    cache.action(k) = vars.choices[digit[static_cast<std::size_t>(vars.var_of[k])]];
  cache.recompute_all();
  std::vector<char> dirty(sub.size());
  for (std::uint64_t idx = begin;;) {
    visit(cache);
    if (++idx >= end) break;
    std::size_t v = nv;
    while (v-- > 0) {
      if (++digit[v] < base) break;
      digit[v] = 0;
    }
    // variables v..nv-1 changed
    for (std::size_t k = 0; k < sub.size(); ++k) {
      const auto var = static_cast<std::size_t>(vars.var_of[k]);
      dirty[k] = var >= v;
      if (dirty[k]) cache.action(k) = vars.choices[digit[var]];
    }
    for (std::size_t k = sub.size(); k-- > 1;)
      if (dirty[k]) dirty[static_cast<std::size_t>(sub.parent[k])] = 1;
    for (std::size_t k = sub.size(); k-- > 0;)
      if (dirty[k]) cache.recompute(k);
  }
}

std::size_t chunk_count(int threads) {
  const int w = resolve_threads(threads);
  return w <= 1 ? 1 : static_cast<std::size_t>(w) * 8;
}

void check_policy_class(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                        const Policy& policy, PolicyClass cls) {
  if (policy.tag != cls)
    throw ValidationError("policy is tagged " + to_string(policy.tag) + " but class " +
                          to_string(cls) + " was requested");
  if (!satisfies_class(policy, spec, tree, prefix))
    throw ValidationError("policy violates the " + to_string(cls) + " class");
}

}  // namespace

BestResponse best_response(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                           const Policy& policy, int player, PolicyClass deviations) {
  if (player < 0 || player >= spec.players()) throw ValidationError("player out of range");
  BestResponse out{Rational(0), policy};
  if (spec.is_terminal(tree, prefix)) {
    out.value = spec.terminal[prefix](player);
    return out;
  }
  const Subtree sub(spec, tree, prefix);
  const auto& space = sub.space;
  NodeCache cache(sub, false);
  for (std::size_t k = 0; k < sub.size(); ++k) cache.action(k) = policy.at(sub.nodes[k]);
  if (deviations == PolicyClass::state_dependent) {
    std::vector<int> arg;
    out.value = state_best_response(sub, cache, player, sub.markov(),
                                    EngineOptions{}.policy_cap, &arg);
    for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p) {
      if (tree.is_leaf(p)) continue;
      for (std::size_t sl = 0; sl < sub.slots.size(); ++sl)
        if (sub.slots[sl] == std::pair{tree.time(p), tree.state(p)})
          out.deviation.actions[p] = space.with(policy.at(p), player, arg[sl]);
    }
    return out;
  }
  std::vector<Rational> v(sub.size());
  for (std::size_t k = sub.size(); k-- > 0;) {
    const PrefixId p = sub.nodes[k];
    const JointAction a = policy.at(p);
    Rational best;
    int arg = 0;
    for (int b = 0; b < space.size(player); ++b) {
      const auto& row = spec.transition[p][space.with(a, player, b)];
      Rational acc = spec.running_cost[p][player][b];
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s].is_zero()) continue;
        const int c = sub.child_local[k][s];
        acc += row[s] * (c < 0 ? spec.terminal[sub.child_prefix[k][s]](player) : v[static_cast<std::size_t>(c)]);
      }
      if (b == 0 || acc < best) {
        best = acc;
        arg = b;
      }
    }
    v[k] = best;
    out.deviation.actions[p] = space.with(a, player, arg);
  }
  out.deviation.tag = PolicyClass::path_dependent;
  out.value = v[0];
  return out;
}

NashCheck is_equilibrium(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                         const Policy& policy, const Rational& eps, PolicyClass cls) {
  check_policy_class(spec, tree, prefix, policy, cls);
  NashCheck out;
  out.value = cost_J(spec, tree, prefix, policy);
  out.slack = Payoff(spec.players());
  out.equilibrium = true;
  const PolicyClass deviations =
      cls == PolicyClass::state_dependent ? PolicyClass::state_dependent : PolicyClass::path_dependent;
  for (int i = 0; i < spec.players(); ++i) {
    out.slack(i) = out.value(i) - best_response(spec, tree, prefix, policy, i, deviations).value;
    if (out.slack(i) > eps) out.equilibrium = false;
  }
  return out;
}

static void require_prefix(const PathTree& tree, PrefixId prefix) {
  if (prefix < 0 || prefix >= static_cast<PrefixId>(tree.prefix_count()))
    throw ValidationError("prefix id " + std::to_string(prefix) + " out of range");
}

std::uint64_t policy_count(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                           PolicyClass cls) {
  require_prefix(tree, prefix);
  const Subtree sub(spec, tree, prefix);
  if (sub.size() == 0) return 1;
  return Variables(sub, cls).policies();
}

Enumeration enumerate_equilibria(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                 const Rational& eps, PolicyClass cls,
                                 const EngineOptions& options) {
  require_prefix(tree, prefix);
  Enumeration out;
  out.values.set_epsilon(eps);
  const int n = spec.players();
  if (spec.is_terminal(tree, prefix)) {
    const Payoff value = spec.terminal[prefix];
    out.values.insert(value);
    out.witnesses.push_back({constant_policy(tree, 0, cls), value, Payoff::Zero(n)});
    out.policies = out.equilibria = 1;
    return out;
  }
  const Subtree sub(spec, tree, prefix);
  const Variables vars(sub, cls);
  const std::uint64_t total = vars.policies();
  if (total > options.policy_cap) throw CapExceeded("joint policy enumeration", total, options.policy_cap);
  const bool state = cls == PolicyClass::state_dependent;
  const bool markov = state && sub.markov();

  const std::size_t chunks = chunk_count(options.threads);
  std::vector<ChunkResult> results(std::min<std::uint64_t>(chunks, total));
  parallel_chunks(total, options.threads, results.size(), [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
    ChunkResult& res = results[c];
    Payoff value(n), slack(n);
    walk_policies(sub, vars, !state, b, e, [&](const NodeCache& cache) {
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        const Rational br = state ? state_best_response(sub, cache, i, markov, options.policy_cap, nullptr)
                                  : cache.br(0, i);
        slack(i) = cache.j(0, i) - br;
        if (slack(i) > eps) {
          ok = false;
          break;
        }
      }
      if (!ok) return;
      ++res.equilibria;
      value = cache.root_value();
      if (res.values.contains(value)) return;
      res.values.insert(value);
      res.witnesses.push_back({make_policy(tree, sub, cache, cls), value, slack});
    });
  });
  out.policies = total;
  for (auto& res : results) {
    out.equilibria += res.equilibria;
    for (auto& w : res.witnesses) {
      if (out.values.contains(w.value)) continue;
      out.values.insert(w.value);
      out.witnesses.push_back(std::move(w));
    }
  }
  return out;
}

ValueSet<Rational> set_value_bruteforce(const GameSpec& spec, const PathTree& tree,
                                        PrefixId prefix, const Rational& eps, PolicyClass cls,
                                        const EngineOptions& options) {
  return enumerate_equilibria(spec, tree, prefix, eps, cls, options).values;
}

ValueSet<Rational> set_value(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                             ValueVariant variant, const Rational& eps,
                             const EngineOptions& options) {
  auto values = set_value_bruteforce(spec, tree, prefix, eps, variant_class(variant), options);
  if (variant == ValueVariant::pareto) return pareto_filter(values);
  if (variant == ValueVariant::strong_pareto)
    return strong_pareto_filter(spec, tree, prefix, values, options);
  return values;
}

std::vector<StaticEquilibrium> static_equilibria(const ActionSpace& space,
                                                 const std::vector<Payoff>& costs) {
  std::vector<StaticEquilibrium> out;
  for (JointAction a = 0; a < space.count(); ++a) {
    bool ok = true;
    for (int i = 0; ok && i < space.players(); ++i)
      for (int b = 0; b < space.size(i); ++b)
        if (costs[space.with(a, i, b)](i) < costs[a](i)) {
          ok = false;
          break;
        }
    if (ok) out.push_back({a, costs[a]});
  }
  return out;
}

namespace {

std::vector<Payoff> one_step_costs(const GameSpec& spec, const ActionSpace& space, PrefixId p,
                                   const std::vector<const Payoff*>& psi) {
  const int n = spec.players();
  std::vector<Payoff> costs(space.count(), Payoff(n));
  for (JointAction a = 0; a < space.count(); ++a) {
    Payoff& c = costs[a];
    for (int i = 0; i < n; ++i) c(i) = spec.running_cost[p][i][space.component(a, i)];
    const auto& row = spec.transition[p][a];
    for (std::size_t s = 0; s < row.size(); ++s)
      if (!row[s].is_zero()) c += row[s] * *psi[s];
  }
  return costs;
}

struct DppState {
  const GameSpec& spec;
  const PathTree& tree;
  ActionSpace space;
  const EngineOptions& options;
  std::uint64_t selections = 0;
};

ValueSet<Rational> dpp_rec(DppState& st, PrefixId p) {
  const GameSpec& spec = st.spec;
  const PathTree& tree = st.tree;
  if (spec.is_terminal(tree, p)) return ValueSet<Rational>{spec.terminal[p]};
  for (const auto& row : spec.transition[p])
    for (const auto& q : row)
      if (q <= 0)
        throw ValidationError("the recursive engine needs q > 0; zero transition at " +
                              prefix_label(spec, tree, p));
  const int width = tree.child_count(p);
  std::vector<std::vector<Payoff>> child_sets;
  std::uint64_t total = 1;
  for (int s = 0; s < width; ++s) {
    child_sets.push_back(dpp_rec(st, tree.child(p, s)).points());
    total = total > std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(1, child_sets.back().size())
                ? std::numeric_limits<std::uint64_t>::max()
                : total * child_sets.back().size();
  }
  ValueSet<Rational> out;
  if (total == 0) return out;
  st.selections += total;
  if (total > st.options.selection_cap || st.selections > st.options.selection_cap)
    throw CapExceeded("continuation selections", std::max(total, st.selections), st.options.selection_cap);
  const std::size_t chunks = chunk_count(st.options.threads);
  std::vector<ValueSet<Rational>> parts(std::min<std::uint64_t>(chunks, total));
  parallel_chunks(total, st.options.threads, parts.size(), [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
    std::vector<const Payoff*> psi(static_cast<std::size_t>(width));
    for (std::uint64_t idx = b; idx < e; ++idx) {
      std::uint64_t rest = idx;
      for (int s = width - 1; s >= 0; --s) {
        const auto& set = child_sets[static_cast<std::size_t>(s)];
        psi[static_cast<std::size_t>(s)] = &set[rest % set.size()];
        rest /= set.size();
      }
      for (const auto& eq : static_equilibria(st.space, one_step_costs(spec, st.space, p, psi)))
        parts[c].insert(eq.value);
    }
  });
  for (const auto& part : parts) out.merge(part);
  return out;
}

}  // namespace

std::vector<StaticEquilibrium> one_step_equilibria(const GameSpec& spec, const PathTree& tree,
                                                   PrefixId prefix,
                                                   const std::vector<Payoff>& psi) {
  if (tree.is_leaf(prefix)) throw ValidationError("one-step game needs a non-terminal prefix");
  if (static_cast<int>(psi.size()) != tree.child_count(prefix))
    throw ValidationError("one-step game needs one continuation value per child");
  std::vector<const Payoff*> ptr;
  for (const auto& v : psi) ptr.push_back(&v);
  const ActionSpace space = spec.action_space();
  return static_equilibria(space, one_step_costs(spec, space, prefix, ptr));
}

ValueSet<Rational> set_value_dpp(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                                 const EngineOptions& options) {
  require_prefix(tree, prefix);
  DppState st{spec, tree, spec.action_space(), options};
  return dpp_rec(st, prefix);
}

ValueSet<Rational> all_policy_values(const GameSpec& spec, const PathTree& tree,
                                     PrefixId prefix, const EngineOptions& options) {
  if (spec.is_terminal(tree, prefix)) return ValueSet<Rational>{spec.terminal[prefix]};
  const Subtree sub(spec, tree, prefix);
  const Variables vars(sub, PolicyClass::path_dependent);
  const std::uint64_t total = vars.policies();
  if (total > options.policy_cap) throw CapExceeded("joint policy enumeration", total, options.policy_cap);
  std::vector<ValueSet<Rational>> parts(std::min<std::uint64_t>(chunk_count(options.threads), total));
  parallel_chunks(total, options.threads, parts.size(), [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
    walk_policies(sub, vars, false, b, e, [&](const NodeCache& cache) { parts[c].insert(cache.root_value()); });
  });
  ValueSet<Rational> out;
  for (const auto& part : parts) out.merge(part);
  return out;
}

ValueSet<Rational> strong_pareto_filter(const GameSpec& spec, const PathTree& tree,
                                        PrefixId prefix, const ValueSet<Rational>& values,
                                        const EngineOptions& options) {
  const ValueSet<Rational> everything = all_policy_values(spec, tree, prefix, options);
  ValueSet<Rational> out(values.epsilon());
  for (const auto& y : values) {
    bool dominated = false;
    for (const auto& z : everything)
      if (dominates(z, y)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(y);
  }
  return out;
}

namespace {

Rational team_rec(const GameSpec& spec, const PathTree& tree, const ActionSpace& space,
                  PrefixId p, const std::vector<Rational>& lambda) {
  const int n = spec.players();
  if (spec.is_terminal(tree, p)) {
    Rational out = 0;
    for (int i = 0; i < n; ++i) out += lambda[i] * spec.terminal[p](i);
    return out;
  }
  std::vector<Rational> next;
  for (int s = 0; s < tree.child_count(p); ++s) next.push_back(team_rec(spec, tree, space, tree.child(p, s), lambda));
  Rational best;
  for (JointAction a = 0; a < space.count(); ++a) {
    Rational acc = 0;
    for (int i = 0; i < n; ++i) acc += lambda[i] * spec.running_cost[p][i][space.component(a, i)];
    const auto& row = spec.transition[p][a];
    for (std::size_t s = 0; s < row.size(); ++s) acc += row[s] * next[s];
    if (a == 0 || acc < best) best = acc;
  }
  return best;
}

}  // namespace

Rational team_optimum(const GameSpec& spec, const PathTree& tree, PrefixId prefix,
                      const std::vector<Rational>& lambda) {
  if (static_cast<int>(lambda.size()) != spec.players())
    throw ValidationError("weights need one entry per player");
  return team_rec(spec, tree, spec.action_space(), prefix, lambda);
}

}  // namespace nashset
