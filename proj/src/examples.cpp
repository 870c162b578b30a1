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


#include "nashset/examples.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <random>

#ifndef NASHSET_DATA_DIR
#define NASHSET_DATA_DIR "data"
#endif

namespace nashset {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("NASHSET_DATA_DIR")) return env;
  return NASHSET_DATA_DIR;
}

std::vector<std::string> example_names() {
  return {"table1", "table2-left", "table2-right", "path", "state", "pareto", "degenerate"};
}

namespace {

Json read_example(const std::string& name) {
  const auto names = example_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ValidationError("unknown example '" + name + "'");
  const auto path = data_dir() / "examples" / (name + ".json");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return Json::parse(in);
}

}  // namespace

GameSpec load_example(const std::string& name) { return game_from_json(read_example(name)); }

GameSpec pareto_example_spec(const Rational& eps) {
  if (eps <= 0 || 3 * eps >= 1) throw ValidationError("eps must lie in (0, 1/3)");
  Json doc = read_example("pareto");
  const auto& pert = doc.at("perturbation");
  const int t = pert.at("time").get<int>();
  const std::string from = pert.at("state").get<std::string>();
  const auto& next = doc.at("states").at(t + 1);
  Json kept = Json::array();
  for (const auto& e : doc.at("transitions"))
    if (!(e.value("time", -1) == t && e.value("state", "") == from)) kept.push_back(e);
  for (const auto& [key, target] : pert.at("target").items()) {
    Json action = Json::array();
    std::size_t start = 0;
    for (std::size_t pos; (pos = key.find(',', start)) != std::string::npos; start = pos + 1)
      action.push_back(key.substr(start, pos - start));
    action.push_back(key.substr(start));
    Json probs = Json::object();
    for (const auto& s : next)
      probs[s.get<std::string>()] = format_rational(s == target ? Rational(1) - 3 * eps : eps);
    kept.push_back({{"time", t}, {"state", from}, {"action", action}, {"probs", probs}});
  }
  doc["transitions"] = kept;
  return game_from_json(doc);
}

GameSpec random_spec(const RandomSpecOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GameSpec spec;
  for (std::size_t t = 0; t < options.state_counts.size(); ++t)
    spec.state_labels.push_back(index_labels(options.state_counts[t], "s" + std::to_string(t) + "_"));
  for (int i = 0; i < options.players; ++i) spec.action_labels.push_back(index_labels(options.actions));
  const PathTree tree = build_path_tree(spec);
  const ActionSpace space = spec.action_space();
  const std::size_t n = tree.prefix_count();
  spec.transition.assign(n, {});
  spec.running_cost.assign(n, {});
  spec.terminal.assign(n, Payoff());
  spec.stopped.assign(n, false);
  auto cost = [&] {
    return Rational(uniform(-options.cost_numerator_range, options.cost_numerator_range),
                    options.cost_denominator);
  };
  auto kernel_row = [&](int width) {
    std::vector<int> w(static_cast<std::size_t>(width));
    int total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : w) {
        x = uniform(1, options.kernel_grid);
        if (options.allow_zero && uniform(0, 2) == 0) x = 0;
        total += x;
      }
    }
    std::vector<Rational> row;
    for (int x : w) row.emplace_back(x, total);
    return row;
  };
  // with markov data, the first prefix of each (time, state) draws and the rest copy
  std::map<std::pair<int, int>, PrefixId> first;
  for (PrefixId p = 0; p < static_cast<PrefixId>(n); ++p) {
    if (options.markov) {
      auto [it, inserted] = first.emplace(std::pair{tree.time(p), tree.state(p)}, p);
      if (!inserted) {
        spec.transition[p] = spec.transition[it->second];
        spec.running_cost[p] = spec.running_cost[it->second];
        spec.terminal[p] = spec.terminal[it->second];
        continue;
      }
    }
    if (tree.is_leaf(p)) {
      Payoff g(options.players);
      for (int i = 0; i < options.players; ++i) g(i) = cost();
      spec.terminal[p] = g;
      continue;
    }
    for (JointAction a = 0; a < space.count(); ++a) spec.transition[p].push_back(kernel_row(tree.child_count(p)));
    spec.running_cost[p].resize(static_cast<std::size_t>(options.players));
    for (auto& row : spec.running_cost[p])
      for (int b = 0; b < options.actions; ++b) row.push_back(cost());
  }
  spec.state_dependent = options.markov;
  spec.require_positive = !options.allow_zero;
  validate(spec);
  return spec;
}

}  // namespace nashset
