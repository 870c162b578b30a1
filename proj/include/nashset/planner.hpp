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

#include <optional>
#include <vector>

namespace nashset {

/// Nonnegative weights summing to one, exactly.
class Scalarization {
 public:
  /// Rescales nonnegative weights with a positive sum to sum one.
  static Scalarization normalized(std::vector<Rational> weights);
  /// Weights must already sum to one.
  static Scalarization exact(std::vector<Rational> weights);
  static Scalarization uniform(int players);

  const std::vector<Rational>& lambda() const { return lambda_; }
  int players() const { return static_cast<int>(lambda_.size()); }
  bool strictly_positive() const;
  Rational apply(const Payoff& y) const;

 private:
  explicit Scalarization(std::vector<Rational> w) : lambda_(std::move(w)) {}
  std::vector<Rational> lambda_;
};

struct PlannerOptimum {
  Rational value;
  std::vector<Payoff> argmin;  // every minimizer, lexicographic order
};

/// min of lambda . y over the set; nullopt when the set is empty.
std::optional<PlannerOptimum> planner_optimum(const ValueSet<Rational>& vs, const Scalarization& lam);

struct ProbeEntry {
  int time = 0;
  PrefixId prefix = 0;
  std::optional<PlannerOptimum> optimum;  // over the set value at the prefix
  Payoff continuation;                    // J of the time-0 selection from the prefix
  Rational continuation_value;            // lambda . continuation
  bool consistent = false;
};

struct ProbeReport {
  std::optional<PlannerOptimum> root;
  Payoff selected;   // first root minimizer
  Policy selection;  // an equilibrium attaining it
  Rational dictatorship_value;  // min of lambda . J over all joint policies
  std::vector<ProbeEntry> entries;  // non-terminal prefixes after time 0, by id
  std::optional<std::size_t> first_inconsistency;  // index into entries
};

/// Selects a planner-optimal equilibrium at the root and compares its
/// continuation values with the planner optimum at every later non-terminal
/// prefix. Requires q > 0; with an empty root set only the dictatorship value
/// is filled in.
ProbeReport time_inconsistency_probe(const GameSpec& spec, const PathTree& tree, const Scalarization& lam,
                                     const EngineOptions& options = {});

}  // namespace nashset
