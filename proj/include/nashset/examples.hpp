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

#include "nashset/game_io.hpp"
#include "nashset/game_model.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nashset {

/// Directory holding the shipped example specs. NASHSET_DATA_DIR in the
/// environment overrides the build-time location.
std::filesystem::path data_dir();

/// Names accepted by load_example.
std::vector<std::string> example_names();

/// Loads data/examples/<name>.json. Throws ValidationError for unknown names.
GameSpec load_example(const std::string& name);

/// The two-period Pareto example with its first-step kernel rebuilt for
/// `eps`: weight 1 - 3 eps on the targeted state, eps on the others.
GameSpec pareto_example_spec(const Rational& eps);

struct RandomSpecOptions {
  std::vector<int> state_counts{1, 2, 2, 2};
  int players = 2;
  int actions = 2;
  int cost_numerator_range = 8;  // costs are k / cost_denominator, |k| <= range
  int cost_denominator = 4;
  int kernel_grid = 6;           // kernel weights are drawn from 1..kernel_grid
  bool allow_zero = false;       // drop kernel weights to zero with probability 1/3
  bool markov = false;           // make q, f and g depend on the current state only
};

/// Deterministic in (options, seed).
GameSpec random_spec(const RandomSpecOptions& options, std::uint64_t seed);

}  // namespace nashset
