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

#include <json.hpp>

#include <filesystem>
#include <string>

namespace nashset {

using Json = nlohmann::ordered_json;

/// Reads a game from its JSON form.
///
/// Top-level keys: `horizon`, `states` (per-time label lists, or counts),
/// `players`, `actions` (per-player label lists, or counts),
/// `transitions`, `running_costs`, `terminal_costs` and `flags`.
///
/// Table entries are addressed either by `time` + `state` (applies to every
/// prefix ending in that state) or by `prefix` (list of labels). Later
/// entries override earlier ones, and prefix entries override state entries
/// regardless of order. `action` is a list of labels, one per player, or
/// "*". Rationals are "p/q" strings or JSON integers.
///
/// Missing running costs default to 0. When a time has a single successor
/// state the probability 1 is implied. Everything else must be given.
/// Throws ValidationError.
GameSpec game_from_json(const Json& doc);

/// Canonical prefix-keyed form. game_from_json(game_to_json(g)) == g.
Json game_to_json(const GameSpec& spec);

GameSpec load_game(const std::filesystem::path& path);
void save_game(const GameSpec& spec, const std::filesystem::path& path);

/// Labels "0".."n-1".
std::vector<std::string> index_labels(int n, const std::string& prefix = "");

}  // namespace nashset
