// Copyright 2026 The LSE Authors.
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

#ifndef LSE_INSTANCES_H_
#define LSE_INSTANCES_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lse/game.h"

namespace lse {

// u2 <- u2 + N(0, sigma^2) entrywise; u1 is kept. Without clipping the
// result is tagged extended_range.
GameInstance SmoothedPerturb(const GameInstance& base, double sigma,
                             std::uint64_t seed, bool clip = false);

enum class SmoothedBase { kUniform, kConstant };

// Base game drawn from `seed` (u1 uniform on [0,1]; u2 uniform or all 0.5)
// followed by SmoothedPerturb with the same seed.
GameInstance SmoothedInstance(int m, int n, double sigma, std::uint64_t seed,
                              SmoothedBase base = SmoothedBase::kUniform);
SmoothedBase ParseSmoothedBase(const std::string& name);

struct PathGameSpec {
  int ell = 2;
  // Principal action count; 0 means ell^2.
  int num_principal = 0;
  // Hidden path v_1..v_ell as 0-based principal actions with v_1 = 0. Left
  // empty, a path is drawn from `seed`.
  std::vector<int> path;
  std::uint64_t seed = 0;
};

struct PathGame {
  GameInstance game;
  std::vector<int> path;
  // Agent action k > 0 is the triple (r, s, i), 0-based r, s and 1-based i.
  std::vector<std::array<int, 3>> triples;

  // Agent action whose region surrounds the edge v_i -> v_{i+1}, i in [1, ell).
  int OnPathAction(int i) const;
};

PathGame LowerBoundGame(const PathGameSpec& spec);

// "crossing_2x2", "tripoint_3", "dominant".
GameInstance AnalyticFixture(const std::string& name);
std::vector<std::string> FixtureNames();

struct GameFile {
  GameInstance game;
  nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json GameToJson(const GameInstance& game,
                          const nlohmann::json& meta = nlohmann::json::object());
GameFile GameFromJson(const nlohmann::json& doc);

void SaveGame(const std::string& path, const GameInstance& game,
              const nlohmann::json& meta = nlohmann::json::object());
GameFile LoadGame(const std::string& path);

}  // namespace lse

#endif  // LSE_INSTANCES_H_
