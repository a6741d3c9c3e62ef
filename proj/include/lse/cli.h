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


#ifndef LSE_CLI_H_
#define LSE_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lse/instances.h"
#include "lse/learner.h"
#include "lse/lse_driver.h"
#include "lse/verify.h"

namespace lse {

enum class SourceKind { kNone, kFixture, kFile, kSmoothed, kLowerBound };

struct GameSource {
  SourceKind kind = SourceKind::kNone;
  std::string fixture;
  std::string file;
  int m = 3;
  int n = 3;
  double sigma = 0.05;
  SmoothedBase base = SmoothedBase::kUniform;
  int ell = 2;
  int lb_actions = 0;  // 0 keeps the generator default
  // Smoothed and lower-bound games are drawn from this seed when set,
  // otherwise from the run seed.
  std::optional<std::uint64_t> game_seed;
};

struct BuiltGame {
  GameInstance game;
  nlohmann::json meta = nlohmann::json::object();
  std::vector<int> path;  // lower-bound games only
};

BuiltGame BuildGame(const GameSource& source, std::uint64_t seed);

// "uniform", "avg", "a,b,c", "vertex:K" (0-based principal action) or
// "vertex:v_I" / "vertex:v_ell" on lower-bound games. Vertices are pure;
// `floor` > 0 pulls them into the interior.
Vector ParsePoint(const std::string& spec, const BuiltGame& built, double floor);

// Reads x from a JSON file holding {"x_star": ...}, {"x": ...} or an array.
Vector ReadPointFile(const std::string& path);

struct RunConfig {
  GameSource source;
  LearnerKind learner = LearnerKind::kFictitiousPlay;
  LseConfig lse;
  bool auto_alpha = true;  // alpha <- min(1e-3, 0.9 c_alpha sigma_lb / (m^2 n))
  std::uint64_t seed = 0;
  std::string start;  // empty: lower-bound games enter at v_1, others at the burn-in average
  std::string out_dir = ".";
  bool require_certified = false;
  bool record_transcript = true;
};

// Fills alpha and x_start for a concrete game.
LseConfig ResolveConfig(const RunConfig& config, const BuiltGame& built);

struct RunOutcome {
  LseConfig config;
  LseResult result;
  CertifyReport oracle;  // certify_lse at eps + slack / delta
  double exact_opt = 0.0;
  nlohmann::json json;
};

RunOutcome RunOnce(const RunConfig& config, const BuiltGame& built, std::uint64_t seed,
                   std::string* transcript = nullptr);

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapped = 3;

int RunLse(const RunConfig& config);

struct VerifyConfig {
  GameSource source;
  std::uint64_t seed = 0;
  std::string certify;  // point spec or a JSON file
  double eps = 0.1;
  double delta = 0.05;
  bool polytopes = false;
  bool stackelberg = false;
  bool singular = false;
  double sigma_lb = 0.05;
  std::uint64_t budget = kDefaultSubmatrixBudget;
  bool rational = false;
  std::string out_dir;
};

nlohmann::json VerifyReport(const VerifyConfig& config, bool* passed);
int RunVerify(const VerifyConfig& config);

struct SweepConfig {
  RunConfig base;
  std::vector<int> ms;  // principal actions; n follows ns or equals m
  std::vector<int> ns;
  std::vector<double> eps;
  std::vector<double> deltas;
  std::vector<int> ells;  // lower-bound grid instead of (m, n)
  std::vector<std::uint64_t> seeds;
};

struct SweepRow {
  int m = 0;
  int n = 0;
  int ell = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t rounds_total = 0;
  std::uint64_t rounds_improving = 0;
  std::uint64_t rounds_other = 0;
  bool certified = false;
  double u1_final = 0.0;
  double u1_exact_opt = 0.0;
};

struct SweepCell {
  int m = 0;
  int n = 0;
  int ell = 0;
  double eps = 0.0;
  double delta = 0.0;
  int runs = 0;
  double median_rounds_total = 0.0;
  double certified_rate = 0.0;
};

// Runs are independent and fan out over threads; rows come back in grid order.
std::vector<SweepRow> Sweep(const SweepConfig& config);
std::vector<SweepCell> SummarizeSweep(const std::vector<SweepRow>& rows);
std::string RunsCsv(const std::vector<SweepRow>& rows);
std::string CellsCsv(const std::vector<SweepCell>& cells);
int RunSweep(const SweepConfig& config);

int RunGen(const GameSource& source, std::uint64_t seed, const std::string& out_file);

}  // namespace lse

#endif  // LSE_CLI_H_
