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


// lse run|verify|sweep|gen

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lse/cli.h"
#include "lse/error.h"

namespace {

struct SourceFlags {
  std::string fixture;
  std::string file;
  std::string smoothed;  // "MxN"
  int lowerbound = 0;
  double sigma = 0.05;
  std::string base = "uniform";
  int lb_actions = 0;
  std::int64_t game_seed = -1;

  void Add(CLI::App* app) {
    app->add_option("--fixture", fixture, "crossing_2x2 | tripoint_3 | dominant");
    app->add_option("--file", file, "game JSON file");
    app->add_option("--smoothed", smoothed, "smoothed game shape, e.g. 3x3");
    app->add_option("--lowerbound", lowerbound, "path game with this ell")->check(CLI::Range(2, 64));
    app->add_option("--sigma", sigma, "perturbation sigma for --smoothed");
    app->add_option("--base", base, "smoothed base game: uniform | constant");
    app->add_option("--lb-actions", lb_actions, "principal actions of the path game (default ell^2)");
    app->add_option("--game-seed", game_seed, "draw the game from this seed instead of --seed");
  }

  lse::GameSource Build() const {
    lse::GameSource s;
    const int given = !fixture.empty() + !file.empty() + !smoothed.empty() + (lowerbound > 0);
    if (given == 0) throw CLI::ValidationError("game source", "missing game source");
    if (given > 1) throw CLI::ValidationError("game source", "pick one game source");
    if (!fixture.empty()) {
      s.kind = lse::SourceKind::kFixture;
      s.fixture = fixture;
    } else if (!file.empty()) {
      s.kind = lse::SourceKind::kFile;
      s.file = file;
    } else if (!smoothed.empty()) {
      s.kind = lse::SourceKind::kSmoothed;
      const auto x = smoothed.find('x');
      try {
        if (x == std::string::npos) throw std::invalid_argument("shape");
        s.m = std::stoi(smoothed.substr(0, x));
        s.n = std::stoi(smoothed.substr(x + 1));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--smoothed", "expected MxN, got " + smoothed);
      }
      s.sigma = sigma;
      s.base = lse::ParseSmoothedBase(base);
    } else {
      s.kind = lse::SourceKind::kLowerBound;
      s.ell = lowerbound;
      s.lb_actions = lb_actions;
    }
    if (game_seed >= 0) s.game_seed = static_cast<std::uint64_t>(game_seed);
    return s;
  }
};

struct ParamFlags {
  double eps = 0.1;
  double delta = 0.05;
  double alpha = 0.0;
  double gamma = 1e-3;
  double sigma_lb = 0.05;
  double r_min = 0.1;
  int max_outer = 0;
  std::string learner = "fp";

  void Add(CLI::App* app) {
    app->add_option("--learner", learner, "fp | mw | ftpl | eg");
    app->add_option("--eps", eps);
    app->add_option("--delta", delta);
    app->add_option("--alpha", alpha, "default min(1e-3, 0.9 sigma_lb / (m^2 n))");
    app->add_option("--gamma", gamma);
    app->add_option("--sigma-lb", sigma_lb);
    app->add_option("--r-min", r_min);
    app->add_option("--max-outer", max_outer, "0 means n");
  }

  void Apply(lse::RunConfig* rc) const {
    rc->learner = lse::ParseLearnerKind(learner);
    rc->lse.eps = eps;
    rc->lse.delta = delta;
    rc->lse.gamma = gamma;
    rc->lse.sigma_lb = sigma_lb;
    rc->lse.r_min = r_min;
    rc->lse.max_outer = max_outer;
    rc->auto_alpha = alpha <= 0.0;
    if (alpha > 0.0) rc->lse.alpha = alpha;
  }
};

std::uint64_t SeedFromEnv(std::uint64_t seed) {
  if (const char* env = std::getenv("LSE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("LSE_SEED", std::string("not an integer: ") + env);
    }
  }
  return seed;
}

int ExitFor(const lse::Error& e) {
  switch (e.code()) {
    case lse::ErrorCode::kConfigViolation:
    case lse::ErrorCode::kInvalidArgument:
    case lse::ErrorCode::kUnknownFixture:
    case lse::ErrorCode::kSchemaViolation:
    case lse::ErrorCode::kSpecInvalid:
      return lse::kExitUsage;
    case lse::ErrorCode::kIterationCapExceeded:
      return lse::kExitCapped;
    default:
      return lse::kExitFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Stackelberg equilibria against mean-based learners"};
  app.require_subcommand(1);

  SourceFlags run_src, verify_src, sweep_src, gen_src;
  ParamFlags run_par, sweep_par;
  std::uint64_t seed = 0;
  std::string out = ".";

  auto* run = app.add_subcommand("run", "find a local Stackelberg strategy");
  run_src.Add(run);
  run_par.Add(run);
  std::string start;
  bool require_certified = false, no_transcript = false;
  run->add_option("--seed", seed);
  run->add_option("--start", start, "avg | uniform | a,b,c | vertex:K | vertex:v_I");
  run->add_option("--out", out, "output directory");
  run->add_flag("--require-certified", require_certified, "exit 1 unless certified");
  run->add_flag("--no-transcript", no_transcript);

  auto* verify = app.add_subcommand("verify", "exact checks on a game");
  verify_src.Add(verify);
  lse::VerifyConfig vc;
  verify->add_option("--seed", seed);
  verify->add_option("--certify", vc.certify, "point spec or JSON file");
  verify->add_option("--eps", vc.eps);
  verify->add_option("--delta", vc.delta);
  verify->add_flag("--polytopes", vc.polytopes);
  verify->add_flag("--stackelberg", vc.stackelberg);
  verify->add_flag("--singular", vc.singular);
  verify->add_option("--sigma-lb", vc.sigma_lb);
  verify->add_option("--budget", vc.budget, "submatrix budget for --singular");
  verify->add_flag("--rational", vc.rational, "exact rational LPs");
  verify->add_option("--out", vc.out_dir, "also write report.json here");

  auto* sweep = app.add_subcommand("sweep", "grid of runs, CSV out");
  sweep_src.Add(sweep);
  sweep_par.Add(sweep);
  lse::SweepConfig sc;
  int num_seeds = 0;
  std::string sweep_out = ".";
  sweep->add_option("--m", sc.ms);
  sweep->add_option("--n", sc.ns);
  sweep->add_option("--eps-grid", sc.eps);
  sweep->add_option("--delta-grid", sc.deltas);
  sweep->add_option("--ell", sc.ells);
  sweep->add_option("--seeds", sc.seeds, "explicit seed list");
  sweep->add_option("--num-seeds", num_seeds, "seeds base..base+k-1");
  sweep->add_option("--seed", seed, "base seed for --num-seeds");
  sweep->add_option("--out", sweep_out);

  auto* gen = app.add_subcommand("gen", "write a game file");
  gen_src.Add(gen);
  std::string gen_out = "-";
  gen->add_option("--seed", seed);
  gen->add_option("--out", gen_out, "file, or - for stdout");

  try {
    app.parse(argc, argv);
    seed = SeedFromEnv(seed);
    if (*run) {
      lse::RunConfig rc;
      rc.source = run_src.Build();
      run_par.Apply(&rc);
      rc.seed = seed;
      rc.start = start;
      rc.out_dir = out;
      rc.require_certified = require_certified;
      rc.record_transcript = !no_transcript;
      return lse::RunLse(rc);
    }
    if (*verify) {
      vc.source = verify_src.Build();
      vc.seed = seed;
      return lse::RunVerify(vc);
    }
    if (*sweep) {
      sc.base.source = sweep_src.Build();
      sweep_par.Apply(&sc.base);
      sc.base.out_dir = sweep_out;
      sc.base.record_transcript = false;
      for (int k = 0; k < num_seeds; ++k) sc.seeds.push_back(seed + k);
      if (sc.seeds.empty()) throw CLI::ValidationError("grid", "empty grid: give --seeds or --num-seeds");
      return lse::RunSweep(sc);
    }
    return lse::RunGen(gen_src.Build(), seed, gen_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lse::kExitUsage;
  } catch (const lse::Error& e) {
    std::cerr << "lse: " << e.what() << '\n';
    return ExitFor(e);
  }
}
