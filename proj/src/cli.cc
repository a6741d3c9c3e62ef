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


#include "lse/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "lse/error.h"
#include "lse/session.h"

namespace lse {
namespace {

nlohmann::json Vec(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Vector Vertex(int m, int k, double floor) {
  if (k < 0 || k >= m) {
    throw Error(ErrorCode::kInvalidArgument, "vertex " + std::to_string(k) + " out of range");
  }
  Vector x = Vector::Constant(m, floor);
  x[k] = 1.0 - (m - 1) * floor;
  return x;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

std::string Summary(const RunOutcome& o, const BuiltGame& built) {
  const LseResult& r = o.result;
  std::ostringstream os;
  os << "game       " << built.meta.dump() << '\n';
  os << "m x n      " << built.game.m() << " x " << built.game.n() << '\n';
  os << "eps delta  " << Num(o.config.eps) << ' ' << Num(o.config.delta) << '\n';
  os << "alpha      " << Num(o.config.alpha) << '\n';
  os << "x_star    ";
  for (int i = 0; i < r.x_star.size(); ++i) os << ' ' << Num(r.x_star[i]);
  os << '\n';
  os << "b_star     " << r.b_star << '\n';
  os << "u1         " << Num(r.u1) << "  (exact Stackelberg " << Num(o.exact_opt) << ")\n";
  os << "visited   ";
  for (int b : r.visited) os << ' ' << b;
  os << '\n';
  os << "rounds     " << r.rounds_total << " = " << r.rounds_burn_in << " burn-in + "
     << r.rounds_improving << " improving + " << r.rounds_other << " other\n";
  os << "certified  driver " << (r.certified ? "yes" : "no") << ", exact check "
     << (o.oracle.certified ? "yes" : "no") << " at eps + slack/delta\n";
  if (r.capped) os << "note       outer iteration cap reached\n";
  if (r.budget_exhausted) os << "note       round budget exhausted\n";
  return os.str();
}

}  // namespace

BuiltGame BuildGame(const GameSource& source, std::uint64_t seed) {
  const std::uint64_t gs = source.game_seed.value_or(seed);
  switch (source.kind) {
    case SourceKind::kFixture:
      return {AnalyticFixture(source.fixture),
              {{"generator", "fixture"}, {"name", source.fixture}}, {}};
    case SourceKind::kFile: {
      GameFile f = LoadGame(source.file);
      BuiltGame built{f.game, f.meta, {}};
      if (f.meta.contains("path")) built.path = f.meta["path"].get<std::vector<int>>();
      return built;
    }
    case SourceKind::kSmoothed: {
      const char* base = source.base == SmoothedBase::kUniform ? "uniform" : "constant";
      return {SmoothedInstance(source.m, source.n, source.sigma, gs, source.base),
              {{"generator", "smoothed"},
               {"m", source.m},
               {"n", source.n},
               {"sigma", source.sigma},
               {"base", base},
               {"seed", gs}},
              {}};
    }
    case SourceKind::kLowerBound: {
      PathGameSpec spec;
      spec.ell = source.ell;
      spec.num_principal = source.lb_actions;
      spec.seed = gs;
      PathGame pg = LowerBoundGame(spec);
      return {pg.game,
              {{"generator", "lower_bound"}, {"ell", source.ell}, {"path", pg.path},
               {"seed", gs}},
              pg.path};
    }
    case SourceKind::kNone:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "missing game source");
}

Vector ParsePoint(const std::string& spec, const BuiltGame& built, double floor) {
  const int m = built.game.m();
  if (spec == "uniform") return Vector::Constant(m, 1.0 / m);
  if (spec.rfind("vertex:", 0) == 0) {
    const std::string v = spec.substr(7);
    if (v.rfind("v_", 0) == 0) {
      if (built.path.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "path vertices need a lower-bound game");
      }
      const std::string idx = v.substr(2);
      const int ell = static_cast<int>(built.path.size());
      int i = 0;
      try {
        i = idx == "ell" ? ell : std::stoi(idx);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "bad path vertex " + v);
      }
      if (i < 1 || i > ell) throw Error(ErrorCode::kInvalidArgument, "bad path vertex " + v);
      return Vertex(m, built.path[i - 1], floor);
    }
    try {
      return Vertex(m, std::stoi(v), floor);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kInvalidArgument, "bad vertex " + v);
    }
  }
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad point '" + spec + "'");
    }
  }
  if (static_cast<int>(vals.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "point has " + std::to_string(vals.size()) + " entries, game has m = " +
                    std::to_string(m));
  }
  return MixedStrategy(Eigen::Map<Vector>(vals.data(), m)).weights();
}

Vector ReadPointFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("result")) doc = doc["result"];
  if (doc.is_object() && doc.contains("x_star")) doc = doc["x_star"];
  else if (doc.is_object() && doc.contains("x")) doc = doc["x"];
  if (!doc.is_array() || doc.empty()) {
    throw Error(ErrorCode::kSchemaViolation, path + ": expected x_star, x or an array");
  }
  std::vector<double> vals;
  for (const auto& v : doc) {
    if (!v.is_number()) throw Error(ErrorCode::kSchemaViolation, path + ": non-numeric entry");
    vals.push_back(v.get<double>());
  }
  return MixedStrategy(Eigen::Map<Vector>(vals.data(), vals.size())).weights();
}

LseConfig ResolveConfig(const RunConfig& config, const BuiltGame& built) {
  LseConfig c = config.lse;
  const int m = built.game.m(), n = built.game.n();
  if (config.auto_alpha) {
    c.alpha = std::min(1e-3, 0.9 * c.c_alpha * c.sigma_lb / (double(m) * m * n));
  }
  std::string start = config.start;
  if (start.empty() && !built.path.empty()) start = "vertex:v_1";
  if (!start.empty() && start != "avg") c.x_start = ParsePoint(start, built, c.gamma);
  return c;
}

RunOutcome RunOnce(const RunConfig& config, const BuiltGame& built, std::uint64_t seed,
                   std::string* transcript) {
  RunOutcome o;
  o.config = ResolveConfig(config, built);
  const GameInstance& game = built.game;
  SessionOptions opts;
  opts.gamma = o.config.gamma / 2;
  opts.record_history = transcript != nullptr;
  Session session(game, Learner(config.learner, game.n(), seed), seed, opts);
  o.result = FindLse(session, o.config);
  const double eps_check = o.config.eps + o.result.slack / o.config.delta;
  if (o.result.x_star.size() == game.m()) {
    o.oracle = CertifyLse(game, o.result.x_star, eps_check, o.config.delta);
  }
  o.exact_opt = ExactStackelberg(game).value;
  o.json = {{"game", built.meta},
            {"m", game.m()},
            {"n", game.n()},
            {"learner", LearnerKindName(config.learner)},
            {"seed", seed},
            {"result", LseResultToJson(o.result, o.config)},
            {"oracle", CertifyToJson(o.oracle)},
            {"oracle_eps", eps_check},
            {"u1_exact_opt", o.exact_opt}};
  if (transcript) {
    std::ostringstream os;
    session.WriteTranscript(os);
    *transcript = os.str();
  }
  return o;
}

int RunLse(const RunConfig& config) {
  const BuiltGame built = BuildGame(config.source, config.seed);
  std::string transcript;
  const RunOutcome o =
      RunOnce(config, built, config.seed, config.record_transcript ? &transcript : nullptr);
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  WriteFile(dir / "result.json", o.json.dump(2) + "\n");
  if (config.record_transcript) WriteFile(dir / "transcript.jsonl", transcript);
  const std::string summary = Summary(o, built);
  WriteFile(dir / "summary.txt", summary);
  std::cout << summary;
  if (o.result.capped) return kExitCapped;
  if (config.require_certified && !(o.result.certified && o.oracle.certified)) {
    return kExitFailed;
  }
  return kExitOk;
}

nlohmann::json VerifyReport(const VerifyConfig& config, bool* passed) {
  const BuiltGame built = BuildGame(config.source, config.seed);
  const GameInstance& game = built.game;
  const LpArithmetic arith = config.rational ? LpArithmetic::kExact : LpArithmetic::kDouble;
  const bool any = config.polytopes || config.stackelberg || config.singular ||
                   !config.certify.empty();
  nlohmann::json report = {{"game", built.meta}, {"m", game.m()}, {"n", game.n()}};
  *passed = true;
  if (config.polytopes || config.stackelberg || !any) {
    const PolytopeCatalog catalog = EnumeratePolytopes(game, arith);
    if (config.polytopes || !any) report["polytopes"] = CatalogToJson(catalog);
    if (config.stackelberg || !any) {
      const StackelbergSolution s = ExactStackelberg(game, catalog);
      report["stackelberg"] = {{"value", s.value}, {"x", Vec(s.x)}, {"b", s.b}};
    }
  }
  if (!config.certify.empty()) {
    const Vector x = std::filesystem::exists(config.certify)
                         ? ReadPointFile(config.certify)
                         : ParsePoint(config.certify, built, 0.0);
    if (x.size() != game.m()) throw Error(ErrorCode::kInvalidArgument, "point dimension");
    const CertifyReport c = CertifyLse(game, x, config.eps, config.delta, arith);
    nlohmann::json j = CertifyToJson(c);
    j["x"] = Vec(x);
    j["eps"] = config.eps;
    j["delta"] = config.delta;
    report["certify"] = j;
    *passed = c.certified;
  }
  if (config.singular) {
    report["singular"] =
        SingularToJson(CheckSingularAssumption(game, config.sigma_lb, config.budget, config.seed));
  }
  report["passed"] = *passed;
  return report;
}

int RunVerify(const VerifyConfig& config) {
  bool passed = false;
  const nlohmann::json report = VerifyReport(config, &passed);
  const std::string text = report.dump(2) + "\n";
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    WriteFile(std::filesystem::path(config.out_dir) / "report.json", text);
  }
  std::cout << text;
  return passed ? kExitOk : kExitFailed;
}

std::vector<SweepRow> Sweep(const SweepConfig& config) {
  const bool lower = config.base.source.kind == SourceKind::kLowerBound;
  if (config.seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid: no seeds");
  if (!config.ells.empty() && !lower) {
    throw Error(ErrorCode::kInvalidArgument, "an ell grid needs a lower-bound game source");
  }
  std::vector<int> ells = config.ells;
  if (lower && ells.empty()) ells = {config.base.source.ell};
  std::vector<std::pair<int, int>> shapes;
  if (lower) {
    for (int ell : ells) shapes.push_back({0, ell});
  } else if (config.ms.empty()) {
    shapes.push_back({config.base.source.m, config.base.source.n});
  } else {
    for (int m : config.ms) {
      if (config.ns.empty()) shapes.push_back({m, m});
      for (int n : config.ns) shapes.push_back({m, n});
    }
  }
  const std::vector<double> eps = config.eps.empty() ? std::vector<double>{config.base.lse.eps}
                                                     : config.eps;
  const std::vector<double> deltas =
      config.deltas.empty() ? std::vector<double>{config.base.lse.delta} : config.deltas;

  std::vector<std::tuple<std::pair<int, int>, double, double, std::uint64_t>> jobs;
  for (const auto& shape : shapes)
    for (double e : eps)
      for (double d : deltas)
        for (std::uint64_t s : config.seeds) jobs.emplace_back(shape, e, d, s);
  if (jobs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid");

  std::vector<SweepRow> rows(jobs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      const auto& [shape, e, d, s] = jobs[k];
      RunConfig rc = config.base;
      if (lower) {
        rc.source.ell = shape.second;
      } else {
        rc.source.m = shape.first;
        rc.source.n = shape.second;
      }
      rc.lse.eps = e;
      rc.lse.delta = d;
      const BuiltGame built = BuildGame(rc.source, s);
      const RunOutcome o = RunOnce(rc, built, s);
      SweepRow& row = rows[k];
      row.m = built.game.m();
      row.n = built.game.n();
      row.ell = lower ? shape.second : 0;
      row.eps = e;
      row.delta = d;
      row.seed = s;
      row.rounds_total = o.result.rounds_total;
      row.rounds_improving = o.result.rounds_improving;
      row.rounds_other = o.result.rounds_other;
      row.certified = o.result.certified && o.oracle.certified;
      row.u1_final = o.result.u1;
      row.u1_exact_opt = o.exact_opt;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SweepCell> SummarizeSweep(const std::vector<SweepRow>& rows) {
  using Key = std::tuple<int, int, int, double, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const SweepRow*>> groups;
  for (const SweepRow& r : rows) {
    const Key key{r.m, r.n, r.ell, r.eps, r.delta};
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<SweepCell> cells;
  for (const Key& key : order) {
    const auto& g = groups[key];
    std::vector<double> rounds;
    int certified = 0;
    for (const SweepRow* r : g) {
      rounds.push_back(static_cast<double>(r->rounds_total));
      certified += r->certified;
    }
    std::sort(rounds.begin(), rounds.end());
    const std::size_t h = rounds.size() / 2;
    SweepCell c;
    std::tie(c.m, c.n, c.ell, c.eps, c.delta) = key;
    c.runs = static_cast<int>(g.size());
    c.median_rounds_total = rounds.size() % 2 ? rounds[h] : 0.5 * (rounds[h - 1] + rounds[h]);
    c.certified_rate = static_cast<double>(certified) / g.size();
    cells.push_back(c);
  }
  return cells;
}

std::string RunsCsv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "m,n,eps,delta,seed,rounds_total,rounds_improving,rounds_other,certified,u1_final,"
        "u1_exact_opt\n";
  for (const SweepRow& r : rows) {
    os << r.m << ',' << r.n << ',' << Num(r.eps) << ',' << Num(r.delta) << ',' << r.seed << ','
       << r.rounds_total << ',' << r.rounds_improving << ',' << r.rounds_other << ','
       << (r.certified ? 1 : 0) << ',' << Num(r.u1_final) << ',' << Num(r.u1_exact_opt) << '\n';
  }
  return os.str();
}

std::string CellsCsv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "m,n,ell,eps,delta,runs,median_rounds_total,certified_rate\n";
  for (const SweepCell& c : cells) {
    os << c.m << ',' << c.n << ',' << c.ell << ',' << Num(c.eps) << ',' << Num(c.delta) << ','
       << c.runs << ',' << Num(c.median_rounds_total) << ',' << Num(c.certified_rate) << '\n';
  }
  return os.str();
}

int RunSweep(const SweepConfig& config) {
  const std::vector<SweepRow> rows = Sweep(config);
  const std::string cells = CellsCsv(SummarizeSweep(rows));
  const std::filesystem::path dir(config.base.out_dir);
  std::filesystem::create_directories(dir);
  WriteFile(dir / "runs.csv", RunsCsv(rows));
  WriteFile(dir / "cells.csv", cells);
  std::cout << cells;
  return kExitOk;
}

int RunGen(const GameSource& source, std::uint64_t seed, const std::string& out_file) {
  const BuiltGame built = BuildGame(source, seed);
  if (out_file.empty() || out_file == "-") {
    std::cout << GameToJson(built.game, built.meta).dump(2) << '\n';
  } else {
    SaveGame(out_file, built.game, built.meta);
  }
  return kExitOk;
}

}  // namespace lse
