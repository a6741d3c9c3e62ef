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

#include "lse/lse_driver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lse/error.h"

namespace lse {
namespace {

[[noreturn]] void Violation(const std::string& what, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(6);
  os << what << " violated (" << lhs << " vs " << rhs << ")";
  throw Error(ErrorCode::kConfigViolation, os.str());
}

nlohmann::json VectorJson(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

void LseConfig::Validate(int m, int n) const {
  if (!(eps > 0.0 && eps <= 1.0)) Violation("0 < eps <= 1", eps, 1.0);
  if (!(delta > 0.0 && delta <= 2.0)) Violation("0 < delta <= 2", delta, 2.0);
  if (!(gamma > 0.0)) Violation("gamma > 0", gamma, 0.0);
  if (!(gamma * m < 1.0)) Violation("gamma * m < 1", gamma * m, 1.0);
  if (!(sigma_lb > 0.0)) Violation("sigma_lb > 0", sigma_lb, 0.0);
  if (!(alpha > 0.0)) Violation("alpha > 0", alpha, 0.0);
  const double cap = c_alpha * sigma_lb / (double(m) * m * n);
  if (!(alpha <= cap)) Violation("alpha <= c_alpha * sigma_lb / (m^2 n)", alpha, cap);
  if (!(alpha * std::sqrt(double(m)) < sigma_lb)) {
    Violation("alpha * sqrt(m) < sigma_lb", alpha * std::sqrt(double(m)), sigma_lb);
  }
  if (!(r_min > 0.0)) Violation("r_min > 0", r_min, 0.0);
  if (!(Eps2() > 0.0)) Violation("eps2 > 0", Eps2(), 0.0);
  if (!(chunk > 0.0)) Violation("chunk > 0", chunk, 0.0);
  if (!(delta_sep > 0.0)) Violation("delta_sep > 0", delta_sep, 0.0);
  if (x_start) {
    if (x_start->size() != m) Violation("x_start has m entries", x_start->size(), m);
    if (std::abs(x_start->sum() - 1.0) > 1e-9) Violation("sum(x_start) = 1", x_start->sum(), 1);
    if (x_start->minCoeff() < gamma) Violation("x_start >= gamma", x_start->minCoeff(), gamma);
  }
}

OptParams LseConfig::ToOptParams() const {
  OptParams p;
  p.eps = eps;
  p.delta = delta;
  p.alpha = alpha;
  p.gamma = gamma;
  p.sigma_lb = sigma_lb;
  p.r_min = r_min;
  p.chunk = chunk;
  p.search = search;
  p.search.delta_sep = delta_sep;
  return p;
}

nlohmann::json LseConfig::ToJson() const {
  nlohmann::json j = {{"eps", eps},
                      {"delta", delta},
                      {"alpha", alpha},
                      {"gamma", gamma},
                      {"sigma_lb", sigma_lb},
                      {"r_min", r_min},
                      {"eps2", Eps2()},
                      {"eps2_choice", eps2 > 0.0 ? "explicit" : "eps*delta"},
                      {"c_alpha", c_alpha},
                      {"delta_sep", delta_sep},
                      {"chunk", chunk},
                      {"max_outer", max_outer},
                      {"burn_in_cap", burn_in_cap},
                      {"neighbor_samples", neighbor_samples},
                      {"search",
                       {{"samples", search.samples},
                        {"face_margin", search.face_margin},
                        {"kappa", search.kappa},
                        {"eta_const", search.eta_const},
                        {"cluster_const", search.cluster_const},
                        {"alpha_min_frac", search.alpha_min_frac}}}};
  j["x_start"] = x_start ? VectorJson(*x_start) : nlohmann::json(nullptr);
  return j;
}

std::uint64_t BurnIn(Session& session, double alpha, std::uint64_t cap) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  const Learner& learner = session.learner();
  const double target = alpha / 2;
  auto done = [&](std::uint64_t t) { return learner.Mu(t) <= target; };
  std::uint64_t hi = 1;
  while (!done(hi)) {
    if (hi > cap) {
      throw Error(ErrorCode::kBurnInBudgetExceeded,
                  "mu(t) stays above alpha / 2 for more than " + std::to_string(cap) +
                      " rounds");
    }
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // done(lo) is false unless lo == 0
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (done(mid)) hi = mid; else lo = mid;
  }
  if (hi > cap) {
    throw Error(ErrorCode::kBurnInBudgetExceeded,
                "burn-in needs " + std::to_string(hi) + " rounds");
  }
  const int m = session.game().m();
  const Vector uniform = Vector::Constant(m, 1.0 / m);
  const Phase saved = session.phase();
  session.set_phase(Phase::kBurnIn);
  if (session.t() < hi) session.PlayRepeated(uniform, hi - session.t());
  session.set_phase(saved);
  return hi;
}

Vector StepInto(Session& session, const HyperplaneEstimate& h_hat, int target_action,
                double alpha, double gamma, double delta_sep) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  const int m = session.game().m();
  if (h_hat.normal.size() != m) throw Error(ErrorCode::kInvalidArgument, "normal dimension");
  const Vector from = session.avg();
  double margin = 2.0 * alpha;
  for (int attempt = 0; attempt < 3; ++attempt, margin *= 2.0) {
    HalfspaceSet region(m, gamma);
    region.Add(-h_hat.normal, margin);
    const Vector landing = ProjectOntoRegion(from, region);
    if (landing.size() == 0) break;
    DriveAverageTo(session, landing);
    if (BrOracle(session, alpha, delta_sep) == target_action) return landing;
  }
  throw Error(ErrorCode::kCrossingFailed,
              "could not confirm action " + std::to_string(target_action));
}

int NeighborSampleCount(int m) {
  return static_cast<int>(std::ceil(2.0 * m * m * std::log(m + 1.0)));
}

LseResult FindLse(Session& session, const LseConfig& config) {
  const GameInstance& game = session.game();
  const int m = game.m(), n = game.n();
  config.Validate(m, n);
  const double eps2 = config.Eps2();
  const OptParams op = config.ToOptParams();
  SearchParams sp = op.search;
  sp.gamma = config.gamma;
  sp.sigma_lb = config.sigma_lb;
  sp.strict_radius = false;
  sp.samples = config.neighbor_samples > 0 ? config.neighbor_samples : NeighborSampleCount(m);

  LseResult out;
  out.slack = OptimizationSlack(config.alpha, config.gamma, config.sigma_lb,
                                config.r_min, m);
  BurnIn(session, config.alpha, config.burn_in_cap);
  session.set_phase(Phase::kOther);
  Vector x_start = config.x_start ? *config.x_start : session.avg();
  DriveAverageTo(session, x_start);
  int b = BrOracle(session, config.alpha, config.delta_sep);

  const int cap = config.max_outer > 0 ? config.max_outer : n;
  double best_value = -std::numeric_limits<double>::infinity();
  double prev_value = -std::numeric_limits<double>::infinity();
  bool finished = false;
  try {
    while (out.outer_iterations < cap) {
      ++out.outer_iterations;
      out.visited.push_back(b);
      const OptimizeResult opt = OptimizeWithinPolytope(session, b, x_start, op);
      const Vector& x = opt.x_star;
      DriveAverageTo(session, x);
      const double value = ExpectedUtility(game, x, b, Player::kPrincipal);
      if (value < prev_value + eps2 - out.slack) out.monotone = false;
      prev_value = value;

      const SearchResult found = SearchForPolytopes(session, x, config.alpha, config.delta, sp);
      std::vector<NeighborReport> neighbors;
      for (const HyperplaneEstimate& e : found.found) {
        neighbors.push_back({e.outside_action, ExpectedUtility(game, x, e.outside_action,
                                                               Player::kPrincipal)});
      }
      if (value > best_value) {
        best_value = value;
        out.x_star = x;
        out.b_star = b;
        out.u1 = value;
        out.neighbors = neighbors;
      }
      // Improving neighbors, best first; polytopes already left are skipped.
      std::vector<int> order;
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const bool seen = std::find(out.visited.begin(), out.visited.end(),
                                    neighbors[i].action) != out.visited.end();
        if (!seen && neighbors[i].u1 >= value + eps2) order.push_back(static_cast<int>(i));
      }
      std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
        return neighbors[a].u1 > neighbors[c].u1;
      });
      if (order.empty()) {
        bool improving = false;
        for (const NeighborReport& nb : neighbors) improving |= nb.u1 >= value + eps2;
        // Certify the current point even if it is not the best seen so far.
        out.x_star = x;
        out.b_star = b;
        out.u1 = value;
        out.neighbors = neighbors;
        out.certified = !improving;
        finished = true;
        break;
      }
      bool moved = false;
      for (int i : order) {
        try {
          x_start = StepInto(session, found.found[i], neighbors[i].action, config.alpha,
                             config.gamma, config.delta_sep);
          b = neighbors[i].action;
          moved = true;
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kCrossingFailed) throw;
          DriveAverageTo(session, x);
        }
      }
      if (!moved) {
        finished = true;
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExhausted) throw;
    out.budget_exhausted = true;
    out.certified = false;
    finished = true;
  }
  out.capped = !finished;
  out.rounds_total = session.t();
  out.rounds_burn_in = session.rounds_in(Phase::kBurnIn);
  out.rounds_improving = session.rounds_in(Phase::kImproving);
  out.rounds_other = session.rounds_in(Phase::kOther);
  return out;
}

nlohmann::json LseResultToJson(const LseResult& r, const LseConfig& config) {
  nlohmann::json neighbors = nlohmann::json::array();
  for (const NeighborReport& nb : r.neighbors) {
    neighbors.push_back({{"action", nb.action}, {"u1", nb.u1}});
  }
  return {{"x_star", VectorJson(r.x_star)},
          {"b_star", r.b_star},
          {"u1", r.u1},
          {"certified", r.certified},
          {"capped", r.capped},
          {"budget_exhausted", r.budget_exhausted},
          {"monotone", r.monotone},
          {"neighbors", neighbors},
          {"visited", r.visited},
          {"outer_iterations", r.outer_iterations},
          {"rounds_total", r.rounds_total},
          {"rounds_burn_in", r.rounds_burn_in},
          {"rounds_improving", r.rounds_improving},
          {"rounds_other", r.rounds_other},
          {"slack", r.slack},
          {"config", config.ToJson()}};
}

}  // namespace lse
