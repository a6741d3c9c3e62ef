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

#include "lse/opt_within.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lse/error.h"

namespace lse {
namespace {

class PhaseScope {
 public:
  PhaseScope(Session& s, Phase p) : session_(s), saved_(s.phase()) { s.set_phase(p); }
  ~PhaseScope() { session_.set_phase(saved_); }

 private:
  Session& session_;
  Phase saved_;
};

// Moves the average along the segment toward `target` until it is at least
// as far from its starting point as `through`. Every round plays the target
// or the farthest floor-feasible point beyond it, never a point short of it.
void AdvanceToward(Session& session, const Vector& target, const Vector& through) {
  const Vector a0 = session.avg();
  const double want = L1Distance(through, a0);
  const Vector dir = target - a0;
  double s_max = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dir.size(); ++i) {
    if (dir[i] < 0.0) s_max = std::min(s_max, (a0[i] - session.gamma()) / -dir[i]);
  }
  s_max = std::max(s_max, 1.0);
  Vector far = a0 + s_max * dir;
  far = far.cwiseMax(session.gamma());
  far /= far.sum();
  for (int guard = 0; guard < 10000; ++guard) {
    const Vector avg = session.avg();
    const double gap = want - L1Distance(avg, a0);
    if (gap <= 1e-12) return;
    const double reach = L1Distance(far, avg);
    const double lambda = gap / reach;
    const double t = static_cast<double>(session.t());
    const double k = lambda < 1.0 ? std::floor(lambda * t / (1.0 - lambda)) : 0.0;
    if (!(k < 4e18)) throw Error(ErrorCode::kBudgetExhausted, "improvement move too long");
    if (k >= 1.0) {
      session.PlayRepeated(far, static_cast<std::uint64_t>(k));
    } else {
      session.PlayRepeated(target, 1);
    }
  }
}

}  // namespace

double OptimizationSlack(double alpha, double gamma, double sigma_lb, double r_min,
                         int m) {
  const double denom = sigma_lb - alpha * std::sqrt(static_cast<double>(m));
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::kConfigViolation, "alpha * sqrt(m) < sigma_lb violated");
  }
  if (!(r_min > 0.0)) throw Error(ErrorCode::kConfigViolation, "r_min > 0 violated");
  return 2.0 * alpha * m / denom + 2.0 * gamma / r_min;
}

OptimizeResult OptimizeWithinPolytope(Session& session, int b, const Vector& x_start,
                                      const OptParams& params) {
  const GameInstance& game = session.game();
  const int m = game.m(), n = game.n();
  if (b < 0 || b >= n) throw Error(ErrorCode::kInvalidArgument, "action out of range");
  if (x_start.size() != m) throw Error(ErrorCode::kInvalidArgument, "x_start dimension");
  if (!(params.alpha > 0.0) || !(params.eps > 0.0) || !(params.delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps, delta and alpha must be > 0");
  }
  if (!(params.chunk > 0.0)) throw Error(ErrorCode::kInvalidArgument, "chunk must be > 0");
  const double ed = params.eps * params.delta;
  const double alpha = params.alpha;
  SearchParams sp = params.search;
  sp.gamma = params.gamma;
  sp.sigma_lb = params.sigma_lb;
  sp.strict_radius = true;
  const double sep = sp.delta_sep;
  const Vector obj = game.u1().col(b);
  auto value = [&](const Vector& x) { return obj.dot(x); };

  OptimizeResult out;
  PolytopeSearchState& st = out.state;
  st.action = b;
  st.estimated = HalfspaceSet(m, params.gamma);
  st.slack = OptimizationSlack(alpha, params.gamma, params.sigma_lb, params.r_min, m);
  std::vector<bool> known(n, false);
  known[b] = true;
  const int cap = params.max_iterations > 0 ? params.max_iterations : 4 * n + 4;

  Vector start = x_start;
  {
    PhaseScope scope(session, Phase::kOther);
    DriveAverageTo(session, start);
    const int label = BrOracle(session, alpha, sep);
    if (label != b) {
      throw Error(ErrorCode::kInteriorViolation,
                  "x_start is answered with action " + std::to_string(label) +
                      ", not " + std::to_string(b));
    }
  }
  while (true) {
    if (st.iterations >= cap) {
      st.capped = true;
      break;
    }
    ++st.iterations;
    const LpResult lp = LpMaximize(obj, st.estimated);
    if (!lp.feasible) {
      st.empty = true;
      break;
    }
    const double gap = value(lp.x) - value(start);
    if (gap < ed) break;
    // Stop where the remaining gain drops just below eps * delta, so that
    // every round of the move still gains at least eps * delta / t.
    const double lambda = (gap - ed * (1.0 - 1e-9)) / gap;
    const Vector stop = start + lambda * (lp.x - start);
    const double len = L1Distance(start, stop);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / params.chunk)));
    Vector prev = start;
    bool crossed = false;
    for (int k = 1; k <= pieces; ++k) {
      const Vector next =
          k == pieces ? stop : Vector(start + (double(k) / pieces) * (stop - start));
      if (L1Distance(session.avg(), start) >= L1Distance(next, start)) continue;
      const double before = value(session.avg());
      const std::uint64_t t0 = session.t();
      {
        PhaseScope scope(session, Phase::kImproving);
        AdvanceToward(session, lp.x, next);
      }
      const std::uint64_t moved = session.t() - t0;
      const Vector reached = session.avg();
      const std::uint64_t t_end = session.t();
      int label;
      {
        PhaseScope scope(session, Phase::kOther);
        label = BrOracle(session, alpha, sep);
      }
      if (label == b) {
        st.improvement_log.push_back(
            {t_end, moved, before, value(session.avg()), st.iterations});
        prev = session.avg();
        continue;
      }
      // Left P_b during this piece: those rounds were not improvement rounds.
      session.ReassignRounds(Phase::kImproving, Phase::kOther, moved);
      crossed = true;
      ++st.boundary_hits;
      PhaseScope scope(session, Phase::kOther);
      BoundarySearchResult bs;
      try {
        bs = BinarySearchBoundary(session, prev, reached, alpha / 4, sep);
      } catch (const Error& e) {
        // Both ends now report the same action: a noisy label, not a boundary.
        if (e.code() != ErrorCode::kNoCrossingDetected) throw;
        DriveAverageTo(session, prev);
        start = prev;
        break;
      }
      const Vector near = bs.b_near == b ? bs.x_near : prev;
      const SearchResult found = SearchForPolytopes(session, near, alpha, alpha / 2, sp);
      int added = 0;
      for (const HyperplaneEstimate& e : found.found) {
        if (known[e.outside_action]) continue;
        known[e.outside_action] = true;
        st.estimated.Add(e.normal, alpha);
        st.discovered.push_back(e);
        ++added;
      }
      if (added == 0) {
        st.stalled = true;
        DriveAverageTo(session, prev);
        start = prev;
        break;
      }
      const Vector projected = ProjectOntoRegion(near, st.estimated);
      if (projected.size() == 0) {
        st.empty = true;
        DriveAverageTo(session, prev);
        start = prev;
        break;
      }
      start = projected.cwiseMax(params.gamma);
      start /= start.sum();
      DriveAverageTo(session, start);
      break;
    }
    if (st.stalled || st.empty) break;
    if (!crossed) start = session.avg();
  }
  out.x_star = start;
  st.x_current = session.avg();
  return out;
}

}  // namespace lse
