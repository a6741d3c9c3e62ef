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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lse/error.h"
#include "lse/instances.h"
#include "lse/verify.h"

namespace lse {
namespace {

Vector V(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double e : v) out[i++] = e;
  return out;
}

Session FpSession(const GameInstance& g, std::uint64_t seed, double gamma) {
  SessionOptions opts;
  opts.gamma = gamma / 2;
  opts.record_history = false;
  Session s(g, Learner(LearnerKind::kFictitiousPlay, g.n(), seed), seed, opts);
  s.PlayRound(Vector::Constant(g.m(), 1.0 / g.m()));
  return s;
}

// A point answered with b by a margin of at least `margin`.
Vector InteriorPoint(const GameInstance& g, int b, double margin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  for (int k = 0; k < 10000; ++k) {
    Vector x(g.m());
    for (int i = 0; i < g.m(); ++i) x[i] = e(rng);
    x /= x.sum();
    if (x.minCoeff() < 0.01) continue;
    const Vector pay = AgentPayoffs(g, x);
    bool ok = true;
    for (int c = 0; c < g.n(); ++c) ok = ok && (c == b || pay[b] - pay[c] >= margin);
    if (ok) return x;
  }
  return Vector();
}

void CheckLog(const PolytopeSearchState& st, double ed) {
  for (const ImprovementStep& step : st.improvement_log) {
    EXPECT_GE(step.after - step.before, ed / step.t_end - 1e-9);
  }
  for (std::size_t i = 1; i < st.improvement_log.size(); ++i) {
    if (st.improvement_log[i].iteration != st.improvement_log[i - 1].iteration) continue;
    EXPECT_GE(st.improvement_log[i].before, st.improvement_log[i - 1].after - 1e-12);
  }
}

TEST(OptimizeTest, DominantColumnReachesFlooredVertex) {
  const GameInstance g = AnalyticFixture("dominant");
  OptParams p;
  p.sigma_lb = 0.1;
  Session s = FpSession(g, 1, p.gamma);
  const OptimizeResult r = OptimizeWithinPolytope(s, 0, V({0.3, 0.3, 0.4}), p);
  const double best = 1.0 - 2 * p.gamma;
  EXPECT_GE(g.u1().col(0).dot(r.x_star), best - p.eps * p.delta);
  EXPECT_LE(g.u1().col(0).dot(r.x_star), best + 1e-12);
  EXPECT_EQ(r.state.boundary_hits, 0);
  EXPECT_TRUE(r.state.discovered.empty());
  CheckLog(r.state, p.eps * p.delta);
  EXPECT_FALSE(r.state.improvement_log.empty());
  EXPECT_GT(s.rounds_in(Phase::kImproving), 0u);
}

TEST(OptimizeTest, ImmediateTermination) {
  const GameInstance g = AnalyticFixture("dominant");
  OptParams p;
  p.sigma_lb = 0.1;
  Session s = FpSession(g, 1, p.gamma);
  const Vector x = V({1.0 - 2 * p.gamma - 0.001, p.gamma + 0.0005, p.gamma + 0.0005});
  const OptimizeResult r = OptimizeWithinPolytope(s, 0, x, p);
  EXPECT_EQ(r.x_star, x);
  EXPECT_EQ(r.state.iterations, 1);
  EXPECT_TRUE(r.state.improvement_log.empty());
}

TEST(OptimizeTest, CrossingPushesToBoundary) {
  // P_0 = {x1 >= 3/7}; U1(x, 0) = x2 is largest on the boundary.
  Matrix u1(2, 2), u2(2, 2);
  u1 << 0, 1, 1, 0;
  u2 << 0.9, 0.1, 0.2, 0.8;
  const GameInstance g(u1, u2);
  OptParams p;
  p.alpha = 1e-3;
  p.sigma_lb = 0.5;
  for (int seed = 0; seed < 10; ++seed) {
    Session s = FpSession(g, seed, p.gamma);
    const OptimizeResult r = OptimizeWithinPolytope(s, 0, V({0.8, 0.2}), p);
    EXPECT_GE(r.x_star[0], 3.0 / 7 - 1e-9);
    EXPECT_GE(r.x_star[1], 4.0 / 7 - p.eps * p.delta - r.state.slack);
    EXPECT_LE(r.state.boundary_hits, 1);
    ASSERT_EQ(r.state.discovered.size(), 1u);
    EXPECT_LE((r.state.discovered[0].normal - Hyperplane(g, 0, 1).normal).norm(), p.alpha);
    CheckLog(r.state, p.eps * p.delta);
  }
}

TEST(OptimizeTest, SmoothedGapAgainstExactOptimum) {
  int checked = 0;
  for (int seed = 0; seed < 12; ++seed) {
    const GameInstance g = SmoothedInstance(3, 3, 0.05, seed);
    const PolytopeCatalog cat = EnumeratePolytopes(g);
    const SingularReport sr = CheckSingularAssumption(g, 1e-4);
    if (sr.min_sigma < 1e-3) continue;
    int b = -1;
    for (int k = 0; k < g.n(); ++k) {
      if (cat.polytopes[k].nonempty && cat.polytopes[k].witness_floor > 0.05) b = k;
    }
    if (b < 0) continue;
    const Vector start = InteriorPoint(g, b, 0.01, seed);
    if (start.size() == 0) continue;
    OptParams p;
    p.sigma_lb = sr.min_sigma;
    p.alpha = std::min(1e-3, sr.min_sigma / 27);
    p.r_min = cat.polytopes[b].witness_floor;
    Session s = FpSession(g, seed, p.gamma);
    const OptimizeResult r = OptimizeWithinPolytope(s, b, start, p);
    EXPECT_TRUE(cat.polytopes[b].region.Contains(r.x_star, 1e-9)) << seed;
    EXPECT_GE(g.u1().col(b).dot(r.x_star),
              cat.polytopes[b].opt_value - p.eps * p.delta - r.state.slack)
        << seed;
    EXPECT_LE(static_cast<int>(r.state.discovered.size()), g.n() - 1);
    for (const HyperplaneEstimate& e : r.state.discovered) {
      EXPECT_LE((e.normal - Hyperplane(g, b, e.outside_action).normal).norm(), p.alpha)
          << seed;
    }
    CheckLog(r.state, p.eps * p.delta);
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(OptimizeTest, RejectsStartOutsidePolytope) {
  Matrix u1(2, 2), u2(2, 2);
  u1 << 0, 1, 1, 0;
  u2 << 0.9, 0.1, 0.2, 0.8;
  const GameInstance g(u1, u2);
  OptParams p;
  p.sigma_lb = 0.5;
  Session s = FpSession(g, 0, p.gamma);
  EXPECT_THROW(OptimizeWithinPolytope(s, 0, V({0.2, 0.8}), p), Error);
}

TEST(OptimizeTest, SlackFormula) {
  EXPECT_NEAR(OptimizationSlack(0.01, 0.001, 0.5, 0.1, 3),
              0.06 / (0.5 - 0.01 * std::sqrt(3.0)) + 0.02, 1e-15);
  EXPECT_THROW(OptimizationSlack(0.5, 0.001, 0.5, 0.1, 3), Error);
}

}  // namespace
}  // namespace lse
