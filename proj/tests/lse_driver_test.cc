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

#include <cmath>

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

Session MakeSession(const GameInstance& g, LearnerKind kind, std::uint64_t seed,
                    double gamma = 1e-3) {
  SessionOptions opts;
  opts.gamma = gamma / 2;
  opts.record_history = false;
  return Session(g, Learner(kind, g.n(), seed), seed, opts);
}

GameInstance Crossing() {
  Matrix u1(2, 2), u2(2, 2);
  u1 << 0, 1, 1, 0;
  u2 << 0.9, 0.1, 0.2, 0.8;
  return GameInstance(u1, u2);
}

TEST(BurnInTest, Lengths) {
  const GameInstance g = AnalyticFixture("tripoint_3");
  Session fp = MakeSession(g, LearnerKind::kFictitiousPlay, 0);
  EXPECT_EQ(BurnIn(fp, 0.2), 1u);
  EXPECT_EQ(fp.t(), 1u);
  EXPECT_EQ(fp.rounds_in(Phase::kBurnIn), 1u);
  Session mw = MakeSession(g, LearnerKind::kMultiplicativeWeights, 0);
  EXPECT_EQ(BurnIn(mw, 0.2), 110u);
  EXPECT_EQ(mw.t(), 110u);
  EXPECT_NEAR(mw.avg().sum(), 1.0, 1e-12);
  Session ftpl = MakeSession(g, LearnerKind::kFollowThePerturbedLeader, 0);
  try {
    BurnIn(ftpl, 1e-4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBurnInBudgetExceeded);
  }
}

TEST(ConfigTest, NamesViolatedInequality) {
  LseConfig c;
  c.sigma_lb = 0.05;
  c.alpha = 0.01;
  try {
    c.Validate(3, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigViolation);
    EXPECT_NE(std::string(e.what()).find("alpha <= c_alpha * sigma_lb / (m^2 n)"),
              std::string::npos);
  }
  c.alpha = 1e-3;
  EXPECT_NO_THROW(c.Validate(3, 3));
  c.gamma = 0.4;
  EXPECT_THROW(c.Validate(3, 3), Error);
  c.gamma = 1e-3;
  c.eps = 0.0;
  EXPECT_THROW(c.Validate(3, 3), Error);
  EXPECT_DOUBLE_EQ(LseConfig().Eps2(), 0.005);
}

TEST(StepIntoTest, CrossesTheTwoByTwoBoundary) {
  const GameInstance g = Crossing();
  const double alpha = 1e-3;
  Session s = MakeSession(g, LearnerKind::kFictitiousPlay, 2);
  s.PlayRound(V({0.5, 0.5}));
  DriveAverageTo(s, V({3.0 / 7 + 1e-3, 4.0 / 7 - 1e-3}));
  const Vector land = StepInto(s, Hyperplane(g, 0, 1), 1, alpha, 1e-3);
  EXPECT_LE(land[0], 3.0 / 7 - alpha / std::sqrt(2.0));
  EXPECT_EQ(BestResponses(g, land).lowest(), 1);
  EXPECT_GE(-Hyperplane(g, 0, 1).normal.dot(land), alpha);
  EXPECT_THROW(StepInto(s, Hyperplane(g, 0, 1), 1, 0.0, 1e-3), Error);
}

TEST(StepIntoTest, FailsWhenTargetNeverAnswers) {
  const GameInstance g = AnalyticFixture("tripoint_3");
  Session s = MakeSession(g, LearnerKind::kFictitiousPlay, 2);
  s.PlayRound(V({0.5, 0.25, 0.25}));
  // Crossing toward action 1 lands in action 1's region, never action 2's.
  try {
    StepInto(s, Hyperplane(g, 0, 1), 2, 1e-3, 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCrossingFailed);
  }
}

TEST(FindLseTest, DominantColumn) {
  const GameInstance g = AnalyticFixture("dominant");
  LseConfig c;
  c.sigma_lb = 0.1;
  Session s = MakeSession(g, LearnerKind::kFictitiousPlay, 1);
  const LseResult r = FindLse(s, c);
  EXPECT_TRUE(r.certified);
  EXPECT_TRUE(r.neighbors.empty());
  EXPECT_EQ(r.b_star, 0);
  EXPECT_GE(r.u1, 1.0 - 2 * c.gamma - c.eps * c.delta);
  EXPECT_EQ(r.rounds_total, r.rounds_burn_in + r.rounds_improving + r.rounds_other);
}

TEST(FindLseTest, CrossingEscapesToTheBetterPolytope) {
  const GameInstance g = Crossing();
  const StackelbergSolution opt = ExactStackelberg(g);
  EXPECT_NEAR(opt.value, 4.0 / 7, 1e-9);
  EXPECT_EQ(opt.b, 0);
  for (int seed = 0; seed < 10; ++seed) {
    LseConfig c;
    c.sigma_lb = 0.5;
    c.x_start = V({0.2, 0.8});
    Session s = MakeSession(g, LearnerKind::kFictitiousPlay, seed);
    const LseResult r = FindLse(s, c);
    ASSERT_TRUE(r.certified) << seed;
    EXPECT_EQ(r.visited, (std::vector<int>{1, 0}));
    EXPECT_EQ(r.b_star, 0);
    EXPECT_GE(r.u1, opt.value - c.eps * c.delta - r.slack);
    EXPECT_LE(r.u1, opt.value + 1e-9);
    EXPECT_TRUE(r.monotone);
    for (const NeighborReport& nb : r.neighbors) EXPECT_LT(nb.u1, r.u1 + c.Eps2());
  }
}

TEST(FindLseTest, CrossingStartingInTheBestPolytopeStays) {
  const GameInstance g = Crossing();
  LseConfig c;
  c.sigma_lb = 0.5;
  c.x_start = V({0.8, 0.2});
  Session s = MakeSession(g, LearnerKind::kFictitiousPlay, 3);
  const LseResult r = FindLse(s, c);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.visited, std::vector<int>{0});
  EXPECT_NEAR(r.x_star[0], 3.0 / 7, 2e-3);
}

TEST(FindLseTest, SmoothedCertifiesAndNeverRevisits) {
  int certified = 0, runs = 0;
  for (int seed = 0; seed < 8; ++seed) {
    const GameInstance g = SmoothedInstance(3, 3, 0.05, seed);
    LseConfig c;
    c.sigma_lb = 0.05;
    c.alpha = 1e-3;
    Session s = MakeSession(g, LearnerKind::kFictitiousPlay, seed);
    const LseResult r = FindLse(s, c);
    ++runs;
    std::vector<int> v = r.visited;
    std::sort(v.begin(), v.end());
    EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end());
    const CertifyReport rep =
        CertifyLse(g, r.x_star, c.eps + r.slack / c.delta, c.delta, LpArithmetic::kDouble);
    if (r.certified && rep.certified) ++certified;
    EXPECT_LE(r.u1, ExactStackelberg(g).value + 1e-9);
  }
  EXPECT_GE(certified, runs - 1);
}

TEST(FindLseTest, SameSeedSameJson) {
  const GameInstance g = SmoothedInstance(3, 3, 0.05, 5);
  LseConfig c;
  std::string first;
  for (int k = 0; k < 2; ++k) {
    Session s = MakeSession(g, LearnerKind::kFictitiousPlay, 9);
    const std::string dump = LseResultToJson(FindLse(s, c), c).dump();
    if (k == 0) first = dump; else EXPECT_EQ(dump, first);
  }
}

}  // namespace
}  // namespace lse
