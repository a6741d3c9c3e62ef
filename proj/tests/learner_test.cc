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

#include "lse/learner.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lse/error.h"

namespace lse {
namespace {

GameInstance Crossing() {
  Matrix u1 = Matrix::Zero(2, 2), u2(2, 2);
  u2 << 0.9, 0.1, 0.2, 0.8;
  return GameInstance(u1, u2);
}

TEST(LearnerTest, FictitiousPlayEmptyHistoryPicksLowest) {
  GameInstance g = Crossing();
  Learner fp(LearnerKind::kFictitiousPlay, 2, 1);
  EXPECT_EQ(fp.Step(g, Vector::Unit(2, 1)), 0);
}

TEST(LearnerTest, FictitiousPlayFollowsCumulativeRewards) {
  GameInstance g = Crossing();
  Learner fp(LearnerKind::kFictitiousPlay, 2, 1);
  fp.Step(g, Vector::Unit(2, 0));
  EXPECT_NEAR(fp.cum_rewards()[0], 0.9, 1e-15);
  EXPECT_NEAR(fp.cum_rewards()[1], 0.1, 1e-15);
  EXPECT_EQ(fp.Step(g, Vector::Unit(2, 1)), 0);
}

TEST(LearnerTest, AverageReward) {
  GameInstance g = Crossing();
  Learner fp(LearnerKind::kFictitiousPlay, 2, 1);
  EXPECT_THROW(fp.AvgReward(0), Error);
  fp.Step(g, Vector::Unit(2, 0));
  EXPECT_DOUBLE_EQ(fp.AvgReward(0), 0.9);
  fp.Step(g, Vector::Unit(2, 1));
  EXPECT_NEAR(fp.AvgReward(0), 0.55, 1e-15);
  Learner rep(LearnerKind::kFictitiousPlay, 2, 1);
  Vector x(2);
  x << 0.3, 0.7;
  for (int t = 0; t < 9; ++t) rep.Step(g, x);
  EXPECT_NEAR(rep.AvgReward(1), 0.3 * 0.1 + 0.7 * 0.8, 1e-14);
}

TEST(LearnerTest, ObserveMatchesRepeatedSteps) {
  GameInstance g = Crossing();
  Learner a(LearnerKind::kFictitiousPlay, 2, 1);
  Learner b(LearnerKind::kFictitiousPlay, 2, 1);
  Vector x(2);
  x << 0.25, 0.75;
  for (int t = 0; t < 40; ++t) a.Step(g, x);
  b.Observe(g, x, 40);
  EXPECT_EQ(a.rounds(), b.rounds());
  EXPECT_NEAR((a.cum_rewards() - b.cum_rewards()).norm(), 0.0, 1e-12);
}

TEST(LearnerTest, ZeroRateMultiplicativeWeightsIsUniform) {
  Matrix u2(2, 3);
  u2 << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0;
  GameInstance g(Matrix::Zero(2, 3), u2);
  LearnerParams params;
  params.mw_rate_scale = 0.0;
  Learner mw(LearnerKind::kMultiplicativeWeights, 3, 42, params);
  std::vector<int> counts(3, 0);
  const int rounds = 30000;
  for (int t = 0; t < rounds; ++t) ++counts[mw.Step(g, Vector::Unit(2, 0))];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / rounds, 1.0 / 3.0, 0.015);
}

TEST(LearnerTest, MuSchedules) {
  Learner fp(LearnerKind::kFictitiousPlay, 3, 1);
  Learner mw(LearnerKind::kMultiplicativeWeights, 3, 1);
  for (std::uint64_t t : {1ull, 7ull, 1000ull}) {
    EXPECT_EQ(fp.Mu(t), 0.0);
    EXPECT_NEAR(mw.Mu(4 * t), 0.5 * mw.Mu(t), 1e-15);
  }
  // Burn-in inversion for alpha = 0.2: first t with mu_t <= 0.1.
  std::uint64_t t0 = 1;
  while (mw.Mu(t0) > 0.1) ++t0;
  EXPECT_EQ(t0, static_cast<std::uint64_t>(std::ceil(100.0 * std::log(3.0))));
  EXPECT_EQ(t0, 110u);
  EXPECT_THROW(mw.Mu(0), Error);
}

TEST(LearnerTest, MuIsNonincreasing) {
  for (LearnerKind kind : {LearnerKind::kFictitiousPlay, LearnerKind::kMultiplicativeWeights,
                           LearnerKind::kFollowThePerturbedLeader,
                           LearnerKind::kEpsilonGreedy}) {
    Learner l(kind, 4, 1);
    for (std::uint64_t t = 1; t < 20000; ++t) ASSERT_LE(l.Mu(t + 1), l.Mu(t)) << t;
  }
}

TEST(LearnerTest, SameSeedReplaysBitForBit) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Matrix u2(3, 3);
  for (int i = 0; i < 9; ++i) u2(i / 3, i % 3) = unif(rng);
  GameInstance g(Matrix::Zero(3, 3), u2);
  for (LearnerKind kind : {LearnerKind::kMultiplicativeWeights,
                           LearnerKind::kFollowThePerturbedLeader,
                           LearnerKind::kEpsilonGreedy}) {
    Learner a(kind, 3, 77), b(kind, 3, 77);
    for (int t = 0; t < 2000; ++t) {
      Vector x(3);
      x << unif(rng), unif(rng), unif(rng);
      x /= x.sum();
      ASSERT_EQ(a.Step(g, x), b.Step(g, x));
    }
  }
}

TEST(LearnerTest, FictitiousPlayIsExactBestResponse) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix u2(4, 5);
  for (int i = 0; i < 20; ++i) u2(i / 5, i % 5) = unif(rng);
  GameInstance g(Matrix::Zero(4, 5), u2);
  Learner fp(LearnerKind::kFictitiousPlay, 5, 0);
  Vector sum = Vector::Zero(4);
  for (int t = 1; t <= 3000; ++t) {
    Vector x(4);
    for (int i = 0; i < 4; ++i) x[i] = unif(rng);
    x /= x.sum();
    const int y = fp.Step(g, x);
    if (t > 1) {
      ASSERT_TRUE(BestResponses(g, sum / (t - 1)).contains(y));
    }
    sum += x;
  }
}

// Frequency of choosing an action whose average reward trails the leader by
// more than mu_t, compared against mu_t plus three binomial standard errors.
TEST(LearnerTest, MeanBasedViolationRate) {
  Matrix u2(2, 3);
  u2 << 0.6, 0.5, 0.1, 0.2, 0.45, 0.9;
  GameInstance g(Matrix::Zero(2, 3), u2);
  Vector x(2);
  x << 0.7, 0.3;
  for (LearnerKind kind : {LearnerKind::kMultiplicativeWeights,
                           LearnerKind::kFollowThePerturbedLeader,
                           LearnerKind::kEpsilonGreedy}) {
    Learner l(kind, 3, 5);
    int eligible = 0, violations = 0;
    double mu_sum = 0.0;
    for (std::uint64_t t = 1; t <= 10000; ++t) {
      const Vector cum = l.cum_rewards();
      const double mu = l.Mu(t);
      const int y = l.Step(g, x);
      if (t == 1) continue;
      const double avg_y = cum[y] / static_cast<double>(t - 1);
      const double top = cum.maxCoeff() / static_cast<double>(t - 1);
      ++eligible;
      mu_sum += mu;
      if (avg_y < top - mu) ++violations;
    }
    const double rate = static_cast<double>(violations) / eligible;
    const double mu_bar = mu_sum / eligible;
    EXPECT_LE(rate, mu_bar + 3.0 * std::sqrt(mu_bar * (1 - mu_bar) / eligible))
        << LearnerKindName(kind);
  }
}

}  // namespace
}  // namespace lse
