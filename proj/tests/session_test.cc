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

#include "lse/session.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lse/error.h"

namespace lse {
namespace {

GameInstance Crossing() {
  Matrix u1(2, 2), u2(2, 2);
  u1 << 0, 1, 1, 0;
  u2 << 0.9, 0.1, 0.2, 0.8;
  return GameInstance(u1, u2);
}

Vector V(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double e : v) out[i++] = e;
  return out;
}

Session FpSession(const GameInstance& g, double gamma = 1e-3) {
  SessionOptions opts;
  opts.gamma = gamma;
  return Session(g, Learner(LearnerKind::kFictitiousPlay, g.n(), 0), 1, opts);
}

TEST(MoveOneStepTest, HandExample) {
  Vector x = MoveOneStep(V({0.5, 0.5}), 4, V({1, 0}), 0.25);
  EXPECT_NEAR((x - V({0.625, 0.375})).norm(), 0.0, 1e-15);
  Vector next = (3 * V({0.5, 0.5}) + x) / 4;
  EXPECT_NEAR((next - V({0.53125, 0.46875})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(L1Distance(next, V({0.5, 0.5})), 0.0625, 1e-15);
}

TEST(MoveOneStepTest, Extremes) {
  const Vector avg = V({0.3, 0.7});
  EXPECT_EQ(MoveOneStep(avg, 3, V({1, 0}), 0.0), avg);
  EXPECT_EQ(MoveOneStep(avg, 3, V({1, 0}), 1.4), V({1, 0}));
  EXPECT_THROW(MoveOneStep(avg, 3, V({1, 0}), 1.5), Error);
  EXPECT_THROW(MoveOneStep(avg, 3, avg, 0.1), Error);
}

TEST(MoveOneStepTest, AverageShiftIsEtaOverT) {
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> tdist(1, 100000);
  for (int trial = 0; trial < 10000; ++trial) {
    Vector avg(4), u(4);
    for (int i = 0; i < 4; ++i) {
      avg[i] = e(rng);
      u[i] = e(rng);
    }
    avg /= avg.sum();
    u /= u.sum();
    const std::uint64_t t = tdist(rng);
    const double eta = unif(rng) * L1Distance(u, avg);
    const Vector x = MoveOneStep(avg, t, u, eta);
    const Vector next = avg + (x - avg) / static_cast<double>(t);
    ASSERT_NEAR(L1Distance(next, avg), eta / t, 1e-12);
  }
}

TEST(SessionTest, PlayRoundUpdatesAverage) {
  GameInstance g = Crossing();
  Session s = FpSession(g, 0.1);
  s.PlayRound(V({0.5, 0.5}));
  EXPECT_NEAR((s.avg() - V({0.5, 0.5})).norm(), 0.0, 1e-15);
  Session s2 = FpSession(g, 0.1);
  s2.PlayRound(V({0.9, 0.1}));
  s2.PlayRound(V({0.1, 0.9}));
  EXPECT_NEAR((s2.avg() - V({0.5, 0.5})).norm(), 0.0, 1e-15);
  EXPECT_THROW(s2.PlayRound(V({0.95, 0.05})), Error);
}

TEST(SessionTest, FictitiousPlayAnswersPreviousAverage) {
  GameInstance g = Crossing();
  Session s = FpSession(g);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  s.PlayRound(V({0.5, 0.5}));
  for (int i = 0; i < 500; ++i) {
    const double a = unif(rng);
    const Vector prev = s.avg();
    const int y = s.PlayRound(V({a, 1 - a}));
    ASSERT_TRUE(BestResponses(g, prev).contains(y));
  }
}

TEST(DriveTest, NoMoveNeeded) {
  Session s = FpSession(Crossing(), 0.1);
  s.PlayRound(V({0.5, 0.5}));
  EXPECT_EQ(DriveAverageTo(s, V({0.5, 0.5})).rounds, 0u);
}

TEST(DriveTest, RoundBoundAndPostcondition) {
  Session s = FpSession(Crossing(), 0.1);
  s.PlayRepeated(V({0.5, 0.5}), 10);
  DriveResult r = DriveAverageTo(s, V({0.6, 0.4}));
  EXPECT_TRUE(r.reached);
  EXPECT_LE(r.rounds, 21u);
  EXPECT_LE(L1Distance(s.avg(), V({0.6, 0.4})), 1e-9);
}

TEST(DriveTest, LargeRoundCountsStayExact) {
  GameInstance g(Matrix::Zero(3, 2), Matrix::Identity(3, 2) * 0.5 + Matrix::Constant(3, 2, 0.2));
  Session s = FpSession(g);
  s.PlayRepeated(V({0.2, 0.3, 0.5}), 1000000000000ull);
  DriveResult r = DriveAverageTo(s, V({0.6, 0.2, 0.2}));
  EXPECT_TRUE(r.reached);
  EXPECT_LE(L1Distance(s.avg(), V({0.6, 0.2, 0.2})), 1e-9);
  EXPECT_LE((s.RecomputeAverage() - s.avg()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DriveTest, PartialProgressUnderCap) {
  Session s = FpSession(Crossing(), 0.01);
  s.PlayRepeated(V({0.5, 0.5}), 100);
  DriveResult r = DriveAverageTo(s, V({0.95, 0.05}), 5);
  EXPECT_FALSE(r.reached);
  EXPECT_EQ(r.rounds, 5u);
}

TEST(OracleTest, FictitiousPlayOneRoundAndAverageFixed) {
  Session s = FpSession(Crossing());
  s.PlayRepeated(V({0.8, 0.2}), 50);
  const Vector before = s.avg();
  const std::uint64_t t = s.t();
  EXPECT_EQ(BrOracle(s, 1e-3, 1.0), 0);
  EXPECT_EQ(s.t(), t + 1);
  EXPECT_LE((s.avg() - before).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OracleTest, MultiplicativeWeightsMatchesExactResponse) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> noise(0.0, 0.05);
  Matrix base(3, 3);
  base << 0.8, 0.3, 0.2, 0.2, 0.8, 0.3, 0.3, 0.2, 0.8;
  int agree = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    Matrix u2 = base;
    for (int i = 0; i < 9; ++i) u2(i / 3, i % 3) += noise(rng);
    GameInstance g(Matrix::Zero(3, 3), u2, true);
    Session s(g, Learner(LearnerKind::kMultiplicativeWeights, 3, trial), trial);
    // Interior point of some polytope with a clear agent margin.
    Vector x = V({0.7, 0.15, 0.15});
    std::rotate(x.data(), x.data() + trial % 3, x.data() + 3);
    s.PlayRepeated(Vector::Constant(3, 1.0 / 3), 2000);
    DriveAverageTo(s, x);
    const int y = BrOracle(s, 0.05, 1.0);
    if (y == BestResponses(g, x).lowest()) ++agree;
  }
  EXPECT_GE(agree, 0.99 * trials);
}

TEST(DetectTest, CrossingGame) {
  Session s = FpSession(Crossing());
  s.PlayRound(V({0.5, 0.5}));
  EXPECT_FALSE(DetectBrChange(s, V({0.8, 0.2}), V({0.8, 0.2}), 1e-3, 1.0));
  EXPECT_TRUE(DetectBrChange(s, V({0.8, 0.2}), V({0.2, 0.8}), 1e-3, 1.0));
  EXPECT_FALSE(DetectBrChange(s, V({0.8, 0.2}), V({0.6, 0.4}), 1e-3, 1.0));
}

TEST(BinarySearchTest, FindsAnalyticCrossing) {
  Session s = FpSession(Crossing());
  s.PlayRound(V({0.5, 0.5}));
  BoundarySearchResult r = BinarySearchBoundary(s, V({0.9, 0.1}), V({0.1, 0.9}), 1e-3, 1.0);
  EXPECT_EQ(r.b_near, 0);
  EXPECT_EQ(r.b_far, 1);
  EXPECT_LE(L1Distance(r.x_near, V({3.0 / 7, 4.0 / 7})), 1e-3);
  EXPECT_GE(r.x_near[0], 3.0 / 7);
  EXPECT_LE(L1Distance(s.avg(), r.x_near), 1e-9);
}

TEST(BinarySearchTest, ShortSegment) {
  Session s = FpSession(Crossing());
  s.PlayRound(V({0.5, 0.5}));
  const double alpha = 1e-3;
  const double c = 3.0 / 7;
  // l1 length of the segment is 2 alpha.
  BoundarySearchResult r = BinarySearchBoundary(
      s, V({c + alpha / 4, 1 - c - alpha / 4}), V({c - alpha / 4 * 3, 1 - c + alpha / 4 * 3}),
      alpha, 1.0);
  EXPECT_LE(r.halvings, 2);
  EXPECT_THROW(BinarySearchBoundary(s, V({0.9, 0.1}), V({0.8, 0.2}), alpha, 1.0), Error);
}

TEST(TranscriptTest, JsonLinesAndAverageInvariant) {
  Session s = FpSession(Crossing());
  s.PlayRound(V({0.5, 0.5}));
  DriveAverageTo(s, V({0.7, 0.3}));
  BrOracle(s, 1e-3, 1.0);
  EXPECT_LE((s.RecomputeAverage() - s.avg()).cwiseAbs().maxCoeff(), 1e-9);
  std::ostringstream out;
  s.WriteTranscript(out);
  std::istringstream in(out.str());
  std::string line;
  int explicit_rounds = 0;
  while (std::getline(in, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    ASSERT_TRUE(j.contains("t"));
    ASSERT_EQ(j["x"].size(), 2u);
    if (!j["y"].is_null()) {
      ++explicit_rounds;
      ASSERT_TRUE(j.contains("u1"));
    }
  }
  EXPECT_EQ(explicit_rounds, 2);
}

}  // namespace
}  // namespace lse
