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

#include "lse/lp.h"

#include <random>

#include <gtest/gtest.h>

namespace lse {
namespace {

TEST(LpTest, SmallMaximization) {
  // max 3a + 2b  s.t. a + b <= 4, a + 3b <= 6, a <= 3.
  LpProblem<double> lp;
  lp.c = {3, 2};
  lp.a_ub = {{1, 1}, {1, 3}, {1, 0}};
  lp.b_ub = {4, 6, 3};
  LpSolution<double> s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 11.0, 1e-12);
  EXPECT_NEAR(s.y[0], 3.0, 1e-12);
  EXPECT_NEAR(s.y[1], 1.0, 1e-12);
}

TEST(LpTest, ExactRationalVertex) {
  // max a + b s.t. 3a + b <= 1, a + 3b <= 1 -> (1/4, 1/4).
  LpProblem<mpq_class> lp;
  lp.c = {1, 1};
  lp.a_ub = {{3, 1}, {1, 3}};
  lp.b_ub = {1, 1};
  LpSolution<mpq_class> s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.y[0], mpq_class(1, 4));
  EXPECT_EQ(s.y[1], mpq_class(1, 4));
  EXPECT_EQ(s.value, mpq_class(1, 2));
}

TEST(LpTest, EqualityAndNegativeRhs) {
  // max -a s.t. a + b = 1, -a <= -0.25 (a >= 0.25).
  LpProblem<double> lp;
  lp.c = {-1, 0};
  lp.a_eq = {{1, 1}};
  lp.b_eq = {1};
  lp.a_ub = {{-1, 0}};
  lp.b_ub = {-0.25};
  LpSolution<double> s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.y[0], 0.25, 1e-12);
  EXPECT_NEAR(s.y[1], 0.75, 1e-12);
}

TEST(LpTest, InfeasibleAndUnbounded) {
  LpProblem<double> lp;
  lp.c = {1, 0};
  lp.a_eq = {{1, 1}};
  lp.b_eq = {1};
  lp.a_ub = {{-1, -1}};
  lp.b_ub = {-2};
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);

  LpProblem<double> un;
  un.c = {1, 1};
  un.a_ub = {{1, -1}};
  un.b_ub = {1};
  EXPECT_EQ(SolveLp(un).status, LpStatus::kUnbounded);
}

TEST(LpTest, RedundantEqualities) {
  LpProblem<mpq_class> lp;
  lp.c = {0, 1, 0};
  lp.a_eq = {{1, 1, 1}, {2, 2, 2}};
  lp.b_eq = {1, 2};
  LpSolution<mpq_class> s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.y[1], mpq_class(1));
}

TEST(LpTest, LexicographicTieBreak) {
  LpProblem<mpq_class> lp;
  lp.c = {0, 0, 0};
  lp.a_eq = {{1, 1, 1}};
  lp.b_eq = {1};
  LpSolution<mpq_class> s = SolveLpLexicographic(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.y, (std::vector<mpq_class>{0, 0, 1}));
  // Optimal face {a + b = 1} of max a + b: lexicographic pick is (0, 1).
  LpProblem<double> face;
  face.c = {1, 1};
  face.a_ub = {{1, 1}};
  face.b_ub = {1};
  LpSolution<double> f = SolveLpLexicographic(face);
  EXPECT_NEAR(f.y[0], 0.0, 1e-9);
  EXPECT_NEAR(f.y[1], 1.0, 1e-9);
}

TEST(LpTest, DoubleMatchesExactOnRandomProblems) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> rhs(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    LpProblem<double> d;
    LpProblem<mpq_class> q;
    const int nv = 3, nc = 4;
    for (int j = 0; j < nv; ++j) {
      const int c = coef(rng);
      d.c.push_back(c);
      q.c.push_back(c);
    }
    for (int i = 0; i < nc; ++i) {
      std::vector<double> rd;
      std::vector<mpq_class> rq;
      for (int j = 0; j < nv; ++j) {
        const int a = coef(rng);
        rd.push_back(a);
        rq.push_back(a);
      }
      // Keep the region bounded with a box row.
      d.a_ub.push_back(rd);
      q.a_ub.push_back(rq);
      const int b = rhs(rng) - 3;
      d.b_ub.push_back(b);
      q.b_ub.push_back(b);
    }
    d.a_ub.push_back({1, 1, 1});
    q.a_ub.push_back({1, 1, 1});
    d.b_ub.push_back(10);
    q.b_ub.push_back(10);
    LpSolution<double> sd = SolveLp(d);
    LpSolution<mpq_class> sq = SolveLp(q);
    ASSERT_EQ(sd.status, sq.status);
    if (sq.status == LpStatus::kOptimal) {
      EXPECT_NEAR(sd.value, sq.value.get_d(), 1e-9);
    }
  }
}

}  // namespace
}  // namespace lse
