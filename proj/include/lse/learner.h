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

#ifndef LSE_LEARNER_H_
#define LSE_LEARNER_H_

#include <cstdint>
#include <random>
#include <string>

#include "lse/game.h"

namespace lse {

enum class LearnerKind {
  kFictitiousPlay,
  kMultiplicativeWeights,
  kFollowThePerturbedLeader,
  kEpsilonGreedy,
};

const char* LearnerKindName(LearnerKind kind);
LearnerKind ParseLearnerKind(const std::string& name);

// Schedules, with t the index of the round being played:
//   MW:   rate_t = mw_rate_scale * sqrt(ln n / t),  mu_t = mu_scale * sqrt(ln n / t)
//   FTPL: exponential noise of scale ftpl_scale * sqrt(t),
//         mu_t = min(1, mu_scale * (1 + ln t) / sqrt(t))
//   EG:   explore_t = min(1, eg_scale * t^{-1/3}),  mu_t = min(1, mu_scale * t^{-1/3})
// The mu constants are implementation choices.
struct LearnerParams {
  double mw_rate_scale = 1.0;
  double ftpl_scale = 1.0;
  double eg_scale = 1.0;
  double mu_scale = 1.0;
};

// A mean-based agent with full-information feedback: after every round it
// adds U2(x_t, b) to the cumulative reward of every action b.
class Learner {
 public:
  Learner(LearnerKind kind, int num_actions, std::uint64_t rng_seed,
          LearnerParams params = {});

  LearnerKind kind() const { return kind_; }
  int num_actions() const { return static_cast<int>(cum_rewards_.size()); }
  std::uint64_t rounds() const { return t_; }
  const Vector& cum_rewards() const { return cum_rewards_; }
  const LearnerParams& params() const { return params_; }
  std::uint64_t rng_seed() const { return rng_seed_; }

  // Chooses this round's action from the history so far, then absorbs x_t.
  int Step(const GameInstance& game, const Vector& x_t);

  // Absorbs `count` rounds of x without materializing the agent's actions.
  // The principal never observes those actions; no randomness is consumed.
  void Observe(const GameInstance& game, const Vector& x, std::uint64_t count);

  // Mean-based slack for the round with index t (t >= 1).
  double Mu(std::uint64_t t) const;

  // Average reward of action b over the rounds seen so far.
  double AvgReward(int b) const;

  // Action the learner would choose next, ignoring randomization; for
  // fictitious play this is exactly the next action.
  int Leader() const;

 private:
  int SampleAction();

  LearnerKind kind_;
  LearnerParams params_;
  Vector cum_rewards_;
  std::uint64_t t_ = 0;
  std::uint64_t rng_seed_;
  std::mt19937_64 rng_;
};

}  // namespace lse

#endif  // LSE_LEARNER_H_
