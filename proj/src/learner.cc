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

#include <algorithm>
#include <cmath>
#include <limits>

#include "lse/error.h"

namespace lse {

const char* LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kFictitiousPlay: return "fp";
    case LearnerKind::kMultiplicativeWeights: return "mw";
    case LearnerKind::kFollowThePerturbedLeader: return "ftpl";
    case LearnerKind::kEpsilonGreedy: return "egreedy";
  }
  return "unknown";
}

LearnerKind ParseLearnerKind(const std::string& name) {
  if (name == "fp") return LearnerKind::kFictitiousPlay;
  if (name == "mw") return LearnerKind::kMultiplicativeWeights;
  if (name == "ftpl") return LearnerKind::kFollowThePerturbedLeader;
  if (name == "egreedy") return LearnerKind::kEpsilonGreedy;
  throw Error(ErrorCode::kInvalidArgument, "unknown learner kind '" + name + "'");
}

Learner::Learner(LearnerKind kind, int num_actions, std::uint64_t rng_seed,
                 LearnerParams params)
    : kind_(kind),
      params_(params),
      cum_rewards_(Vector::Zero(num_actions)),
      rng_seed_(rng_seed),
      rng_(rng_seed) {
  if (num_actions < 2) {
    throw Error(ErrorCode::kInvalidArgument, "learner needs >= 2 actions");
  }
}

int Learner::Leader() const {
  int best = 0;
  for (int b = 1; b < num_actions(); ++b) {
    if (cum_rewards_[b] > cum_rewards_[best]) best = b;
  }
  return best;
}

int Learner::SampleAction() {
  const double round = static_cast<double>(t_ + 1);
  const int n = num_actions();
  switch (kind_) {
    case LearnerKind::kFictitiousPlay:
      return Leader();
    case LearnerKind::kMultiplicativeWeights: {
      const double rate = params_.mw_rate_scale * std::sqrt(std::log(n) / round);
      const double top = cum_rewards_.maxCoeff();
      Vector w(n);
      for (int b = 0; b < n; ++b) w[b] = std::exp(rate * (cum_rewards_[b] - top));
      std::uniform_real_distribution<double> unif(0.0, w.sum());
      double r = unif(rng_);
      for (int b = 0; b < n; ++b) {
        r -= w[b];
        if (r < 0.0) return b;
      }
      return n - 1;
    }
    case LearnerKind::kFollowThePerturbedLeader: {
      std::exponential_distribution<double> noise(1.0);
      const double scale = params_.ftpl_scale * std::sqrt(round);
      int best = 0;
      double best_value = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < n; ++b) {
        const double v = cum_rewards_[b] + scale * noise(rng_);
        if (v > best_value) {
          best_value = v;
          best = b;
        }
      }
      return best;
    }
    case LearnerKind::kEpsilonGreedy: {
      const double explore =
          std::min(1.0, params_.eg_scale * std::pow(round, -1.0 / 3.0));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      if (unif(rng_) < explore) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        return pick(rng_);
      }
      return Leader();
    }
  }
  return 0;
}

int Learner::Step(const GameInstance& game, const Vector& x_t) {
  if (game.n() != num_actions()) {
    throw Error(ErrorCode::kInvalidArgument, "learner/game action mismatch");
  }
  const int action = SampleAction();
  cum_rewards_ += AgentPayoffs(game, x_t);
  ++t_;
  return action;
}

void Learner::Observe(const GameInstance& game, const Vector& x,
                      std::uint64_t count) {
  if (game.n() != num_actions()) {
    throw Error(ErrorCode::kInvalidArgument, "learner/game action mismatch");
  }
  if (count == 0) return;
  cum_rewards_ += static_cast<double>(count) * AgentPayoffs(game, x);
  t_ += count;
}

double Learner::Mu(std::uint64_t t) const {
  if (t == 0) throw Error(ErrorCode::kInvalidArgument, "mu needs t >= 1");
  const double tt = static_cast<double>(t);
  switch (kind_) {
    case LearnerKind::kFictitiousPlay:
      return 0.0;
    case LearnerKind::kMultiplicativeWeights:
      return params_.mu_scale * std::sqrt(std::log(num_actions()) / tt);
    case LearnerKind::kFollowThePerturbedLeader:
      // (1 + ln t)/sqrt(t) rises on [1, e); the clamp hides the bump.
      return std::min(1.0, params_.mu_scale * (1.0 + std::log(tt)) / std::sqrt(tt));
    case LearnerKind::kEpsilonGreedy:
      return std::min(1.0, params_.mu_scale * std::pow(tt, -1.0 / 3.0));
  }
  return 0.0;
}

double Learner::AvgReward(int b) const {
  if (t_ == 0) {
    throw Error(ErrorCode::kQueryBeforeFirstRound, "no rounds observed yet");
  }
  return cum_rewards_[b] / static_cast<double>(t_);
}

}  // namespace lse
