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

#include "lse/game.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "lse/error.h"

namespace lse {

MixedStrategy::MixedStrategy(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty mixed strategy");
  }
  for (int i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < -1e-12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight " + std::to_string(i) + " is negative or not finite");
    }
    weights_[i] = std::max(weights_[i], 0.0);
  }
  const double total = weights_.sum();
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "weights sum to " + std::to_string(total));
  }
  weights_ /= total;
}

MixedStrategy::MixedStrategy(std::initializer_list<double> weights)
    : MixedStrategy(Eigen::Map<const Vector>(
          weights.begin(), static_cast<Eigen::Index>(weights.size()))) {}

MixedStrategy MixedStrategy::Uniform(int size) {
  return MixedStrategy(Vector::Constant(size, 1.0 / size));
}

MixedStrategy MixedStrategy::Pure(int size, int action) {
  Vector w = Vector::Zero(size);
  w[action] = 1.0;
  return MixedStrategy(std::move(w));
}

double L1Distance(const Vector& a, const Vector& b) {
  return (a - b).lpNorm<1>();
}

GameInstance::GameInstance(Matrix u1, Matrix u2, bool extended_range)
    : u1_(std::move(u1)), u2_(std::move(u2)), extended_range_(extended_range) {
  if (u1_.rows() != u2_.rows() || u1_.cols() != u2_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "u1 and u2 shapes differ");
  }
  if (u1_.rows() < 2 || u1_.cols() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need m >= 2 and n >= 2");
  }
  auto check = [](const Matrix& u, const char* name) {
    for (int a = 0; a < u.rows(); ++a) {
      for (int b = 0; b < u.cols(); ++b) {
        if (!std::isfinite(u(a, b))) {
          throw Error(ErrorCode::kInvalidArgument,
                      std::string(name) + " has a non-finite entry");
        }
      }
    }
  };
  check(u1_, "u1");
  check(u2_, "u2");
  if (u1_.minCoeff() < 0.0 || u1_.maxCoeff() > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "u1 entries must lie in [0,1]");
  }
  // Smoothed perturbations may leave [-1,1] slightly; only finiteness is
  // required once the extended flag is set.
  if (!extended_range_ && (u2_.minCoeff() < 0.0 || u2_.maxCoeff() > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "u2 entries outside [0,1] require extended_range");
  }
}

namespace {

void CheckDims(const GameInstance& game, const Vector& x) {
  if (x.size() != game.m()) {
    throw Error(ErrorCode::kInvalidArgument,
                "principal strategy has " + std::to_string(x.size()) +
                    " entries, game has m=" + std::to_string(game.m()));
  }
}

}  // namespace

double ExpectedUtility(const GameInstance& game, const Vector& x,
                       const Vector& y, Player player) {
  CheckDims(game, x);
  if (y.size() != game.n()) {
    throw Error(ErrorCode::kInvalidArgument, "agent strategy size mismatch");
  }
  return x.dot(game.utilities(player) * y);
}

double ExpectedUtility(const GameInstance& game, const Vector& x, int b,
                       Player player) {
  CheckDims(game, x);
  if (b < 0 || b >= game.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent action " + std::to_string(b) + " out of range");
  }
  return x.dot(game.utilities(player).col(b));
}

Vector AgentPayoffs(const GameInstance& game, const Vector& x) {
  CheckDims(game, x);
  return game.u2().transpose() * x;
}

bool BestResponseSet::contains(int b) const {
  return std::binary_search(actions.begin(), actions.end(), b);
}

BestResponseSet BestResponses(const GameInstance& game, const Vector& x,
                              double tie_tol) {
  if (tie_tol < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "tie_tol must be >= 0");
  }
  const Vector payoff = AgentPayoffs(game, x);
  const double best = payoff.maxCoeff();
  BestResponseSet result;
  double best_excluded = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < game.n(); ++b) {
    if (payoff[b] >= best - tie_tol) {
      result.actions.push_back(b);
    } else {
      best_excluded = std::max(best_excluded, payoff[b]);
    }
  }
  result.margin = std::isinf(best_excluded)
                      ? std::numeric_limits<double>::infinity()
                      : best - best_excluded;
  return result;
}

}  // namespace lse
