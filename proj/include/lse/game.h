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

#ifndef LSE_GAME_H_
#define LSE_GAME_H_

#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace lse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultTieTolerance = 1e-9;
inline constexpr double kNormalizationTolerance = 1e-9;

// A point on the probability simplex. Construction renormalizes inputs whose
// sum is within 1e-9 of one and rejects anything further off.
class MixedStrategy {
 public:
  explicit MixedStrategy(Vector weights);
  MixedStrategy(std::initializer_list<double> weights);

  static MixedStrategy Uniform(int size);
  static MixedStrategy Pure(int size, int action);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const Vector& weights() const { return weights_; }
  double MinCoordinate() const { return weights_.minCoeff(); }

 private:
  Vector weights_;
};

double L1Distance(const Vector& a, const Vector& b);

enum class Player { kPrincipal, kAgent };

// Stage game: u1 holds the principal's utilities, u2 the agent's; rows are
// principal actions, columns agent actions.
class GameInstance {
 public:
  GameInstance(Matrix u1, Matrix u2, bool extended_range = false);

  int m() const { return static_cast<int>(u1_.rows()); }
  int n() const { return static_cast<int>(u1_.cols()); }
  const Matrix& u1() const { return u1_; }
  const Matrix& u2() const { return u2_; }
  bool extended_range() const { return extended_range_; }
  const Matrix& utilities(Player player) const {
    return player == Player::kPrincipal ? u1_ : u2_;
  }

  // Lower end of the utility range the algorithms may assume.
  double utility_floor() const { return extended_range_ ? -1.0 : 0.0; }

 private:
  Matrix u1_;
  Matrix u2_;
  bool extended_range_;
};

// x^T U y for a mixed agent strategy y.
double ExpectedUtility(const GameInstance& game, const Vector& x,
                       const Vector& y, Player player);
// x^T U e_b for a pure agent action b.
double ExpectedUtility(const GameInstance& game, const Vector& x, int b,
                       Player player);

// Agent utility of every pure action against x, i.e. x^T U2.
Vector AgentPayoffs(const GameInstance& game, const Vector& x);

struct BestResponseSet {
  std::vector<int> actions;  // ascending
  double margin = std::numeric_limits<double>::infinity();

  int lowest() const { return actions.front(); }
  bool contains(int b) const;
};

BestResponseSet BestResponses(const GameInstance& game, const Vector& x,
                              double tie_tol = kDefaultTieTolerance);

}  // namespace lse

#endif  // LSE_GAME_H_
