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

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "lse/error.h"

namespace lse {

Session::Session(GameInstance game, Learner learner, std::uint64_t seed,
                 SessionOptions options)
    : game_(std::move(game)),
      learner_(std::move(learner)),
      options_(options),
      rng_(seed),
      avg_(Vector::Constant(game_.m(), 1.0 / game_.m())) {
  if (learner_.num_actions() != game_.n()) {
    throw Error(ErrorCode::kInvalidArgument, "learner/game action mismatch");
  }
  if (!(options_.gamma >= 0.0) || options_.gamma * game_.m() >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in [0, 1/m)");
  }
}

void Session::CheckPlayable(const Vector& x) const {
  if (x.size() != game_.m()) {
    throw Error(ErrorCode::kInvalidArgument, "strategy dimension mismatch");
  }
  if (std::abs(x.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "strategy does not sum to one");
  }
  if (x.minCoeff() < options_.gamma - 1e-12) {
    throw Error(ErrorCode::kInteriorViolation,
                "coordinate " + std::to_string(x.minCoeff()) + " below floor " +
                    std::to_string(options_.gamma));
  }
}

void Session::Advance(const Vector& x, std::uint64_t count) {
  if (count > options_.round_budget - t_) {
    throw Error(ErrorCode::kBudgetExhausted, "round budget exhausted");
  }
  const double w = static_cast<double>(count) / static_cast<double>(t_ + count);
  avg_ += w * (x - avg_);
  avg_ /= avg_.sum();
  t_ += count;
  phase_rounds_[static_cast<int>(phase_)] += count;
}

void Session::ReassignRounds(Phase from, Phase to, std::uint64_t count) {
  auto& src = phase_rounds_[static_cast<int>(from)];
  if (count > src) throw Error(ErrorCode::kInvalidArgument, "not that many rounds in phase");
  src -= count;
  phase_rounds_[static_cast<int>(to)] += count;
}

int Session::PlayRound(const Vector& x) {
  CheckPlayable(x);
  const std::uint64_t index = t_ + 1;
  const int y = learner_.Step(game_, x);
  Advance(x, 1);
  if (options_.record_history) history_.push_back({index, 1, x, {y}});
  return y;
}

void Session::PlayRepeated(const Vector& x, std::uint64_t count) {
  if (count == 0) return;
  CheckPlayable(x);
  const std::uint64_t index = t_ + 1;
  if (count > options_.round_budget - t_) {
    throw Error(ErrorCode::kBudgetExhausted, "round budget exhausted");
  }
  learner_.Observe(game_, x, count);
  Advance(x, count);
  if (options_.record_history) history_.push_back({index, count, x, {}});
}

std::vector<int> Session::PlayBlock(const Vector& x, std::uint64_t count) {
  CheckPlayable(x);
  const std::uint64_t index = t_ + 1;
  const bool replay = x == avg_;
  const Vector saved = avg_;
  std::vector<int> ys;
  ys.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ys.push_back(learner_.Step(game_, x));
    Advance(x, 1);
  }
  if (replay) avg_ = saved;
  if (options_.record_history) history_.push_back({index, count, x, ys});
  return ys;
}

Vector Session::RecomputeAverage() const {
  Vector sum = Vector::Zero(game_.m());
  std::uint64_t total = 0;
  for (const HistoryRecord& r : history_) {
    sum += static_cast<double>(r.repeat) * r.x;
    total += r.repeat;
  }
  if (total == 0) return avg_;
  return sum / static_cast<double>(total);
}

void Session::WriteTranscript(std::ostream& out) const {
  for (const HistoryRecord& r : history_) {
    std::vector<double> x(r.x.data(), r.x.data() + r.x.size());
    if (r.ys.empty()) {
      nlohmann::json line = {{"t", r.t}, {"repeat", r.repeat}, {"x", x}, {"y", nullptr}};
      out << line.dump() << '\n';
      continue;
    }
    for (std::size_t i = 0; i < r.ys.size(); ++i) {
      const int y = r.ys[i];
      nlohmann::json line = {
          {"t", r.t + i},
          {"x", x},
          {"y", y},
          {"u1", ExpectedUtility(game_, r.x, y, Player::kPrincipal)},
          {"u2", ExpectedUtility(game_, r.x, y, Player::kAgent)}};
      out << line.dump() << '\n';
    }
  }
}

Vector MoveOneStep(const Vector& avg, std::uint64_t t, const Vector& u, double eta) {
  if (avg.size() != u.size()) {
    throw Error(ErrorCode::kInvalidArgument, "dimension mismatch");
  }
  if (t == 0) throw Error(ErrorCode::kInvalidArgument, "round index must be >= 1");
  if (eta < 0.0) throw Error(ErrorCode::kInvalidArgument, "eta must be >= 0");
  if (eta == 0.0) return avg;
  const double len = L1Distance(u, avg);
  if (len == 0.0) {
    throw Error(ErrorCode::kDegenerateDirection, "direction u equals the average");
  }
  if (eta > len * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kStepTooLarge, "eta exceeds ||u - avg||_1");
  }
  const double w = std::min(1.0, eta / len);
  if (w == 1.0) return u;
  return (1.0 - w) * avg + w * u;
}

namespace {

// Clips to the floor and renormalizes by taking the excess only from
// coordinates above it, so nothing lands below the floor.
Vector FloorNormalize(Vector x, double floor) {
  x = x.cwiseMax(floor);
  const double excess = x.sum() - 1.0;
  const double slack = x.sum() - floor * static_cast<double>(x.size());
  if (excess > 0.0 && slack > 0.0) {
    for (int i = 0; i < x.size(); ++i) x[i] -= excess * (x[i] - floor) / slack;
  } else {
    x /= x.sum();
  }
  return x;
}

}  // namespace

DriveResult DriveAverageTo(Session& session, const Vector& target,
                           std::uint64_t max_rounds) {
  const double gamma = session.gamma();
  if (target.size() != session.game().m()) {
    throw Error(ErrorCode::kInvalidArgument, "target dimension mismatch");
  }
  if (target.minCoeff() < gamma - 1e-12) {
    throw Error(ErrorCode::kInteriorViolation, "target violates the floor");
  }
  DriveResult result;
  for (int guard = 0; guard < 64; ++guard) {
    const Vector avg = session.avg();
    const Vector dir = target - avg;
    const double gap = dir.lpNorm<1>();
    if (gap <= 1e-9) {
      result.reached = true;
      return result;
    }
    if (result.rounds >= max_rounds) return result;
    // Farthest floor-feasible point u on the ray avg -> target.
    double s_max = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dir.size(); ++i) {
      if (dir[i] < 0.0) s_max = std::min(s_max, (avg[i] - gamma) / -dir[i]);
    }
    s_max = std::max(s_max, 1.0);
    Vector u = avg + s_max * dir;
    u = FloorNormalize(u, gamma);
    const double reach = L1Distance(u, avg);
    const std::uint64_t tau = session.t() + 1;
    const double eta = gap * static_cast<double>(tau);
    if (session.t() == 0 || eta <= reach * (1.0 + 1e-12)) {
      Vector x = session.t() == 0 ? Vector(target)
                                  : MoveOneStep(avg, tau, u, std::min(eta, reach));
      session.PlayRepeated(FloorNormalize(x, gamma), 1);
      ++result.rounds;
      continue;
    }
    // Full rounds of u until one partial step finishes the move.
    const double lambda = gap / reach;
    const double t = static_cast<double>(session.t());
    double k = std::floor(lambda * t / (1.0 - lambda));
    if (!(k < 4e18)) {
      throw Error(ErrorCode::kBudgetExhausted, "average move needs too many rounds");
    }
    std::uint64_t count = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
    count = std::min(count, max_rounds - result.rounds);
    session.PlayRepeated(u, count);
    result.rounds += count;
  }
  result.reached = L1Distance(session.avg(), target) <= 1e-9;
  return result;
}

std::uint64_t OracleRepetitions(const Session& session, double alpha,
                                double delta_sep) {
  const Learner& learner = session.learner();
  if (learner.kind() == LearnerKind::kFictitiousPlay) return 1;
  const std::uint64_t tau = session.t() + 1;
  const double n = learner.num_actions();
  double p = session.options().literal_oracle_formula ? n * alpha * delta_sep
                                                      : n * learner.Mu(tau);
  p = std::min(0.5, p);
  const double k = std::ceil(2.0 * std::log(static_cast<double>(tau)) / ((1 - p) * (1 - p)));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

int BrOracle(Session& session, double alpha, double delta_sep) {
  const Vector x = session.avg();
  const std::uint64_t k = OracleRepetitions(session, alpha, delta_sep);
  const std::vector<int> ys = session.PlayBlock(x, k);
  std::vector<int> counts(session.game().n(), 0);
  for (int y : ys) ++counts[y];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

bool DetectBrChange(Session& session, const Vector& x_before, const Vector& x_after,
                    double alpha, double delta_sep) {
  DriveAverageTo(session, x_before);
  const int before = BrOracle(session, alpha, delta_sep);
  DriveAverageTo(session, x_after);
  const int after = BrOracle(session, alpha, delta_sep);
  return before != after;
}

BoundarySearchResult BinarySearchBoundary(Session& session, const Vector& x_left,
                                          const Vector& x_right, double alpha,
                                          double delta_sep) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  const std::uint64_t start = session.t();
  auto label = [&](const Vector& x) {
    DriveAverageTo(session, x);
    return BrOracle(session, alpha, delta_sep);
  };
  BoundarySearchResult out;
  out.b_near = label(x_left);
  out.b_far = label(x_right);
  if (out.b_near == out.b_far) {
    throw Error(ErrorCode::kNoCrossingDetected,
                "both endpoints report action " + std::to_string(out.b_near));
  }
  Vector lo = x_left, hi = x_right;
  while (L1Distance(lo, hi) > alpha) {
    const Vector mid = 0.5 * (lo + hi);
    const int y = label(mid);
    ++out.halvings;
    if (y == out.b_near) {
      lo = mid;
    } else {
      hi = mid;
      out.b_far = y;
    }
  }
  DriveAverageTo(session, lo);
  out.x_near = lo;
  out.x_far = hi;
  out.rounds = session.t() - start;
  return out;
}

}  // namespace lse
