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

#ifndef LSE_SESSION_H_
#define LSE_SESSION_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "lse/game.h"
#include "lse/learner.h"

namespace lse {

enum class Phase { kBurnIn = 0, kImproving = 1, kOther = 2 };

struct SessionOptions {
  double gamma = 1e-3;  // every played x keeps all coordinates >= gamma
  // Use the br_oracle repetition count 2 ln t / (1 - n alpha Delta)^2 as
  // literally printed instead of the mu_t based one.
  bool literal_oracle_formula = false;
  std::uint64_t round_budget = std::uint64_t{1} << 62;
  bool record_history = true;
};

// One transcript record. Explicit rounds carry the agent's action(s);
// batched segments (`ys` empty) repeat x for `repeat` rounds without
// materializing the agent's choices.
struct HistoryRecord {
  std::uint64_t t = 0;  // index of the first round covered
  std::uint64_t repeat = 1;
  Vector x;
  std::vector<int> ys;
};

class Session {
 public:
  Session(GameInstance game, Learner learner, std::uint64_t seed,
          SessionOptions options = {});

  const GameInstance& game() const { return game_; }
  const Learner& learner() const { return learner_; }
  const SessionOptions& options() const { return options_; }
  double gamma() const { return options_.gamma; }
  std::uint64_t t() const { return t_; }
  const Vector& avg() const { return avg_; }
  std::mt19937_64& rng() { return rng_; }
  const std::vector<HistoryRecord>& history() const { return history_; }

  Phase phase() const { return phase_; }
  void set_phase(Phase phase) { phase_ = phase; }
  std::uint64_t rounds_in(Phase phase) const {
    return phase_rounds_[static_cast<int>(phase)];
  }
  // Moves already counted rounds to another phase.
  void ReassignRounds(Phase from, Phase to, std::uint64_t count);

  // Plays one explicit round and returns the agent's action.
  int PlayRound(const Vector& x);

  // Plays x for `count` rounds in closed form.
  void PlayRepeated(const Vector& x, std::uint64_t count);

  // Plays x for `count` explicit rounds; the average is restored to its
  // previous value afterwards when x equals it.
  std::vector<int> PlayBlock(const Vector& x, std::uint64_t count);

  // Average rebuilt from the history (for invariant checks).
  Vector RecomputeAverage() const;

  // JSON lines: {"t","x","y","u1","u2"} per explicit round and
  // {"t","repeat","x","y":null} per batched segment.
  void WriteTranscript(std::ostream& out) const;

 private:
  void CheckPlayable(const Vector& x) const;
  void Advance(const Vector& x, std::uint64_t count);

  GameInstance game_;
  Learner learner_;
  SessionOptions options_;
  std::mt19937_64 rng_;
  std::uint64_t t_ = 0;
  Vector avg_;
  std::vector<HistoryRecord> history_;
  Phase phase_ = Phase::kOther;
  std::array<std::uint64_t, 3> phase_rounds_{};
};

// x^(t) for moving the average by eta/t in l1 toward u, with t the index of
// the round about to be played.
Vector MoveOneStep(const Vector& avg, std::uint64_t t, const Vector& u, double eta);

struct DriveResult {
  std::uint64_t rounds = 0;
  bool reached = false;
};

// Moves the average to `target` with maximal feasible steps.
DriveResult DriveAverageTo(Session& session, const Vector& target,
                           std::uint64_t max_rounds = UINT64_MAX);

// Number of repetitions br_oracle uses at the next round.
std::uint64_t OracleRepetitions(const Session& session, double alpha,
                                double delta_sep);

// Replays the current average and reports the modal response.
int BrOracle(Session& session, double alpha, double delta_sep);

bool DetectBrChange(Session& session, const Vector& x_before,
                    const Vector& x_after, double alpha, double delta_sep);

struct BoundarySearchResult {
  Vector x_near;  // labeled b_near, within alpha (l1) of x_far
  Vector x_far;
  int b_near = -1;
  int b_far = -1;
  std::uint64_t rounds = 0;
  int halvings = 0;
};

BoundarySearchResult BinarySearchBoundary(Session& session, const Vector& x_left,
                                          const Vector& x_right, double alpha,
                                          double delta_sep);

}  // namespace lse

#endif  // LSE_SESSION_H_
