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

#ifndef LSE_VERIFY_H_
#define LSE_VERIFY_H_

#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

#include "lse/game.h"
#include "lse/geometry.h"

namespace lse {

struct PolytopeInfo {
  bool nonempty = false;
  HalfspaceSet region;  // exact P_b
  double opt_value = 0.0;  // max over P_b of U1(x, b)
  Vector opt_x;
  Vector witness;  // maximizes the minimum coordinate over P_b
  double witness_floor = 0.0;
};

struct PolytopeCatalog {
  std::vector<PolytopeInfo> polytopes;

  int num_nonempty() const;
  // Smallest witness floor over nonempty polytopes (empirical R_min).
  double r_min() const;
};

inline constexpr int kMaxVerifyPrincipal = 16;
inline constexpr int kMaxVerifyAgent = 64;

// Per-action LPs run in parallel; `parallel = false` is the serial reference.
PolytopeCatalog EnumeratePolytopes(const GameInstance& game,
                                   LpArithmetic arithmetic = LpArithmetic::kDouble,
                                   bool parallel = true);

struct StackelbergSolution {
  double value = 0.0;
  Vector x;
  int b = -1;
};

StackelbergSolution ExactStackelberg(const GameInstance& game,
                                     const PolytopeCatalog& catalog);
StackelbergSolution ExactStackelberg(const GameInstance& game);

struct NeighborValue {
  int action = -1;
  double value = 0.0;  // max U1(., action) over P_action within the l1 ball
  Vector x;
};

struct CertifyReport {
  bool certified = false;
  double base = 0.0;  // max over BR(x) of U1(x, y)
  std::vector<NeighborValue> neighbors;  // every P_b meeting the ball
  int witness_action = -1;
  Vector witness_x;
  double witness_value = 0.0;
};

// Exact check of the (eps, delta) local condition with an l1 ball.
CertifyReport CertifyLse(const GameInstance& game, const Vector& x, double eps,
                         double delta,
                         LpArithmetic arithmetic = LpArithmetic::kDouble);

struct SingularReport {
  double min_sigma = 0.0;
  bool exhaustive = true;
  std::uint64_t evaluated = 0;
  bool satisfied = false;
  int argmin_action = -1;
  std::vector<int> argmin_rows;  // rows of G_b
};

inline constexpr std::uint64_t kDefaultSubmatrixBudget = 200000;

// Minimum singular value over the m x m row-submatrices of every G_b.
SingularReport CheckSingularAssumption(const GameInstance& game, double sigma_lb,
                                       std::uint64_t budget = kDefaultSubmatrixBudget,
                                       std::uint64_t seed = 0, bool parallel = true);

// Sampled one-sided l1 Hausdorff distance from true_region to est_region.
double HausdorffGap(const HalfspaceSet& true_region, const HalfspaceSet& est_region,
                    int samples, std::mt19937_64& rng);

// l1 distance from p to a region by LP; +infinity if the region is empty.
double L1DistanceToRegion(const Vector& p, const HalfspaceSet& region);

nlohmann::json CatalogToJson(const PolytopeCatalog& catalog);
nlohmann::json CertifyToJson(const CertifyReport& report);
nlohmann::json SingularToJson(const SingularReport& report);

}  // namespace lse

#endif  // LSE_VERIFY_H_
