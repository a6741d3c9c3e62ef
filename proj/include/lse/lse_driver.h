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

#ifndef LSE_LSE_DRIVER_H_
#define LSE_LSE_DRIVER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "lse/opt_within.h"
#include "lse/poly_search.h"
#include "lse/session.h"

namespace lse {

inline constexpr std::uint64_t kBurnInCap = 10'000'000;

struct LseConfig {
  double eps = 0.1;
  double delta = 0.05;
  double alpha = 1e-3;
  double gamma = 1e-3;  // LP floor; sessions should play down to gamma / 2
  double sigma_lb = 0.05;
  double r_min = 0.1;
  double eps2 = 0.0;  // 0 selects eps * delta
  double c_alpha = 1.0;  // alpha <= c_alpha sigma_lb / (m^2 n)
  double delta_sep = 1.0;
  double chunk = 0.02;
  int max_outer = 0;  // 0 selects n
  // Samples per neighbor-search iteration; 0 selects ceil(2 m^2 ln(m + 1)).
  int neighbor_samples = 0;
  std::uint64_t burn_in_cap = kBurnInCap;
  SearchParams search;
  std::optional<Vector> x_start;

  double Eps2() const { return eps2 > 0.0 ? eps2 : eps * delta; }
  // Throws ConfigViolation naming the first violated inequality.
  void Validate(int m, int n) const;
  OptParams ToOptParams() const;
  nlohmann::json ToJson() const;
};

int NeighborSampleCount(int m);

struct NeighborReport {
  int action = -1;
  double u1 = 0.0;  // U1(x_star, action)
};

struct LseResult {
  Vector x_star;
  int b_star = -1;
  double u1 = 0.0;
  std::vector<NeighborReport> neighbors;
  std::uint64_t rounds_total = 0;
  std::uint64_t rounds_burn_in = 0;
  std::uint64_t rounds_improving = 0;
  std::uint64_t rounds_other = 0;
  bool certified = false;
  bool capped = false;
  bool budget_exhausted = false;
  bool monotone = true;
  int outer_iterations = 0;
  std::vector<int> visited;
  double slack = 0.0;
};

// Plays the floored uniform strategy until mu(t) <= alpha / 2.
std::uint64_t BurnIn(Session& session, double alpha, std::uint64_t cap = kBurnInCap);

// Crosses from the inside of `h_hat` into `target_action`'s polytope and
// returns the landing point.
Vector StepInto(Session& session, const HyperplaneEstimate& h_hat, int target_action,
                double alpha, double gamma, double delta_sep = 1.0);

LseResult FindLse(Session& session, const LseConfig& config);

nlohmann::json LseResultToJson(const LseResult& result, const LseConfig& config);

}  // namespace lse

#endif  // LSE_LSE_DRIVER_H_
