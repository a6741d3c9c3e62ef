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

#ifndef LSE_OPT_WITHIN_H_
#define LSE_OPT_WITHIN_H_

#include <cstdint>
#include <vector>

#include "lse/geometry.h"
#include "lse/poly_search.h"
#include "lse/session.h"

namespace lse {

struct OptParams {
  double eps = 0.1;
  double delta = 0.05;
  double alpha = 1e-3;
  double gamma = 1e-3;  // LP floor; the session should play down to gamma / 2
  double sigma_lb = 0.05;
  double r_min = 0.1;  // only enters the reported slack
  double chunk = 0.02;  // l1 length of one checked improvement move
  int max_iterations = 0;  // 0 selects 4n + 4
  SearchParams search;  // gamma, sigma_lb and delta_sep are overwritten
};

struct ImprovementStep {
  std::uint64_t t_end = 0;
  std::uint64_t rounds = 0;
  double before = 0.0;
  double after = 0.0;
  int iteration = 0;
};

struct PolytopeSearchState {
  int action = -1;
  HalfspaceSet estimated;
  Vector x_current;
  std::vector<HyperplaneEstimate> discovered;
  std::vector<ImprovementStep> improvement_log;
  int iterations = 0;
  int boundary_hits = 0;
  bool empty = false;    // the estimate became infeasible
  bool stalled = false;  // a boundary was hit but nothing new was learned
  bool capped = false;
  double slack = 0.0;
};

struct OptimizeResult {
  Vector x_star;
  PolytopeSearchState state;
};

// 2 alpha m / (sigma - alpha sqrt(m)) + 2 gamma / r_min.
double OptimizationSlack(double alpha, double gamma, double sigma_lb, double r_min,
                         int m);

// Climbs U1(., b) inside P_b, learning the boundaries it runs into.
OptimizeResult OptimizeWithinPolytope(Session& session, int b, const Vector& x_start,
                                      const OptParams& params);

}  // namespace lse

#endif  // LSE_OPT_WITHIN_H_
