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

#ifndef LSE_POLY_SEARCH_H_
#define LSE_POLY_SEARCH_H_

#include <optional>
#include <vector>

#include "lse/geometry.h"
#include "lse/session.h"

namespace lse {

struct SearchParams {
  double gamma = 1e-3;  // samples keep every coordinate >= gamma
  double sigma_lb = 0.05;
  // alpha_j is clamped below at alpha_min_frac * alpha.
  double alpha_min_frac = 1e-3;
  double eta_const = 1.0;  // eta_j = min(eta_const alpha_j m^4 / sigma^2, kappa rho), at least rho
  double kappa = 2.0;
  int samples = 0;  // d; 0 selects ceil(8 m^2 ln(m + 1))
  double cluster_const = 16.0;  // a cluster needs >= d / (C m) points
  double cluster_radius = 3.0;
  // Samples also keep every coordinate >= face_margin * eta.
  double face_margin = 0.25;  // in units of eta sqrt(m)
  int crossings = 0;  // boundary points per fit; 0 selects 2(m - 1) + 2
  double delta_sep = 1.0;
  // Enforce rho < alpha. The equilibrium driver searches with rho = delta.
  bool strict_radius = true;
};

struct SearchSpace {
  int inside_action = -1;
  Vector x_star;
  Vector base_point;
  std::vector<HyperplaneEstimate> discovered;
  std::vector<double> alpha_schedule;  // alpha_1 .. alpha_m
  std::vector<double> eta_schedule;

  Matrix Normals() const;
  Vector Offsets() const;
};

struct SearchStats {
  int iterations = 0;
  int samples = 0;
  int redraws = 0;
  int oracle_calls = 0;
  int insufficient_clusters = 0;
  int failed_crossings = 0;
  std::uint64_t rounds = 0;
  std::vector<int> tangent_dims;  // sampling dimension at every iteration
};

struct SearchResult {
  std::vector<HyperplaneEstimate> found;
  SearchStats stats;
  // Accepted sample points of every iteration with the restricted space
  // they were drawn from (number of equalities active).
  std::vector<std::pair<Vector, int>> samples;
};

int DefaultSampleCount(int m);
std::vector<double> AccuracySchedule(double alpha, double sigma_lb, int m,
                                     double min_frac);
double SampleScale(double alpha_j, double sigma_lb, int m, double rho,
                   double eta_const, double kappa);

// Unit vector minimizing ||h Y^T||_2, signed so that <h, witness> > 0.
HyperplaneEstimate FitHyperplane(const Matrix& y, const Vector& witness);

std::optional<HyperplaneEstimate> FindAHyperplane(Session& session, SearchSpace& space,
                                                  int d, double alpha,
                                                  const SearchParams& params,
                                                  SearchResult* log);

// Discovers the polytopes within rho of x_star together with estimates of
// the hyperplanes separating them from the polytope containing x_star.
SearchResult SearchForPolytopes(Session& session, const Vector& x_star, double alpha,
                                double rho, const SearchParams& params);

}  // namespace lse

#endif  // LSE_POLY_SEARCH_H_
