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

#include "lse/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lse/error.h"
#include "lse/lp.h"

namespace lse {

namespace {

template <typename T>
double AsDouble(const T& v);
template <>
double AsDouble(const double& v) { return v; }
template <>
double AsDouble(const mpq_class& v) { return v.get_d(); }

void CheckVerifyCaps(const GameInstance& game) {
  if (game.m() > kMaxVerifyPrincipal || game.n() > kMaxVerifyAgent) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "exact verification is capped at m <= 16 and n <= 64");
  }
}

// max s  s.t.  x >= s 1,  normals x >= margins,  1^T x = 1.
template <typename T>
bool MaxMinCoordinate(const HalfspaceSet& region, Vector* witness, double* floor) {
  const int m = region.dim();
  LpProblem<T> lp;
  lp.c.assign(m + 1, T(0));
  lp.c[m] = T(1);
  for (int i = 0; i < m; ++i) {
    std::vector<T> row(m + 1, T(0));
    row[i] = T(-1);
    row[m] = T(1);
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(T(0));
  }
  for (int k = 0; k < region.size(); ++k) {
    std::vector<T> row(m + 1, T(0));
    for (int j = 0; j < m; ++j) row[j] = T(-region.normals(k, j));
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(T(-region.margins[k]));
  }
  std::vector<T> ones(m + 1, T(1));
  ones[m] = T(0);
  lp.a_eq.push_back(ones);
  lp.b_eq.push_back(T(1));
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return false;
  witness->resize(m);
  for (int j = 0; j < m; ++j) (*witness)[j] = std::max(0.0, AsDouble(sol.y[j]));
  *witness /= witness->sum();
  *floor = AsDouble(sol.y[m]);
  return true;
}

// max c^T x' over region within the l1 ball of radius `radius` around p,
// via deviation variables d >= |x' - p|. Minimizing l1 distance is the
// special case c = 0 with `distance` set.
template <typename T>
bool BallLp(const Vector& p, double radius, const HalfspaceSet& region, const Vector& c,
            bool distance, double* value, Vector* argmax) {
  const int m = region.dim();
  LpProblem<T> lp;
  lp.c.assign(2 * m, T(0));
  for (int j = 0; j < m; ++j) {
    if (distance) {
      lp.c[m + j] = T(-1);
    } else {
      lp.c[j] = T(c[j]);
    }
  }
  for (int i = 0; i < m; ++i) {
    std::vector<T> up(2 * m, T(0)), down(2 * m, T(0));
    up[i] = T(1);
    up[m + i] = T(-1);
    down[i] = T(-1);
    down[m + i] = T(-1);
    lp.a_ub.push_back(up);
    lp.b_ub.push_back(T(p[i]));
    lp.a_ub.push_back(down);
    lp.b_ub.push_back(T(-p[i]));
    if (region.floor > 0.0) {
      std::vector<T> fl(2 * m, T(0));
      fl[i] = T(-1);
      lp.a_ub.push_back(fl);
      lp.b_ub.push_back(T(-region.floor));
    }
  }
  if (!distance) {
    std::vector<T> budget(2 * m, T(0));
    for (int i = 0; i < m; ++i) budget[m + i] = T(1);
    lp.a_ub.push_back(budget);
    lp.b_ub.push_back(T(radius));
  }
  for (int k = 0; k < region.size(); ++k) {
    std::vector<T> row(2 * m, T(0));
    for (int j = 0; j < m; ++j) row[j] = T(-region.normals(k, j));
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(T(-region.margins[k]));
  }
  std::vector<T> ones(2 * m, T(0));
  for (int j = 0; j < m; ++j) ones[j] = T(1);
  lp.a_eq.push_back(ones);
  lp.b_eq.push_back(T(1));
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return false;
  argmax->resize(m);
  for (int j = 0; j < m; ++j) (*argmax)[j] = std::max(0.0, AsDouble(sol.y[j]));
  *value = AsDouble(sol.value);
  return true;
}

PolytopeInfo DescribePolytope(const GameInstance& game, int b, LpArithmetic arithmetic) {
  PolytopeInfo info;
  info.region = TrueRegion(game, b, 0.0);
  LpResult opt = LpMaximize(game.u1().col(b), info.region, arithmetic);
  if (!opt.feasible) return info;
  info.nonempty = true;
  info.opt_value = opt.value;
  info.opt_x = opt.x;
  if (arithmetic == LpArithmetic::kExact) {
    MaxMinCoordinate<mpq_class>(info.region, &info.witness, &info.witness_floor);
  } else {
    MaxMinCoordinate<double>(info.region, &info.witness, &info.witness_floor);
  }
  return info;
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

}  // namespace

int PolytopeCatalog::num_nonempty() const {
  return static_cast<int>(std::count_if(polytopes.begin(), polytopes.end(),
                                        [](const PolytopeInfo& p) { return p.nonempty; }));
}

double PolytopeCatalog::r_min() const {
  double r = std::numeric_limits<double>::infinity();
  for (const PolytopeInfo& p : polytopes)
    if (p.nonempty) r = std::min(r, p.witness_floor);
  return r;
}

PolytopeCatalog EnumeratePolytopes(const GameInstance& game, LpArithmetic arithmetic,
                                   bool parallel) {
  CheckVerifyCaps(game);
  PolytopeCatalog catalog;
  catalog.polytopes.resize(game.n());
  const int n = game.n();
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int b = 0; b < n; ++b) catalog.polytopes[b] = DescribePolytope(game, b, arithmetic);
  return catalog;
}

StackelbergSolution ExactStackelberg(const GameInstance& game,
                                     const PolytopeCatalog& catalog) {
  (void)game;
  StackelbergSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < static_cast<int>(catalog.polytopes.size()); ++b) {
    const PolytopeInfo& p = catalog.polytopes[b];
    if (!p.nonempty) continue;
    if (p.opt_value > best.value + 1e-12) {
      best.value = p.opt_value;
      best.x = p.opt_x;
      best.b = b;
    }
  }
  return best;
}

StackelbergSolution ExactStackelberg(const GameInstance& game) {
  return ExactStackelberg(game, EnumeratePolytopes(game));
}

CertifyReport CertifyLse(const GameInstance& game, const Vector& x, double eps,
                         double delta, LpArithmetic arithmetic) {
  CheckVerifyCaps(game);
  if (x.size() != game.m()) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch");
  if (!(eps >= 0.0) || !(delta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps and delta must be >= 0");
  }
  CertifyReport report;
  report.base = -std::numeric_limits<double>::infinity();
  for (int y : BestResponses(game, x).actions) {
    report.base = std::max(report.base, ExpectedUtility(game, x, y, Player::kPrincipal));
  }
  const double threshold = report.base + eps * delta + 1e-9;
  report.certified = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < game.n(); ++b) {
    const HalfspaceSet region = TrueRegion(game, b, 0.0);
    NeighborValue nv;
    nv.action = b;
    const bool ok =
        arithmetic == LpArithmetic::kExact
            ? BallLp<mpq_class>(x, delta, region, game.u1().col(b), false, &nv.value, &nv.x)
            : BallLp<double>(x, delta, region, game.u1().col(b), false, &nv.value, &nv.x);
    if (!ok) continue;
    report.neighbors.push_back(nv);
    if (nv.value > threshold && nv.value - threshold > worst) {
      worst = nv.value - threshold;
      report.certified = false;
      report.witness_action = b;
      report.witness_x = nv.x;
      report.witness_value = nv.value;
    }
  }
  return report;
}

SingularReport CheckSingularAssumption(const GameInstance& game, double sigma_lb,
                                       std::uint64_t budget, std::uint64_t seed,
                                       bool parallel) {
  const int m = game.m();
  const int n = game.n();
  const int rows = n + m;
  SingularReport report;
  const std::uint64_t per_action = Binomial(rows, m);
  report.exhaustive = per_action <= budget;

  // Candidate row subsets, shared by every G_b.
  std::vector<std::vector<int>> subsets;
  if (report.exhaustive) {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      subsets.push_back(idx);
      int i = m - 1;
      while (i >= 0 && idx[i] == rows - m + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<int> all(rows);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t s = 0; s < budget; ++s) {
      for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, rows - 1);
        std::swap(all[i], all[pick(rng)]);
      }
      std::vector<int> sub(all.begin(), all.begin() + m);
      std::sort(sub.begin(), sub.end());
      subsets.push_back(sub);
    }
  }

  std::vector<Matrix> g(n);
  for (int b = 0; b < n; ++b) g[b] = BuildConstraintMatrices(game, b).g;

  const std::int64_t total = static_cast<std::int64_t>(subsets.size()) * n;
  std::vector<double> sigma(total);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t k = 0; k < total; ++k) {
    const int b = static_cast<int>(k / static_cast<std::int64_t>(subsets.size()));
    const auto& sub = subsets[k % subsets.size()];
    Matrix a(m, m);
    for (int i = 0; i < m; ++i) a.row(i) = g[b].row(sub[i]);
    sigma[k] = MinSingularValue(a);
  }
  const auto it = std::min_element(sigma.begin(), sigma.end());
  const std::int64_t k = it - sigma.begin();
  report.min_sigma = *it;
  report.evaluated = static_cast<std::uint64_t>(total);
  report.argmin_action = static_cast<int>(k / static_cast<std::int64_t>(subsets.size()));
  report.argmin_rows = subsets[k % subsets.size()];
  report.satisfied = report.min_sigma >= sigma_lb;
  return report;
}

double L1DistanceToRegion(const Vector& p, const HalfspaceSet& region) {
  double value = 0.0;
  Vector argmin;
  if (!BallLp<double>(p, 0.0, region, Vector(), true, &value, &argmin)) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(0.0, -value);
}

double HausdorffGap(const HalfspaceSet& true_region, const HalfspaceSet& est_region,
                    int samples, std::mt19937_64& rng) {
  if (!IsFeasible(true_region) || !IsFeasible(est_region)) {
    throw Error(ErrorCode::kEmptyRegion, "hausdorff_gap needs nonempty regions");
  }
  const int m = true_region.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  // Extreme points from random objectives, then random convex combinations.
  std::vector<Vector> vertices;
  const int num_vertices = std::max(2 * m, samples / 4);
  for (int i = 0; i < num_vertices; ++i) {
    Vector c(m);
    for (int j = 0; j < m; ++j) c[j] = normal(rng);
    vertices.push_back(LpMaximize(c, true_region).x);
  }
  std::vector<Vector> points = vertices;
  while (static_cast<int>(points.size()) < samples) {
    Vector mix = Vector::Zero(m);
    double total = 0.0;
    for (const Vector& v : vertices) {
      const double w = expo(rng);
      mix += w * v;
      total += w;
    }
    points.push_back(mix / total);
  }
  double gap = 0.0;
  for (const Vector& p : points) gap = std::max(gap, L1DistanceToRegion(p, est_region));
  return gap;
}

namespace {
std::vector<double> ToStd(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }
}  // namespace

nlohmann::json CatalogToJson(const PolytopeCatalog& catalog) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t b = 0; b < catalog.polytopes.size(); ++b) {
    const PolytopeInfo& p = catalog.polytopes[b];
    nlohmann::json e = {{"action", b}, {"nonempty", p.nonempty}};
    if (p.nonempty) {
      e["opt_value"] = p.opt_value;
      e["opt_x"] = ToStd(p.opt_x);
      e["witness"] = ToStd(p.witness);
      e["witness_floor"] = p.witness_floor;
    }
    out.push_back(e);
  }
  return out;
}

nlohmann::json CertifyToJson(const CertifyReport& report) {
  nlohmann::json out = {{"certified", report.certified}, {"base", report.base}};
  nlohmann::json nb = nlohmann::json::array();
  for (const NeighborValue& v : report.neighbors) {
    nb.push_back({{"action", v.action}, {"value", v.value}, {"x", ToStd(v.x)}});
  }
  out["neighbors"] = nb;
  if (!report.certified) {
    out["witness"] = {{"action", report.witness_action},
                      {"x", ToStd(report.witness_x)},
                      {"value", report.witness_value}};
  }
  return out;
}

nlohmann::json SingularToJson(const SingularReport& report) {
  return {{"min_sigma", report.min_sigma},
          {"exhaustive", report.exhaustive},
          {"evaluated", report.evaluated},
          {"satisfied", report.satisfied},
          {"argmin_action", report.argmin_action},
          {"argmin_rows", report.argmin_rows}};
}

}  // namespace lse
