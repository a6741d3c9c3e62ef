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

#include "lse/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lse/error.h"
#include "lse/lp.h"

namespace lse {

HyperplaneEstimate Hyperplane(const GameInstance& game, int b, int b_other) {
  if (b == b_other || b < 0 || b_other < 0 || b >= game.n() || b_other >= game.n()) {
    throw Error(ErrorCode::kInvalidArgument, "hyperplane needs two distinct actions");
  }
  Vector h = game.u2().col(b) - game.u2().col(b_other);
  const double norm = h.norm();
  if (norm == 0.0) {
    throw Error(ErrorCode::kIdenticalColumns,
                "columns " + std::to_string(b) + " and " +
                    std::to_string(b_other) + " of u2 coincide");
  }
  HyperplaneEstimate est;
  est.normal = h / norm;
  est.inside_action = b;
  est.outside_action = b_other;
  est.accuracy = 0.0;
  est.raw_norm = norm;
  return est;
}

HalfspaceSet::HalfspaceSet(int m, double floor_value)
    : normals(0, m), margins(0), floor(floor_value) {}

void HalfspaceSet::Add(const Vector& normal, double margin) {
  if (normal.size() != dim()) {
    throw Error(ErrorCode::kInvalidArgument, "normal dimension mismatch");
  }
  normals.conservativeResize(size() + 1, Eigen::NoChange);
  normals.row(size() - 1) = normal.transpose();
  margins.conservativeResize(margins.size() + 1);
  margins[margins.size() - 1] = margin;
}

bool HalfspaceSet::Contains(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  if (std::abs(x.sum() - 1.0) > tol) return false;
  if (x.minCoeff() < floor - tol) return false;
  for (int i = 0; i < size(); ++i) {
    if (normals.row(i).dot(x) < margins[i] - tol) return false;
  }
  return true;
}

HalfspaceSet TrueRegion(const GameInstance& game, int b, double floor) {
  HalfspaceSet region(game.m(), floor);
  for (int other = 0; other < game.n(); ++other) {
    if (other == b) continue;
    Vector h = game.u2().col(b) - game.u2().col(other);
    const double norm = h.norm();
    if (norm == 0.0) continue;
    region.Add(h / norm, 0.0);
  }
  return region;
}

ConstraintMatrices BuildConstraintMatrices(const GameInstance& game, int b) {
  const int m = game.m();
  const int n = game.n();
  ConstraintMatrices out;
  out.h.resize(n - 1, m);
  int r = 0;
  for (int other = 0; other < n; ++other) {
    if (other == b) continue;
    out.h.row(r++) = (game.u2().col(b) - game.u2().col(other)).transpose();
  }
  out.g.resize(n + m, m);
  out.g.topRows(n - 1) = out.h;
  out.g.row(n - 1).setOnes();
  out.g.bottomRows(m) = Matrix::Identity(m, m);
  return out;
}

namespace {

// Writes the region in the solver's standard form with y = x - floor.
template <typename T>
bool BuildRegionLp(const HalfspaceSet& region, LpProblem<T>* lp) {
  const int m = region.dim();
  const T f(region.floor);
  const T total = T(1) - T(m) * f;
  if (total < T(0)) return false;
  lp->a_ub.clear();
  lp->b_ub.clear();
  for (int i = 0; i < region.size(); ++i) {
    std::vector<T> row(m);
    T shift(0);
    for (int j = 0; j < m; ++j) {
      const T a(region.normals(i, j));
      row[j] = -a;
      shift += a * f;
    }
    lp->a_ub.push_back(std::move(row));
    lp->b_ub.push_back(shift - T(region.margins[i]));
  }
  lp->a_eq.assign(1, std::vector<T>(m, T(1)));
  lp->b_eq.assign(1, total);
  return true;
}

template <typename T>
double ToDouble(const T& v);
template <>
double ToDouble(const double& v) { return v; }
template <>
double ToDouble(const mpq_class& v) { return v.get_d(); }

template <typename T>
LpResult MaximizeIn(const Vector& objective, const HalfspaceSet& region) {
  LpProblem<T> lp;
  LpResult out;
  if (!BuildRegionLp(region, &lp)) return out;
  const int m = region.dim();
  lp.c.resize(m);
  for (int j = 0; j < m; ++j) lp.c[j] = T(objective[j]);
  LpSolution<T> sol = SolveLpLexicographic(lp);
  if (sol.status != LpStatus::kOptimal) return out;
  out.feasible = true;
  out.x.resize(m);
  for (int j = 0; j < m; ++j) {
    out.x[j] = std::max(region.floor, ToDouble(sol.y[j]) + region.floor);
  }
  out.x /= out.x.sum();
  out.value = objective.dot(out.x);
  return out;
}

}  // namespace

LpResult LpMaximize(const Vector& objective, const HalfspaceSet& region,
                    LpArithmetic arithmetic) {
  if (objective.size() != region.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "objective dimension mismatch");
  }
  if (arithmetic == LpArithmetic::kExact) return MaximizeIn<mpq_class>(objective, region);
  return MaximizeIn<double>(objective, region);
}

bool IsFeasible(const HalfspaceSet& region) {
  LpProblem<double> lp;
  if (!BuildRegionLp(region, &lp)) return false;
  lp.c.assign(region.dim(), 0.0);
  return SolveLp(lp).status == LpStatus::kOptimal;
}

double MinSingularValue(const Matrix& a) {
  if (a.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().minCoeff();
}

Vector ProjectOntoAffine(const Vector& x, const Matrix& h, const Vector& rhs) {
  const int m = static_cast<int>(x.size());
  if (h.rows() > 0 && h.cols() != m) {
    throw Error(ErrorCode::kInvalidArgument, "hyperplane dimension mismatch");
  }
  Matrix a(h.rows() + 1, m);
  if (h.rows() > 0) a.topRows(h.rows()) = h;
  a.row(h.rows()).setOnes();
  Vector c(h.rows() + 1);
  if (h.rows() > 0) c.head(h.rows()) = rhs;
  c[h.rows()] = 1.0;
  if (a.rows() > m || MinSingularValue(a) <= 1e-10) {
    throw Error(ErrorCode::kRankDeficient, "affine constraints are dependent");
  }
  const Matrix gram = a * a.transpose();
  const Vector lambda = gram.ldlt().solve(a * x - c);
  return x - a.transpose() * lambda;
}

Matrix TangentBasis(const Matrix& h, int m) {
  Matrix a(h.rows() + 1, m);
  if (h.rows() > 0) a.topRows(h.rows()) = h;
  a.row(h.rows()).setOnes();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > 1e-10) ++rank;
  }
  return svd.matrixV().rightCols(m - rank);
}

Vector SampleTangentGaussian(const Matrix& h, int m, double eta,
                             std::mt19937_64& rng) {
  if (!(eta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta must be positive");
  const Matrix basis = TangentBasis(h, m);
  if (basis.cols() == 0) {
    throw Error(ErrorCode::kNullSpaceEmpty, "tangent space has dimension 0");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector g(basis.cols());
  for (int i = 0; i < g.size(); ++i) g[i] = normal(rng);
  return eta * (basis * g);
}

Vector ProjectOntoRegion(const Vector& p, const HalfspaceSet& region) {
  const int m = region.dim();
  const int k = region.size();
  // Inequalities a_i x >= b_i: region normals, then the floor rows.
  Matrix a(k + m, m);
  Vector b(k + m);
  if (k > 0) a.topRows(k) = region.normals;
  a.bottomRows(m) = Matrix::Identity(m, m);
  if (k > 0) b.head(k) = region.margins;
  b.tail(m).setConstant(region.floor);

  LpResult start = LpMaximize(Vector::Zero(m), region);
  if (!start.feasible) return Vector();
  Vector x = start.x;
  if (region.Contains(p, 0.0)) return p;

  const int total = k + m;
  std::vector<int> working;
  auto stacked = [&](const std::vector<int>& rows) {
    Matrix mat(rows.size() + 1, m);
    mat.row(0).setOnes();
    for (std::size_t i = 0; i < rows.size(); ++i) mat.row(i + 1) = a.row(rows[i]);
    return mat;
  };
  auto rank_of = [](const Matrix& mat) {
    Eigen::ColPivHouseholderQR<Matrix> qr(mat);
    qr.setThreshold(1e-10);
    return static_cast<int>(qr.rank());
  };
  for (int i = 0; i < total; ++i) {
    if (std::abs(a.row(i).dot(x) - b[i]) > 1e-10) continue;
    std::vector<int> trial = working;
    trial.push_back(i);
    if (rank_of(stacked(trial)) == static_cast<int>(trial.size()) + 1) working = trial;
  }

  const int max_iter = 50 * (total + m);
  for (int iter = 0; iter < max_iter; ++iter) {
    const Matrix mat = stacked(working);
    const Vector g = x - p;
    // Multipliers of g = mat^T lambda in the least-squares sense.
    const Vector lambda =
        mat.transpose().completeOrthogonalDecomposition().solve(g);
    const Vector d = -(g - mat.transpose() * lambda);
    if (d.norm() <= 1e-13) {
      int drop = -1;
      double most_negative = -1e-12;
      for (std::size_t i = 0; i < working.size(); ++i) {
        if (lambda[i + 1] < most_negative) {
          most_negative = lambda[i + 1];
          drop = static_cast<int>(i);
        }
      }
      if (drop < 0) break;
      working.erase(working.begin() + drop);
      continue;
    }
    double step = 1.0;
    int block = -1;
    for (int i = 0; i < total; ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double ad = a.row(i).dot(d);
      if (ad >= -1e-15) continue;
      const double ratio = std::max(0.0, (b[i] - a.row(i).dot(x)) / ad);
      if (ratio < step) {
        step = ratio;
        block = i;
      }
    }
    x += step * d;
    if (block >= 0) working.push_back(block);
  }
  return x;
}

double DistToPolytope(const Vector& x, int b, const GameInstance& game) {
  if (game.m() > kMaxQpDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "distance queries are capped at m <= 16");
  }
  const HalfspaceSet region = TrueRegion(game, b);
  if (region.Contains(x, 0.0)) return 0.0;
  const Vector z = ProjectOntoRegion(x, region);
  if (z.size() == 0) return std::numeric_limits<double>::infinity();
  return (x - z).norm();
}

std::vector<int> SurroundingPolytopes(const Vector& x, double radius,
                                      const GameInstance& game) {
  if (radius < 0.0) throw Error(ErrorCode::kInvalidArgument, "radius must be >= 0");
  std::vector<int> out;
  for (int b = 0; b < game.n(); ++b) {
    if (DistToPolytope(x, b, game) <= radius + 1e-9) out.push_back(b);
  }
  return out;
}

}  // namespace lse
