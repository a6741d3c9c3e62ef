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

#include "lse/poly_search.h"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "lse/error.h"

namespace lse {
namespace {

struct Prober {
  Session& session;
  double alpha;
  double delta_sep;
  SearchStats* stats;

  int operator()(const Vector& x) {
    DriveAverageTo(session, x);
    ++stats->oracle_calls;
    return BrOracle(session, alpha, delta_sep);
  }
};

// log of the factor by which moving the average from p to q multiplies t
// when the played points may go down to `floor`.
double MoveCost(const Vector& p, const Vector& q, double floor) {
  double worst = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (q[i] < p[i]) worst = std::max(worst, (p[i] - q[i]) / std::max(q[i] - floor, 1e-300));
  }
  return std::log1p(worst);
}

// Greedy tour from `from` that always takes the cheapest move next; ties go
// to the nearer point.
std::vector<int> TourOrder(const std::vector<Vector>& pts, const Vector& from,
                           double floor) {
  std::vector<int> order;
  std::vector<bool> used(pts.size(), false);
  Vector cur = from;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    int best = -1;
    double best_c = std::numeric_limits<double>::infinity();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      const double c = MoveCost(cur, pts[i], floor);
      const double d = L1Distance(pts[i], cur);
      if (c < best_c - 1e-12 || (c <= best_c + 1e-12 && d < best_d)) {
        best_c = c;
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    used[best] = true;
    order.push_back(best);
    cur = pts[best];
  }
  return order;
}

bool AboveFloor(const Vector& x, double floor) { return x.minCoeff() >= floor; }

}  // namespace

Matrix SearchSpace::Normals() const {
  const int m = static_cast<int>(x_star.size());
  Matrix h(discovered.size(), m);
  for (std::size_t i = 0; i < discovered.size(); ++i) h.row(i) = discovered[i].normal;
  return h;
}

Vector SearchSpace::Offsets() const {
  Vector r(discovered.size());
  for (std::size_t i = 0; i < discovered.size(); ++i) r[i] = alpha_schedule[i];
  return r;
}

int DefaultSampleCount(int m) {
  return static_cast<int>(std::ceil(8.0 * m * m * std::log(m + 1.0)));
}

std::vector<double> AccuracySchedule(double alpha, double sigma_lb, int m,
                                     double min_frac) {
  std::vector<double> out;
  const double ratio = std::min(1.0, sigma_lb / std::pow(m, 3));
  for (int j = 1; j <= m; ++j) {
    const double a = alpha * std::pow(ratio, m - j + 1);
    out.push_back(std::max(a, min_frac * alpha));
  }
  return out;
}

double SampleScale(double alpha_j, double sigma_lb, int m, double rho,
                   double eta_const, double kappa) {
  const double theory = eta_const * alpha_j * std::pow(m, 4) / (sigma_lb * sigma_lb);
  return std::max(rho, std::min(theory, kappa * rho));
}

HyperplaneEstimate FitHyperplane(const Matrix& y, const Vector& witness) {
  const int m = static_cast<int>(y.cols());
  if (m < 2 || witness.size() != m) {
    throw Error(ErrorCode::kInvalidArgument, "fit needs m >= 2 and a witness of size m");
  }
  if (y.rows() < m - 1) {
    throw Error(ErrorCode::kRankTooLow, "need at least m - 1 points, got " +
                                            std::to_string(y.rows()));
  }
  Eigen::JacobiSVD<Matrix> svd(y, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  // Rows span at most min(k, m) directions; pad missing singular values with 0.
  Vector sv = Vector::Zero(m);
  sv.head(s.size()) = s;
  const double scale = std::max(sv[0], 1e-300);
  if (sv[m - 2] <= 1e-12 * scale) {
    throw Error(ErrorCode::kRankTooLow, "points span fewer than m - 1 directions");
  }
  if (sv[m - 2] - sv[m - 1] <= 1e-12 * scale) {
    throw Error(ErrorCode::kAmbiguousSign, "smallest singular direction is not unique");
  }
  Vector h = svd.matrixV().col(m - 1);
  const double side = h.dot(witness);
  if (std::abs(side) < 1e-12) {
    throw Error(ErrorCode::kAmbiguousSign, "witness lies on the fitted hyperplane");
  }
  if (side < 0.0) h = -h;
  HyperplaneEstimate est;
  est.normal = h;
  return est;
}

std::optional<HyperplaneEstimate> FindAHyperplane(Session& session, SearchSpace& space,
                                                  int d, double alpha,
                                                  const SearchParams& params,
                                                  SearchResult* log) {
  const int m = static_cast<int>(space.x_star.size());
  const int j = static_cast<int>(space.discovered.size());
  SearchStats& stats = log->stats;
  const Matrix h = space.Normals();
  if (m - 1 - j <= 0) {
    throw Error(ErrorCode::kNullSpaceEmpty, "no tangent directions left");
  }
  const double eta = space.eta_schedule[j];
  const double alpha_j = space.alpha_schedule[j];
  std::mt19937_64& rng = session.rng();
  Prober probe{session, alpha, params.delta_sep, &stats};
  stats.tangent_dims.push_back(m - 1 - j);

  std::vector<Vector> pts;
  int redraws = 0;
  while (static_cast<int>(pts.size()) < d && redraws <= 10 * d) {
    Vector p = space.base_point + SampleTangentGaussian(h, m, eta, rng);
    if (!AboveFloor(p, std::max(params.gamma, params.face_margin * eta))) {
      ++redraws;
      continue;
    }
    pts.push_back(p);
  }
  stats.redraws += redraws;
  stats.samples += static_cast<int>(pts.size());

  std::vector<int> labels(pts.size(), -1);
  for (int i : TourOrder(pts, session.avg(), session.gamma())) labels[i] = probe(pts[i]);
  for (const Vector& p : pts) log->samples.emplace_back(p, j);

  std::vector<bool> known(session.game().n(), false);
  known[space.inside_action] = true;
  for (const HyperplaneEstimate& e : space.discovered) known[e.outside_action] = true;
  const double radius = params.cluster_radius * eta * std::sqrt(double(m));
  std::map<int, std::vector<int>> clusters;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (known[labels[i]]) continue;
    if ((pts[i] - space.base_point).norm() > radius) continue;
    clusters[labels[i]].push_back(static_cast<int>(i));
  }
  if (clusters.empty()) return std::nullopt;
  int b_new = -1;
  std::size_t best = 0;
  for (const auto& [b, idx] : clusters) {
    if (idx.size() > best) {
      best = idx.size();
      b_new = b;
    }
  }
  const double need = std::max(1.0, std::ceil(d / (params.cluster_const * m)));
  if (static_cast<double>(best) < need) {
    ++stats.insufficient_clusters;
    return std::nullopt;
  }

  // Boundary points between b_new and the inside action. A first point c0
  // comes from bisecting a b_new sample against a nearby b sample; the rest
  // from pairs of independent full-dimensional probes around c0 at a scale
  // small enough to keep every move cheap.
  const int b = space.inside_action;
  const int want = params.crossings > 0 ? params.crossings : 2 * (m - 1) + 2;
  auto bisect = [&](Vector lo, Vector hi, double tol, Vector* out) {
    while (L1Distance(lo, hi) > tol) {
      const Vector mid = 0.5 * (lo + hi);
      const int y = probe(mid);
      if (y == b_new) {
        lo = mid;
      } else if (y == b) {
        hi = mid;
      } else {
        return false;
      }
    }
    *out = 0.5 * (lo + hi);
    return true;
  };
  std::vector<std::pair<double, std::pair<int, int>>> pairs;
  for (int q : clusters[b_new]) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (labels[i] == b) {
        pairs.push_back({L1Distance(pts[q], pts[i]), {q, static_cast<int>(i)}});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  Vector c0;
  for (std::size_t k = 0; k < pairs.size() && k < 6 && c0.size() == 0; ++k) {
    Vector c;
    const double tol0 = std::max(1e-8, 1e-4 * eta);
    if (bisect(pts[pairs[k].second.first], pts[pairs[k].second.second], tol0, &c)) {
      c0 = c;
    } else {
      ++stats.failed_crossings;
    }
  }
  if (c0.size() == 0) {
    ++stats.insufficient_clusters;
    return std::nullopt;
  }
  const double room = c0.minCoeff() - session.gamma();
  const double scale = std::min(0.1 * eta, 0.05 * room);
  const double tol = std::max(1e-8, std::min(1e-4 * scale, 0.25 * alpha_j * m));
  const Matrix none(0, m);
  std::vector<Vector> crossings;
  Vector witness = Vector::Zero(m);
  int witnesses = 0;
  for (int attempt = 0; attempt < 12 * want && static_cast<int>(crossings.size()) < want;
       ++attempt) {
    const Vector plus = c0 + SampleTangentGaussian(none, m, scale, rng);
    const Vector minus = c0 + SampleTangentGaussian(none, m, scale, rng);
    if (!AboveFloor(plus, session.gamma() + 0.5 * room) ||
        !AboveFloor(minus, session.gamma() + 0.5 * room)) {
      continue;
    }
    const int lp = probe(plus), lm = probe(minus);
    Vector c;
    bool ok = false;
    if (lp == b_new && lm == b) {
      ok = bisect(plus, minus, tol, &c);
      witness += minus;
    } else if (lp == b && lm == b_new) {
      ok = bisect(minus, plus, tol, &c);
      witness += plus;
    } else if (lp == lm && (lp == b || lp == b_new)) {
      continue;
    }
    if (!ok) {
      ++stats.failed_crossings;
      continue;
    }
    ++witnesses;
    crossings.push_back(c);
  }
  if (static_cast<int>(crossings.size()) < m - 1 || witnesses == 0) {
    ++stats.insufficient_clusters;
    return std::nullopt;
  }
  Matrix y(crossings.size(), m);
  for (std::size_t i = 0; i < crossings.size(); ++i) y.row(i) = crossings[i];
  HyperplaneEstimate est;
  try {
    est = FitHyperplane(y, witness / witnesses);
  } catch (const Error&) {
    ++stats.insufficient_clusters;
    return std::nullopt;
  }
  est.inside_action = b;
  est.outside_action = b_new;
  est.accuracy = alpha_j;
  return est;
}

SearchResult SearchForPolytopes(Session& session, const Vector& x_star, double alpha,
                                double rho, const SearchParams& params) {
  const int m = session.game().m();
  if (x_star.size() != m) throw Error(ErrorCode::kInvalidArgument, "x_star dimension");
  if (!(alpha > 0.0) || !(rho > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha and rho must be > 0");
  }
  if (params.strict_radius && !(rho < alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "rho must be < alpha");
  }
  if (!(params.sigma_lb > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma_lb must be > 0");
  }
  SearchResult out;
  const std::uint64_t start = session.t();
  SearchSpace space;
  space.x_star = x_star;
  space.base_point = x_star;
  space.alpha_schedule = AccuracySchedule(alpha, params.sigma_lb, m, params.alpha_min_frac);
  for (double a : space.alpha_schedule) {
    space.eta_schedule.push_back(
        SampleScale(a, params.sigma_lb, m, rho, params.eta_const, params.kappa));
  }
  Prober probe{session, alpha, params.delta_sep, &out.stats};
  space.inside_action = probe(x_star);
  const int d = params.samples > 0 ? params.samples : DefaultSampleCount(m);
  while (static_cast<int>(space.discovered.size()) < m - 1) {
    ++out.stats.iterations;
    std::optional<HyperplaneEstimate> est =
        FindAHyperplane(session, space, d, alpha, params, &out);
    if (!est) break;
    space.discovered.push_back(*est);
    try {
      space.base_point = ProjectOntoAffine(x_star, space.Normals(), space.Offsets());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRankDeficient) throw;
      break;
    }
  }
  out.found = space.discovered;
  out.stats.rounds = session.t() - start;
  return out;
}

}  // namespace lse
