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

#ifndef LSE_LP_H_
#define LSE_LP_H_

// Dense two-phase simplex with Bland's rule, templated over the scalar so
// the same code runs in double precision and over GMP rationals.
//
//   maximize c^T y  s.t.  A_ub y <= b_ub,  A_eq y = b_eq,  y >= 0.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace lse {

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static bool Positive(double v) { return v > 1e-11; }
  static bool Negative(double v) { return v < -1e-11; }
  static double FeasibilityTolerance() { return 1e-9; }
  static double TieTolerance() { return 1e-12; }
};

template <>
struct ScalarTraits<mpq_class> {
  static bool Positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool Negative(const mpq_class& v) { return sgn(v) < 0; }
  static mpq_class FeasibilityTolerance() { return 0; }
  static mpq_class TieTolerance() { return 0; }
};

template <typename T>
struct LpProblem {
  std::vector<T> c;
  std::vector<std::vector<T>> a_ub;
  std::vector<T> b_ub;
  std::vector<std::vector<T>> a_eq;
  std::vector<T> b_eq;

  std::size_t num_vars() const { return c.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<T> y;
  T value{};
};

namespace internal {

template <typename T>
class Tableau {
 public:
  using Traits = ScalarTraits<T>;

  // Rows hold [coefficients | rhs]; the objective row is kept separately as
  // reduced costs z_j - c_j (entering candidates have a negative entry).
  std::vector<std::vector<T>> rows;
  std::vector<T> objective;
  std::vector<std::size_t> basis;
  std::size_t num_cols = 0;

  T& rhs(std::size_t r) { return rows[r][num_cols]; }

  void Pivot(std::size_t pr, std::size_t pc) {
    const T inv = T(1) / rows[pr][pc];
    for (auto& v : rows[pr]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pr) continue;
      const T f = rows[r][pc];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j <= num_cols; ++j) rows[r][j] -= f * rows[pr][j];
    }
    const T f = objective[pc];
    if (f != T(0)) {
      for (std::size_t j = 0; j <= num_cols; ++j) objective[j] -= f * rows[pr][j];
    }
    basis[pr] = pc;
  }

  // Runs Bland's rule over columns [0, allowed). Returns false if unbounded.
  bool Optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (Traits::Negative(objective[j])) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows.size();
      T best_ratio{};
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!Traits::Positive(rows[r][enter])) continue;
        T ratio = rows[r][num_cols] / rows[r][enter];
        if (leave == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows.size()) return false;
      Pivot(leave, enter);
    }
  }

  // Rebuilds the reduced-cost row for maximizing `cost` over the basis.
  void SetObjective(const std::vector<T>& cost) {
    objective.assign(num_cols + 1, T(0));
    for (std::size_t j = 0; j < cost.size(); ++j) objective[j] = -cost[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t b = basis[r];
      const T cb = b < cost.size() ? cost[b] : T(0);
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j <= num_cols; ++j) objective[j] += cb * rows[r][j];
    }
  }
};

}  // namespace internal

template <typename T>
LpSolution<T> SolveLp(const LpProblem<T>& lp) {
  using Traits = ScalarTraits<T>;
  const std::size_t nv = lp.num_vars();
  const std::size_t nub = lp.a_ub.size();
  const std::size_t neq = lp.a_eq.size();
  const std::size_t nrows = nub + neq;

  // Columns: structural | slacks | artificials.
  const std::size_t slack0 = nv;
  const std::size_t art0 = nv + nub;

  internal::Tableau<T> tab;
  tab.rows.assign(nrows, {});
  tab.basis.assign(nrows, 0);
  std::vector<bool> needs_art(nrows, false);
  std::size_t num_art = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    const bool ub = r < nub;
    const T rhs = ub ? lp.b_ub[r] : lp.b_eq[r - nub];
    needs_art[r] = !ub || rhs < T(0);
    if (needs_art[r]) ++num_art;
  }
  tab.num_cols = art0 + num_art;
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < nrows; ++r) {
    const bool ub = r < nub;
    const auto& coef = ub ? lp.a_ub[r] : lp.a_eq[r - nub];
    T rhs = ub ? lp.b_ub[r] : lp.b_eq[r - nub];
    auto& row = tab.rows[r];
    row.assign(tab.num_cols + 1, T(0));
    for (std::size_t j = 0; j < nv; ++j) row[j] = coef[j];
    if (ub) row[slack0 + r] = T(1);
    if (rhs < T(0)) {
      for (auto& v : row) v = -v;
      rhs = -rhs;
    }
    row[tab.num_cols] = rhs;
    if (needs_art[r]) {
      row[next_art] = T(1);
      tab.basis[r] = next_art++;
    } else {
      tab.basis[r] = slack0 + r;
    }
  }

  LpSolution<T> out;
  if (num_art > 0) {
    std::vector<T> phase1(tab.num_cols, T(0));
    for (std::size_t j = art0; j < tab.num_cols; ++j) phase1[j] = T(-1);
    tab.SetObjective(phase1);
    tab.Optimize(tab.num_cols);
    // objective[rhs] holds the phase-one value, i.e. minus the artificial sum.
    if (Traits::Negative(tab.objective[tab.num_cols] +
                         Traits::FeasibilityTolerance())) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < tab.rows.size();) {
      if (tab.basis[r] < art0) {
        ++r;
        continue;
      }
      std::size_t pc = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (Traits::Positive(tab.rows[r][j]) || Traits::Negative(tab.rows[r][j])) {
          pc = j;
          break;
        }
      }
      if (pc < art0) {
        tab.Pivot(r, pc);
        ++r;
      } else {
        tab.rows.erase(tab.rows.begin() + static_cast<std::ptrdiff_t>(r));
        tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  tab.SetObjective(lp.c);
  if (!tab.Optimize(art0)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.y.assign(nv, T(0));
  for (std::size_t r = 0; r < tab.rows.size(); ++r) {
    if (tab.basis[r] < nv) out.y[tab.basis[r]] = tab.rows[r][tab.num_cols];
  }
  out.value = T(0);
  for (std::size_t j = 0; j < nv; ++j) out.value += lp.c[j] * out.y[j];
  return out;
}

// Optimizes c, then among optimal points picks the lexicographically smallest
// y by minimizing y_0, y_1, ... in turn with the earlier values pinned.
template <typename T>
LpSolution<T> SolveLpLexicographic(const LpProblem<T>& lp) {
  using Traits = ScalarTraits<T>;
  LpSolution<T> best = SolveLp(lp);
  if (best.status != LpStatus::kOptimal) return best;
  const std::size_t nv = lp.num_vars();
  LpProblem<T> aux = lp;
  // c^T y >= value - tol
  std::vector<T> neg_c(nv);
  for (std::size_t j = 0; j < nv; ++j) neg_c[j] = -lp.c[j];
  aux.a_ub.push_back(neg_c);
  aux.b_ub.push_back(-best.value + Traits::TieTolerance());
  for (std::size_t k = 0; k < nv; ++k) {
    aux.c.assign(nv, T(0));
    aux.c[k] = T(-1);
    LpSolution<T> s = SolveLp(aux);
    if (s.status != LpStatus::kOptimal) break;
    std::vector<T> row(nv, T(0));
    row[k] = T(1);
    aux.a_ub.push_back(row);
    aux.b_ub.push_back(s.y[k] + Traits::TieTolerance());
    best.y = s.y;
  }
  best.value = T(0);
  for (std::size_t j = 0; j < nv; ++j) best.value += lp.c[j] * best.y[j];
  return best;
}

}  // namespace lse

#endif  // LSE_LP_H_
