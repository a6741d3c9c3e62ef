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

#ifndef LSE_GEOMETRY_H_
#define LSE_GEOMETRY_H_

#include <random>
#include <vector>

#include "lse/game.h"

namespace lse {

// Unit normal of a separating hyperplane, oriented so that the inside
// action's polytope lies on the nonnegative side.
struct HyperplaneEstimate {
  Vector normal;
  int inside_action = -1;
  int outside_action = -1;
  double accuracy = 0.0;
  double raw_norm = 1.0;  // ||u_b - u_b'||_2 before normalization
};

// Exact hyperplane u_b - u_b' normalized to unit length.
HyperplaneEstimate Hyperplane(const GameInstance& game, int b, int b_other);

// {x : normals x >= margins, 1^T x = 1, x >= floor}.
struct HalfspaceSet {
  Matrix normals;  // k x m
  Vector margins;  // k
  double floor = 0.0;

  HalfspaceSet() = default;
  HalfspaceSet(int m, double floor_value);

  int dim() const { return static_cast<int>(normals.cols()); }
  int size() const { return static_cast<int>(normals.rows()); }
  void Add(const Vector& normal, double margin);
  bool Contains(const Vector& x, double tol = 1e-9) const;
};

// P_b with exact unit normals and zero margins. Columns identical to b give
// no constraint and are skipped.
HalfspaceSet TrueRegion(const GameInstance& game, int b, double floor = 0.0);

struct ConstraintMatrices {
  Matrix h;  // (n-1) x m, rows u_b - u_b'
  Matrix g;  // h stacked on the all-ones row and the identity
};

ConstraintMatrices BuildConstraintMatrices(const GameInstance& game, int b);

enum class LpArithmetic { kDouble, kExact };

struct LpResult {
  bool feasible = false;
  Vector x;
  double value = 0.0;
};

// Maximizes <objective, x> over the region; the optimal vertex is the
// lexicographically smallest among ties.
LpResult LpMaximize(const Vector& objective, const HalfspaceSet& region,
                    LpArithmetic arithmetic = LpArithmetic::kDouble);

bool IsFeasible(const HalfspaceSet& region);

// Euclidean projection onto {z : h z = rhs, 1^T z = 1}.
Vector ProjectOntoAffine(const Vector& x, const Matrix& h, const Vector& rhs);

// Orthonormal basis (columns) of the null space of [h; 1^T].
Matrix TangentBasis(const Matrix& h, int m);

// Gaussian step in the tangent space of {h z = 0, 1^T z = 0}.
Vector SampleTangentGaussian(const Matrix& h, int m, double eta,
                             std::mt19937_64& rng);

double MinSingularValue(const Matrix& a);

// Euclidean projection onto a halfspace set by a primal active-set QP.
// Returns an empty vector when the region is empty.
Vector ProjectOntoRegion(const Vector& x, const HalfspaceSet& region);

inline constexpr int kMaxQpDimension = 16;

// dist_2(x, P_b); +infinity when P_b is empty.
double DistToPolytope(const Vector& x, int b, const GameInstance& game);

std::vector<int> SurroundingPolytopes(const Vector& x, double radius,
                                      const GameInstance& game);

}  // namespace lse

#endif  // LSE_GEOMETRY_H_
