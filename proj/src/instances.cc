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

#include "lse/instances.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "lse/error.h"

namespace lse {

GameInstance SmoothedPerturb(const GameInstance& base, double sigma,
                             std::uint64_t seed, bool clip) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix u2 = base.u2();
  for (int a = 0; a < u2.rows(); ++a) {
    for (int b = 0; b < u2.cols(); ++b) u2(a, b) += sigma * noise(rng);
  }
  if (clip) {
    u2 = u2.cwiseMax(0.0).cwiseMin(1.0);
    return GameInstance(base.u1(), u2, base.extended_range());
  }
  return GameInstance(base.u1(), u2, true);
}

GameInstance SmoothedInstance(int m, int n, double sigma, std::uint64_t seed,
                              SmoothedBase base) {
  if (m < 2 || n < 1) throw Error(ErrorCode::kInvalidArgument, "need m >= 2 and n >= 1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix u1(m, n), u2(m, n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < n; ++b) {
      u1(a, b) = unif(rng);
      u2(a, b) = base == SmoothedBase::kConstant ? 0.5 : unif(rng);
    }
  }
  // The unperturbed constant base has identical columns.
  return SmoothedPerturb(GameInstance(u1, u2, true), sigma, seed);
}

SmoothedBase ParseSmoothedBase(const std::string& name) {
  if (name == "uniform") return SmoothedBase::kUniform;
  if (name == "constant") return SmoothedBase::kConstant;
  throw Error(ErrorCode::kInvalidArgument, "unknown smoothed base: " + name);
}

int PathGame::OnPathAction(int i) const {
  const int ell = static_cast<int>(path.size());
  if (i < 1 || i >= ell) throw Error(ErrorCode::kInvalidArgument, "edge index out of range");
  for (std::size_t k = 1; k < triples.size(); ++k) {
    const auto& t = triples[k];
    if (t[0] == path[i - 1] && t[1] == path[i] && t[2] == i) return static_cast<int>(k);
  }
  return -1;
}

PathGame LowerBoundGame(const PathGameSpec& spec) {
  const int ell = spec.ell;
  if (ell < 2) throw Error(ErrorCode::kSpecInvalid, "ell must be >= 2");
  const int m = spec.num_principal > 0 ? spec.num_principal : ell * ell;
  if (m < ell) throw Error(ErrorCode::kSpecInvalid, "fewer principal actions than path vertices");
  std::vector<int> path = spec.path;
  if (path.empty()) {
    std::mt19937_64 rng(spec.seed);
    std::vector<int> rest(m - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::shuffle(rest.begin(), rest.end(), rng);
    path.push_back(0);
    path.insert(path.end(), rest.begin(), rest.begin() + (ell - 1));
  }
  if (static_cast<int>(path.size()) != ell || path[0] != 0) {
    throw Error(ErrorCode::kSpecInvalid, "path must have ell entries starting at vertex 0");
  }
  std::vector<int> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.front() < 0 || sorted.back() >= m) {
    throw Error(ErrorCode::kSpecInvalid, "path vertices must be distinct principal actions");
  }

  std::vector<std::array<int, 3>> triples = {{-1, -1, 0}};
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      if (r == s) continue;
      for (int i = 1; i <= ell; ++i) triples.push_back({r, s, i});
    }
  const int n = static_cast<int>(triples.size());
  const double scale = 2.0 * ell + 1.0;
  Matrix u1 = Matrix::Zero(m, n);
  Matrix u2 = Matrix::Constant(m, n, -1.0);
  u2.col(0).setZero();
  u1(path[0], 0) = 1.0 / scale;
  for (int k = 1; k < n; ++k) {
    const auto [r, s, i] = triples[k];
    for (int a = 0; a < m; ++a) u1(a, k) = (a == s ? 1.0 + 2.0 * i : 2.0 * i) / scale;
    const bool on_path = i < ell && path[i - 1] == r && path[i] == s;
    if (on_path) {
      u2(r, k) = 1.0 / 9.0;
      u2(s, k) = 1.0 / 9.0;
    }
  }
  return PathGame{GameInstance(u1, u2, true), path, triples};
}

std::vector<std::string> FixtureNames() { return {"crossing_2x2", "tripoint_3", "dominant"}; }

GameInstance AnalyticFixture(const std::string& name) {
  if (name == "crossing_2x2") {
    Matrix u1(2, 2), u2(2, 2);
    u1 << 0, 1, 1, 0;
    u2 << 0.9, 0.1, 0.2, 0.8;
    return GameInstance(u1, u2);
  }
  if (name == "tripoint_3") {
    // Agent best-responds with the principal's heaviest action, so the
    // three regions meet at the barycenter.
    Matrix u1(3, 3);
    u1 << 0.2, 0.6, 0.1,
          0.5, 0.3, 0.9,
          0.1, 0.7, 0.4;
    Matrix u2 = Matrix::Constant(3, 3, 0.1) + 0.7 * Matrix::Identity(3, 3);
    return GameInstance(u1, u2);
  }
  if (name == "dominant") {
    Matrix u1(3, 3), u2(3, 3);
    u1 << 1.0, 0.2, 0.3,
          0.0, 0.5, 0.1,
          0.0, 0.4, 0.7;
    u2 << 0.90, 0.2, 0.1,
          0.80, 0.3, 0.5,
          0.95, 0.4, 0.6;
    return GameInstance(u1, u2);
  }
  throw Error(ErrorCode::kUnknownFixture, "unknown fixture '" + name + "'");
}

namespace {

nlohmann::json MatrixRows(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

[[noreturn]] void Violation(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

int ReadDim(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    Violation(std::string("missing integer field '") + key + "'");
  }
  const int v = doc[key].get<int>();
  if (v < 2) Violation(std::string("field '") + key + "' must be >= 2");
  return v;
}

// Accepts nested rows or a flat row-major array.
Matrix ReadMatrix(const nlohmann::json& doc, const char* key, int m, int n,
                  double lo, double hi) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    Violation(std::string("missing array field '") + key + "'");
  }
  const nlohmann::json& arr = doc[key];
  const bool flat = !arr.empty() && arr[0].is_number();
  Matrix out(m, n);
  if (flat) {
    if (static_cast<int>(arr.size()) != m * n) {
      Violation(std::string(key) + " has " + std::to_string(arr.size()) +
                " entries, expected m*n = " + std::to_string(m * n));
    }
  } else if (static_cast<int>(arr.size()) != m) {
    Violation(std::string(key) + " has " + std::to_string(arr.size()) +
              " rows, expected m = " + std::to_string(m));
  }
  for (int i = 0; i < m; ++i) {
    if (!flat && (!arr[i].is_array() || static_cast<int>(arr[i].size()) != n)) {
      Violation(std::string(key) + " row " + std::to_string(i) + " must have n = " +
                std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const nlohmann::json& e = flat ? arr[i * n + j] : arr[i][j];
      const std::string where =
          std::string(key) + " row " + std::to_string(i) + " column " + std::to_string(j);
      if (!e.is_number()) Violation(where + " is not a number");
      const double v = e.get<double>();
      if (!std::isfinite(v) || v < lo || v > hi) {
        std::ostringstream msg;
        msg << where << " = " << v << " outside [" << lo << ", " << hi << "]";
        Violation(msg.str());
      }
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace

nlohmann::json GameToJson(const GameInstance& game, const nlohmann::json& meta) {
  nlohmann::json doc;
  doc["m"] = game.m();
  doc["n"] = game.n();
  doc["extended_range"] = game.extended_range();
  doc["u1"] = MatrixRows(game.u1());
  doc["u2"] = MatrixRows(game.u2());
  doc["meta"] = meta.is_null() ? nlohmann::json::object() : meta;
  return doc;
}

GameFile GameFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) Violation("document is not a JSON object");
  const int m = ReadDim(doc, "m");
  const int n = ReadDim(doc, "n");
  bool extended = false;
  if (doc.contains("extended_range")) {
    if (!doc["extended_range"].is_boolean()) Violation("extended_range must be a boolean");
    extended = doc["extended_range"].get<bool>();
  }
  const double inf = std::numeric_limits<double>::infinity();
  Matrix u1 = ReadMatrix(doc, "u1", m, n, 0.0, 1.0);
  Matrix u2 = ReadMatrix(doc, "u2", m, n, extended ? -inf : 0.0, extended ? inf : 1.0);
  nlohmann::json meta = doc.contains("meta") ? doc["meta"] : nlohmann::json::object();
  // The path game repeats columns on purpose.
  const bool allow_duplicates = meta.is_object() && meta.value("generator", "") == "lower_bound";
  if (!allow_duplicates) {
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (u2.col(b) == u2.col(c)) {
          throw Error(ErrorCode::kIdenticalColumns,
                      "u2 columns " + std::to_string(b) + " and " + std::to_string(c) +
                          " are identical; their boundary is undefined");
        }
      }
  }
  return GameFile{GameInstance(u1, u2, extended), meta};
}

void SaveGame(const std::string& path, const GameInstance& game, const nlohmann::json& meta) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << GameToJson(game, meta).dump(2) << '\n';
}

GameFile LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    Violation(std::string("malformed JSON: ") + e.what());
  }
  return GameFromJson(doc);
}

}  // namespace lse
