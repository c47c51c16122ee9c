// Copyright 2026 The WikiPDA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Low-rank factorization A ~ U V^T by alternating least squares.
//
// The loss covers every cell of A, unstored cells having target 0:
//
//   sum_{i,j} (a_ij - u_i . v_j)^2 + lambda (|U|^2 + |V|^2)
//
// With uniform confidence each half-sweep is a ridge regression sharing one
// Gramian (V^T V + lambda I) across all rows, so the dense matrix is never
// formed. Cells passed as `held_out` are excluded from the loss entirely
// (treated as unobserved rather than zero); rows touching them get a
// Gramian corrected by the held-out columns.

#ifndef WIKIPDA_FACTORIZE_H_
#define WIKIPDA_FACTORIZE_H_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wikipda/adjacency.h"

namespace wikipda {

inline constexpr int kDefaultRank = 150;
inline constexpr double kDefaultLambda = 0.05;
inline constexpr int kDefaultAlsIterations = 10;
inline constexpr double kLambdaFloor = 1e-9;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct FactorizeOptions {
  int rank = kDefaultRank;
  double lambda = kDefaultLambda;
  int iterations = kDefaultAlsIterations;
  uint64_t seed = 1;
  int threads = 1;
};

class FactorModel {
 public:
  FactorModel() = default;
  FactorModel(std::string lang, ConceptIndex index, RowMatrix u, RowMatrix v);

  const std::string &lang() const { return lang_; }
  const ConceptIndex &index() const { return index_; }
  int rank() const { return static_cast<int>(u_.cols()); }
  const RowMatrix &u() const { return u_; }
  const RowMatrix &v() const { return v_; }

  uint64_t seed = 0;
  double lambda = 0.0;
  int iterations = 0;
  // Objective after initialization and after every full sweep.
  std::vector<double> objective_trace;

  // u_i . v_j, or nullopt when either concept is not indexed.
  std::optional<double> Score(const ConceptId &source, const ConceptId &target) const;
  double ScoreOrdinals(size_t source, size_t target) const;

  // Multiplies every score by factor > 0 (scales U).
  void ScaleScores(double factor);

  // Binary layout (little-endian): "WPDA", u32 version, lang (u32 length +
  // bytes), u32 r, u64 rows, rows length-prefixed concept ids, U and V as
  // row-major float32. A trailer carries u64 seed, f64 lambda, u32
  // iterations.
  void Write(std::ostream &out) const;
  static FactorModel Read(std::istream &in, const std::string &source);
  static FactorModel ReadFile(const std::string &path);
  void WriteFile(const std::string &path) const;

  // Human-readable dump for small models.
  std::string DebugJson() const;

 private:
  std::string lang_;
  ConceptIndex index_;
  RowMatrix u_;
  RowMatrix v_;
};

// Objective value of (U, V) on A, optionally excluding held-out cells.
double AlsObjective(const AdjacencyMatrix &a, const RowMatrix &u, const RowMatrix &v,
                    double lambda, std::span<const MatrixEntry> held_out = {});

// Throws InvalidArgument when rank < 1, rank > dimension, lambda < 0 or
// iterations < 1.
FactorModel Factorize(const AdjacencyMatrix &a, const FactorizeOptions &options,
                      std::span<const MatrixEntry> held_out = {});

}  // namespace wikipda

#endif  // WIKIPDA_FACTORIZE_H_
