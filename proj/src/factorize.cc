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

#include "wikipda/factorize.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace wikipda {

namespace {

constexpr char kMagic[] = "WPDA";
constexpr uint32_t kVersion = 1;

double StandardNormal(std::mt19937_64 &rng) {
  double u1 = 1.0 - Uniform01(rng);  // (0, 1]
  double u2 = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Solves G x = b for symmetric positive semi-definite G.
Eigen::VectorXd SolveSpd(const Eigen::MatrixXd &g, const Eigen::VectorXd &b) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  return g.ldlt().solve(b);
}

// One half-sweep: every row x_i of `out` becomes the ridge solution against
// the frozen factor `fixed`, using the stored entries of `m` row i as
// targets.
void SolveRows(const AdjacencyMatrix &m, const RowMatrix &fixed, double lambda,
               const std::vector<std::vector<uint32_t>> &held, int threads, RowMatrix *out) {
  const Eigen::Index r = fixed.cols();
  Eigen::MatrixXd gram = fixed.transpose() * fixed;
  gram.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> shared(gram);
  const bool shared_ok = shared.info() == Eigen::Success;
  ParallelFor(m.dimension(), threads, [&](size_t begin, size_t end) {
    Eigen::VectorXd rhs(r);
    for (size_t i = begin; i < end; ++i) {
      rhs.setZero();
      auto cols = m.RowCols(i);
      auto weights = m.RowWeights(i);
      for (size_t k = 0; k < cols.size(); ++k) {
        rhs.noalias() += weights[k] * fixed.row(cols[k]).transpose();
      }
      if (held[i].empty()) {
        out->row(static_cast<Eigen::Index>(i)) =
            (shared_ok ? Eigen::VectorXd(shared.solve(rhs)) : SolveSpd(gram, rhs)).transpose();
      } else {
        Eigen::MatrixXd local = gram;
        for (uint32_t j : held[i]) {
          local.noalias() -= fixed.row(j).transpose() * fixed.row(j);
        }
        out->row(static_cast<Eigen::Index>(i)) = SolveSpd(local, rhs).transpose();
      }
    }
  });
}

}  // namespace

FactorModel::FactorModel(std::string lang, ConceptIndex index, RowMatrix u, RowMatrix v)
    : lang_(std::move(lang)), index_(std::move(index)), u_(std::move(u)), v_(std::move(v)) {
  if (u_.rows() != static_cast<Eigen::Index>(index_.size()) || v_.rows() != u_.rows() ||
      v_.cols() != u_.cols()) {
    throw InvalidArgument("factor shapes do not match the concept index");
  }
  if (!u_.allFinite() || !v_.allFinite()) throw InvalidArgument("non-finite factor entries");
}

std::optional<double> FactorModel::Score(const ConceptId &source, const ConceptId &target) const {
  auto i = index_.Find(source);
  auto j = index_.Find(target);
  if (!i || !j) return std::nullopt;
  return ScoreOrdinals(*i, *j);
}

double FactorModel::ScoreOrdinals(size_t source, size_t target) const {
  return u_.row(static_cast<Eigen::Index>(source)).dot(v_.row(static_cast<Eigen::Index>(target)));
}

void FactorModel::ScaleScores(double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  u_ *= factor;
}

void FactorModel::Write(std::ostream &out) const {
  BinaryWriter w(out);
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kVersion);
  w.String(lang_);
  w.U32(static_cast<uint32_t>(rank()));
  w.U64(index_.size());
  for (const ConceptId &id : index_.concepts()) w.String(id.str());
  for (const RowMatrix *m : {&u_, &v_}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index k = 0; k < m->cols(); ++k) w.F32(static_cast<float>((*m)(i, k)));
    }
  }
  w.U64(seed);
  w.F64(lambda);
  w.U32(static_cast<uint32_t>(iterations));
}

FactorModel FactorModel::Read(std::istream &in, const std::string &source) {
  BinaryReader r(in, source);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) throw ParseError(source + ": not a factor model");
  uint32_t version = r.U32();
  if (version != kVersion) {
    throw ParseError(source + ": unsupported factor model version " + std::to_string(version));
  }
  std::string lang = r.String();
  uint32_t rank = r.U32();
  uint64_t rows = r.U64();
  if (rank == 0) throw ParseError(source + ": zero rank");
  ConceptIndex index;
  for (uint64_t i = 0; i < rows; ++i) {
    try {
      if (index.Add(ConceptId::Parse(r.String())) != i) {
        throw ParseError(source + ": duplicate concept in index");
      }
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ": " + e.what());
    }
  }
  RowMatrix u(rows, rank), v(rows, rank);
  for (RowMatrix *m : {&u, &v}) {
    for (uint64_t i = 0; i < rows; ++i) {
      for (uint32_t k = 0; k < rank; ++k) {
        (*m)(static_cast<Eigen::Index>(i), k) = static_cast<double>(r.F32());
      }
    }
  }
  FactorModel model;
  try {
    model = FactorModel(std::move(lang), std::move(index), std::move(u), std::move(v));
  } catch (const InvalidArgument &e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!r.AtEnd()) {
    model.seed = r.U64();
    model.lambda = r.F64();
    model.iterations = static_cast<int>(r.U32());
  }
  return model;
}

FactorModel FactorModel::ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Read(in, path);
}

void FactorModel::WriteFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  Write(out);
  if (!out) throw IoError("cannot write " + path);
}

std::string FactorModel::DebugJson() const {
  nlohmann::ordered_json j;
  j["lang"] = lang_;
  j["rank"] = rank();
  j["seed"] = seed;
  j["lambda"] = lambda;
  j["iterations"] = iterations;
  j["objective_trace"] = objective_trace;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < index_.size(); ++i) {
    nlohmann::ordered_json row;
    row["qid"] = index_.at(i).str();
    auto ui = static_cast<Eigen::Index>(i);
    row["u"] = std::vector<double>(u_.row(ui).begin(), u_.row(ui).end());
    row["v"] = std::vector<double>(v_.row(ui).begin(), v_.row(ui).end());
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

double AlsObjective(const AdjacencyMatrix &a, const RowMatrix &u, const RowMatrix &v,
                    double lambda, std::span<const MatrixEntry> held_out) {
  double norm_a = 0.0, cross = 0.0;
  for (size_t i = 0; i < a.dimension(); ++i) {
    auto cols = a.RowCols(i);
    auto weights = a.RowWeights(i);
    for (size_t k = 0; k < cols.size(); ++k) {
      norm_a += weights[k] * weights[k];
      cross += weights[k] * u.row(static_cast<Eigen::Index>(i)).dot(v.row(cols[k]));
    }
  }
  Eigen::MatrixXd gu = u.transpose() * u;
  Eigen::MatrixXd gv = v.transpose() * v;
  double model_norm = (gu.array() * gv.array()).sum();
  double held = 0.0;
  for (const MatrixEntry &e : held_out) {
    double s = u.row(e.row).dot(v.row(e.col));
    held += s * s;
  }
  return norm_a - 2.0 * cross + model_norm - held +
         lambda * (u.squaredNorm() + v.squaredNorm());
}

FactorModel Factorize(const AdjacencyMatrix &a, const FactorizeOptions &options,
                      std::span<const MatrixEntry> held_out) {
  const size_t dim = a.dimension();
  if (options.rank < 1) throw InvalidArgument("rank must be >= 1");
  if (static_cast<size_t>(options.rank) > dim) {
    throw InvalidArgument("rank " + std::to_string(options.rank) + " exceeds matrix dimension " +
                          std::to_string(dim));
  }
  if (!(options.lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (options.iterations < 1) throw InvalidArgument("iterations must be >= 1");
  const double lambda = std::max(options.lambda, kLambdaFloor);
  const Eigen::Index r = options.rank;

  std::vector<std::vector<uint32_t>> held_by_row(dim), held_by_col(dim);
  for (const MatrixEntry &e : held_out) {
    if (e.row >= dim || e.col >= dim) throw InvalidArgument("held-out cell outside the matrix");
    if (a.At(e.row, e.col) != 0.0) throw InvalidArgument("held-out cell is still stored in A");
    held_by_row[e.row].push_back(e.col);
    held_by_col[e.col].push_back(e.row);
  }

  std::mt19937_64 rng(options.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  RowMatrix u(dim, r), v(dim, r);
  for (RowMatrix *m : {&u, &v}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index k = 0; k < r; ++k) (*m)(i, k) = scale * StandardNormal(rng);
    }
  }

  AdjacencyMatrix at = a.Transposed();
  std::vector<double> trace{AlsObjective(a, u, v, lambda, held_out)};
  for (int it = 0; it < options.iterations; ++it) {
    SolveRows(a, v, lambda, held_by_row, options.threads, &u);
    SolveRows(at, u, lambda, held_by_col, options.threads, &v);
    trace.push_back(AlsObjective(a, u, v, lambda, held_out));
    LogInfo("als sweep " + std::to_string(it + 1) + " objective " + FormatDouble(trace.back()));
  }

  FactorModel model(a.lang(), a.index(), std::move(u), std::move(v));
  model.seed = options.seed;
  model.lambda = options.lambda;
  model.iterations = options.iterations;
  model.objective_trace = std::move(trace);
  return model;
}

}  // namespace wikipda
