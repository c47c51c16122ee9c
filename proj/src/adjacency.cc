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

#include "wikipda/adjacency.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wikipda {

AdjacencyMatrix AdjacencyMatrix::FromEntries(std::string lang, ConceptIndex index,
                                             uint64_t num_articles,
                                             std::vector<MatrixEntry> entries) {
  AdjacencyMatrix m;
  m.lang_ = std::move(lang);
  m.index_ = std::move(index);
  m.num_articles_ = num_articles;
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry &a, const MatrixEntry &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  const size_t dim = m.index_.size();
  m.row_offsets_.assign(dim + 1, 0);
  for (size_t k = 0; k < entries.size(); ++k) {
    const MatrixEntry &e = entries[k];
    if (e.row >= dim || e.col >= dim) throw InvalidArgument("matrix entry outside the index");
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw InvalidArgument("duplicate matrix entry");
    }
    if (!std::isfinite(e.weight)) throw InvalidArgument("non-finite matrix weight");
    if (e.weight <= 0.0) continue;
    m.cols_.push_back(e.col);
    m.weights_.push_back(e.weight);
    m.row_offsets_[e.row + 1]++;
  }
  for (size_t r = 0; r < dim; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

std::span<const uint32_t> AdjacencyMatrix::RowCols(size_t row) const {
  return std::span<const uint32_t>(cols_).subspan(row_offsets_[row],
                                                  row_offsets_[row + 1] - row_offsets_[row]);
}

std::span<const double> AdjacencyMatrix::RowWeights(size_t row) const {
  return std::span<const double>(weights_).subspan(row_offsets_[row],
                                                   row_offsets_[row + 1] - row_offsets_[row]);
}

double AdjacencyMatrix::At(size_t row, size_t col) const {
  auto cols = RowCols(row);
  auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<uint32_t>(col));
  if (it == cols.end() || *it != col) return 0.0;
  return RowWeights(row)[static_cast<size_t>(it - cols.begin())];
}

std::vector<MatrixEntry> AdjacencyMatrix::Entries() const {
  std::vector<MatrixEntry> out;
  out.reserve(nnz());
  for (size_t r = 0; r < dimension(); ++r) {
    auto cols = RowCols(r);
    auto weights = RowWeights(r);
    for (size_t k = 0; k < cols.size(); ++k) {
      out.push_back({static_cast<uint32_t>(r), cols[k], weights[k]});
    }
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::Scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  AdjacencyMatrix m = *this;
  for (double &w : m.weights_) w *= factor;
  return m;
}

AdjacencyMatrix AdjacencyMatrix::WithoutEntries(std::span<const MatrixEntry> removed) const {
  std::set<std::pair<uint32_t, uint32_t>> drop;
  for (const auto &e : removed) drop.emplace(e.row, e.col);
  std::vector<MatrixEntry> kept;
  kept.reserve(nnz());
  for (const MatrixEntry &e : Entries()) {
    if (!drop.count({e.row, e.col})) kept.push_back(e);
  }
  return FromEntries(lang_, index_, num_articles_, std::move(kept));
}

AdjacencyMatrix AdjacencyMatrix::Transposed() const {
  std::vector<MatrixEntry> entries = Entries();
  for (auto &e : entries) std::swap(e.row, e.col);
  return FromEntries(lang_, index_, num_articles_, std::move(entries));
}

void AdjacencyMatrix::Write(std::ostream &out) const {
  out << "# " << lang_ << ' ' << num_articles_ << ' ' << dimension() << ' ' << nnz() << '\n';
  for (size_t i = 0; i < dimension(); ++i) out << "@ " << i << ' ' << index_.at(i) << '\n';
  for (const MatrixEntry &e : Entries()) {
    out << e.row << '\t' << e.col << '\t' << FormatDouble(e.weight) << '\n';
  }
  if (!out) throw IoError("failed writing adjacency matrix");
}

AdjacencyMatrix AdjacencyMatrix::Read(std::istream &in, const std::string &source) {
  auto fail = [&](size_t line, const std::string &what) {
    return ParseError(source + ":" + std::to_string(line) + ": " + what);
  };
  std::string line;
  size_t line_number = 1;
  if (!std::getline(in, line)) throw fail(1, "empty adjacency file");
  std::istringstream header(line);
  std::string hash, lang;
  uint64_t n = 0, dim = 0, nnz = 0;
  if (!(header >> hash >> lang >> n >> dim >> nnz) || hash != "#") {
    throw fail(1, "bad header");
  }
  ConceptIndex index;
  for (uint64_t i = 0; i < dim; ++i) {
    ++line_number;
    if (!std::getline(in, line)) throw fail(line_number, "truncated concept index");
    std::istringstream row(line);
    std::string at, qid;
    uint64_t ordinal;
    if (!(row >> at >> ordinal >> qid) || at != "@" || ordinal != i) {
      throw fail(line_number, "bad concept index line");
    }
    try {
      if (index.Add(ConceptId::Parse(qid)) != i) throw fail(line_number, "duplicate concept");
    } catch (const InvalidArgument &e) {
      throw fail(line_number, e.what());
    }
  }
  std::vector<MatrixEntry> entries;
  entries.reserve(nnz);
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    MatrixEntry e;
    const char *p = line.data();
    const char *end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, e.row);
    if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != '\t') throw fail(line_number, "bad entry");
    auto r2 = std::from_chars(r1.ptr + 1, end, e.col);
    if (r2.ec != std::errc() || r2.ptr == end || *r2.ptr != '\t') throw fail(line_number, "bad entry");
    auto r3 = std::from_chars(r2.ptr + 1, end, e.weight);
    if (r3.ec != std::errc() || r3.ptr != end) throw fail(line_number, "bad entry weight");
    if (!(e.weight > 0.0)) throw fail(line_number, "non-positive weight");
    entries.push_back(e);
  }
  if (entries.size() != nnz) throw fail(line_number, "entry count does not match header");
  try {
    return FromEntries(lang, std::move(index), n, std::move(entries));
  } catch (const InvalidArgument &e) {
    throw ParseError(source + ": " + e.what());
  }
}

AdjacencyMatrix AdjacencyMatrix::ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Read(in, path);
}

AdjacencyMatrix BuildAdjacency(std::span<const Article> articles) {
  if (articles.empty()) throw InvalidArgument("cannot build an adjacency matrix from an empty corpus");
  const std::string &lang = articles.front().lang;
  ConceptIndex index;
  for (const Article &a : articles) {
    if (a.lang != lang) throw InvalidArgument("adjacency corpus mixes languages");
    index.Add(a.id);
  }
  const uint64_t num_sources = index.size();
  // Distinct (source, target) pairs; a concept with several articles in the
  // same corpus shares one row.
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (const Article &a : articles) {
    uint32_t row = static_cast<uint32_t>(*index.Find(a.id));
    for (const ExtractedLink &link : a.links) {
      pairs.emplace_back(row, static_cast<uint32_t>(index.Add(link.target)));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const double n = static_cast<double>(num_sources);
  std::vector<uint64_t> in_degree(index.size(), 0);
  for (const auto &[row, col] : pairs) in_degree[col]++;
  std::vector<MatrixEntry> entries;
  entries.reserve(pairs.size());
  for (const auto &[row, col] : pairs) {
    double weight = -std::log(static_cast<double>(in_degree[col]) / n);
    entries.push_back({row, col, weight});
  }
  return AdjacencyMatrix::FromEntries(lang, std::move(index), num_sources,
                                      std::move(entries));
}

}  // namespace wikipda
