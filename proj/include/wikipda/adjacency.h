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

// IDF-weighted hyperlink adjacency matrix.
//
// Rows are link sources, columns link targets, both indexed by one shared
// ConceptIndex. An entry (i, j) is stored iff article i links to j, with
// weight -ln(d_j / N), where d_j counts distinct articles linking to j and
// N is the number of articles. Entries of weight zero (d_j == N) are not
// stored.

#ifndef WIKIPDA_ADJACENCY_H_
#define WIKIPDA_ADJACENCY_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wikipda/concept_id.h"
#include "wikipda/corpus.h"

namespace wikipda {

struct MatrixEntry {
  uint32_t row = 0;
  uint32_t col = 0;
  double weight = 0.0;

  friend bool operator==(const MatrixEntry &, const MatrixEntry &) = default;
};

class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;

  // Builds from explicit entries; duplicates are rejected, non-positive
  // weights dropped. `num_articles` is N.
  static AdjacencyMatrix FromEntries(std::string lang, ConceptIndex index, uint64_t num_articles,
                                     std::vector<MatrixEntry> entries);

  const std::string &lang() const { return lang_; }
  const ConceptIndex &index() const { return index_; }
  // Number of articles N used in the weighting.
  uint64_t num_articles() const { return num_articles_; }
  // Matrix dimension (sources and targets share the index).
  size_t dimension() const { return index_.size(); }
  size_t nnz() const { return cols_.size(); }

  // Row i as parallel spans of column ordinals and weights, sorted by
  // column.
  std::span<const uint32_t> RowCols(size_t row) const;
  std::span<const double> RowWeights(size_t row) const;

  // Weight at (row, col) or 0.
  double At(size_t row, size_t col) const;

  // All stored entries in row-major order.
  std::vector<MatrixEntry> Entries() const;

  // Copy with every weight multiplied by factor > 0.
  AdjacencyMatrix Scaled(double factor) const;

  // Copy with the given cells removed. Weights of the remaining entries are
  // not recomputed.
  AdjacencyMatrix WithoutEntries(std::span<const MatrixEntry> removed) const;

  // Transposed CSR (rows become targets). Shares the index.
  AdjacencyMatrix Transposed() const;

  // Text form: header "# lang N dimension nnz", then the concept index one
  // per line ("@ ordinal qid"), then "row<TAB>col<TAB>weight" lines with
  // shortest round-trip weights.
  void Write(std::ostream &out) const;
  static AdjacencyMatrix Read(std::istream &in, const std::string &source);
  static AdjacencyMatrix ReadFile(const std::string &path);

  friend bool operator==(const AdjacencyMatrix &, const AdjacencyMatrix &) = default;

 private:
  std::string lang_;
  ConceptIndex index_;
  uint64_t num_articles_ = 0;
  std::vector<uint64_t> row_offsets_{0};
  std::vector<uint32_t> cols_;
  std::vector<double> weights_;
};

// Builds A from a single-language corpus. Duplicate links within an article
// collapse. Articles that only appear as link targets get an index entry
// after all source articles. Throws InvalidArgument on an empty corpus or
// mixed languages.
AdjacencyMatrix BuildAdjacency(std::span<const Article> articles);

}  // namespace wikipda

#endif  // WIKIPDA_ADJACENCY_H_
