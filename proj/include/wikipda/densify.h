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

// Link densification: disambiguating plain-text anchor phrases with factor
// model scores and turning articles into bags of links.

#ifndef WIKIPDA_DENSIFY_H_
#define WIKIPDA_DENSIFY_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wikipda/anchors.h"
#include "wikipda/corpus.h"
#include "wikipda/factorize.h"

namespace wikipda {

enum class Provenance { kExisting, kDensified };

struct LinkCount {
  int64_t existing = 0;   // occurrences from links present in the markup
  int64_t densified = 0;  // occurrences added by densification

  int64_t total() const { return existing + densified; }
  friend bool operator==(const LinkCount &, const LinkCount &) = default;
};

// Multiset of concepts representing one article.
struct BagOfLinks {
  ConceptId id;
  std::string lang;
  std::map<ConceptId, LinkCount> counts;  // every entry has total() >= 1

  void Add(const ConceptId &target, Provenance provenance, int64_t n = 1);
  int64_t size() const;
  int64_t existing_size() const;
  // kExisting when at least one occurrence came from an existing link.
  Provenance provenance(const ConceptId &target) const;

  friend bool operator==(const BagOfLinks &, const BagOfLinks &) = default;
};

// Bag made of an article's existing links only.
BagOfLinks SparseBag(const Article &article);

// argmax over candidates of score(source, candidate). Ties go to the higher
// candidate count, then to the lexicographically smaller ConceptId.
// Candidates missing from the model are skipped; nullopt when no candidate
// (or the source) is indexed.
std::optional<ConceptId> Disambiguate(const FactorModel &model, const ConceptId &source,
                                      const AnchorEntry &entry);

struct DensifyOptions {
  double link_threshold = kDefaultLinkThreshold;
  int max_candidates = kDefaultMaxCandidates;
  int ngram_min = 1;  // shorter phrases are never linked
};

// Greedy left-to-right longest-match linking of eligible anchor phrases
// (n = ngram_max down to ngram_min). Existing link spans are hard boundaries and
// contribute their own targets.
BagOfLinks DensifyArticle(const Article &article, const AnchorDictionary &dict,
                          const FactorModel &model, const DensifyOptions &options = {});

struct DensifyStats {
  int64_t sparse_links = 0;
  int64_t densified_links = 0;  // total bag size after densification
  double ratio() const {
    return sparse_links == 0 ? 1.0
                             : static_cast<double>(densified_links) /
                                   static_cast<double>(sparse_links);
  }
};

// Densifies every article; output order follows input order.
std::vector<BagOfLinks> DensifyCorpus(std::span<const Article> articles,
                                      const AnchorDictionary &dict, const FactorModel &model,
                                      const DensifyOptions &options, int threads,
                                      DensifyStats *stats);

// One JSON record per line:
//   {"qid":..,"lang":..,"links":[{"qid":..,"count":..,"existing":..}]}
std::string SerializeBag(const BagOfLinks &bag);
void WriteBags(std::ostream &out, std::span<const BagOfLinks> bags);
std::vector<BagOfLinks> ReadBags(std::istream &in, const std::string &source);
std::vector<BagOfLinks> ReadBagsFile(const std::string &path);

}  // namespace wikipda

#endif  // WIKIPDA_DENSIFY_H_
