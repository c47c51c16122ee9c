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

// Per-language anchor statistics: for each n-gram that has been used as a
// link anchor, how often it occurs in text, how often it is linked, and
// which concepts it links to.

#ifndef WIKIPDA_ANCHORS_H_
#define WIKIPDA_ANCHORS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>

#include "wikipda/concept_id.h"
#include "wikipda/corpus.h"
#include "wikipda/tokenizer.h"

namespace wikipda {

inline constexpr double kDefaultLinkThreshold = 0.065;
inline constexpr int kDefaultMaxCandidates = 10;
inline constexpr int kDefaultNgramMax = 4;

struct AnchorEntry {
  std::string phrase;             // normalized
  int64_t total_occurrences = 0;  // >= link_occurrences
  int64_t link_occurrences = 0;
  std::map<ConceptId, int64_t> candidates;  // sums to link_occurrences

  double link_probability() const {
    return total_occurrences == 0
               ? 0.0
               : static_cast<double>(link_occurrences) / static_cast<double>(total_occurrences);
  }

  friend bool operator==(const AnchorEntry &, const AnchorEntry &) = default;
};

class AnchorDictionary {
 public:
  AnchorDictionary() = default;
  AnchorDictionary(std::string lang, int ngram_max) : lang_(std::move(lang)), ngram_max_(ngram_max) {}

  const std::string &lang() const { return lang_; }
  int ngram_max() const { return ngram_max_; }
  size_t size() const { return entries_.size(); }

  const AnchorEntry *Find(const std::string &phrase) const;
  const std::unordered_map<std::string, AnchorEntry> &entries() const { return entries_; }

  // Inserts or replaces an entry after validating its invariants.
  void Insert(AnchorEntry entry);

  // Adds the counts of a partial dictionary built over another shard. Both
  // must agree on lang and ngram_max.
  void Merge(const AnchorDictionary &other);

  // Throws InvalidArgument on the first entry violating an invariant.
  void Validate() const;

  // One JSON record per line, sorted by phrase:
  //   {"lang":..,"phrase":..,"total":..,"linked":..,"candidates":[{"qid":..,"count":..}]}
  void Write(std::ostream &out) const;
  static AnchorDictionary Read(std::istream &in, const std::string &source,
                               int ngram_max = kDefaultNgramMax);
  static AnchorDictionary ReadFile(const std::string &path, int ngram_max = kDefaultNgramMax);

  friend bool operator==(const AnchorDictionary &a, const AnchorDictionary &b) {
    return a.lang_ == b.lang_ && a.ngram_max_ == b.ngram_max_ && a.entries_ == b.entries_;
  }

 private:
  std::string lang_;
  int ngram_max_ = kDefaultNgramMax;
  std::unordered_map<std::string, AnchorEntry> entries_;
};

// Counts anchors and their textual occurrences over a single-language
// corpus. Articles in other languages are rejected.
AnchorDictionary BuildDictionary(std::span<const Article> articles, const std::string &lang,
                                 int ngram_max = kDefaultNgramMax);

// Link probability at least `threshold` (inclusive) and at most
// `max_candidates` candidates.
bool Eligible(const AnchorEntry &entry, double threshold = kDefaultLinkThreshold,
              int max_candidates = kDefaultMaxCandidates);

// Tokens of an article with its link spans as hard token boundaries.
std::vector<Token> TokenizeArticle(const Article &article);

}  // namespace wikipda

#endif  // WIKIPDA_ANCHORS_H_
