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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wikipda/densify.h"
#include "wikipda/eval.h"

namespace wikipda {

namespace {

constexpr uint64_t kMaskStream = 0x6d61736b;  // "mask"

// Keeps the most frequent phrase; ties go to the smaller phrase.
template <typename Key>
std::map<Key, std::string> MostFrequent(const std::map<Key, std::map<std::string, int64_t>> &counts) {
  std::map<Key, std::string> best;
  for (const auto &[key, phrases] : counts) {
    const std::string *winner = nullptr;
    int64_t winner_count = 0;
    for (const auto &[phrase, n] : phrases) {
      if (winner == nullptr || n > winner_count) {
        winner = &phrase;
        winner_count = n;
      }
    }
    best.emplace(key, *winner);
  }
  return best;
}

nlohmann::ordered_json NullableNumber(double x) {
  return std::isnan(x) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(x);
}

}  // namespace

AnchorAssociation AnchorAssociation::FromArticles(std::span<const Article> articles) {
  std::map<std::pair<ConceptId, ConceptId>, std::map<std::string, int64_t>> counts;
  for (const Article &article : articles) {
    for (const ExtractedLink &link : article.links) {
      std::string phrase = NormalizePhrase(link.anchor);
      if (phrase.empty()) continue;
      counts[{article.id, link.target}][phrase]++;
    }
  }
  AnchorAssociation out;
  out.per_article_ = true;
  out.by_link_ = MostFrequent(counts);
  return out;
}

AnchorAssociation AnchorAssociation::FromDictionary(const AnchorDictionary &dict) {
  std::map<ConceptId, std::map<std::string, int64_t>> counts;
  for (const auto &[phrase, entry] : dict.entries()) {
    for (const auto &[target, n] : entry.candidates) counts[target][phrase] += n;
  }
  AnchorAssociation out;
  out.by_target_ = MostFrequent(counts);
  return out;
}

void AnchorAssociation::Add(const ConceptId &source, const ConceptId &target, std::string phrase) {
  per_article_ = true;
  by_link_[{source, target}] = std::move(phrase);
}

std::optional<std::string> AnchorAssociation::Find(const ConceptId &source,
                                                   const ConceptId &target) const {
  if (per_article_) {
    auto it = by_link_.find({source, target});
    if (it == by_link_.end()) return std::nullopt;
    return it->second;
  }
  auto it = by_target_.find(target);
  if (it == by_target_.end()) return std::nullopt;
  return it->second;
}

std::string DisambigBucket::name() const {
  return "[" + std::to_string(min_candidates) + "," +
         (max_candidates == 0 ? std::string("inf") : std::to_string(max_candidates)) + "]";
}

bool DisambigBucket::Contains(size_t candidates) const {
  return candidates >= static_cast<size_t>(min_candidates) &&
         (max_candidates == 0 || candidates <= static_cast<size_t>(max_candidates));
}

double DisambigBucket::accuracy() const {
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(correct) / static_cast<double>(count);
}

double DisambigBucket::random_baseline() const {
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : baseline_sum / static_cast<double>(count);
}

const DisambigBucket &DisambigReport::bucket(int min_candidates, int max_candidates) const {
  for (const DisambigBucket &b : buckets) {
    if (b.min_candidates == min_candidates && b.max_candidates == max_candidates) return b;
  }
  throw InvalidArgument("no such bucket");
}

std::string DisambigReport::ToJson() const {
  nlohmann::ordered_json j;
  j["lang"] = lang;
  j["mask_fraction"] = mask_fraction;
  j["seed"] = seed;
  j["stored_entries"] = stored_entries;
  j["masked"] = masked;
  j["excluded"] = excluded;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const DisambigBucket &b : buckets) {
    nlohmann::ordered_json e;
    e["bucket"] = b.name();
    e["accuracy"] = NullableNumber(b.accuracy());
    e["random_baseline"] = NullableNumber(b.random_baseline());
    e["count"] = b.count;
    list.push_back(std::move(e));
  }
  j["buckets"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string DisambigReport::ToTsv() const {
  std::ostringstream out;
  out << "lang";
  for (const DisambigBucket &b : buckets) out << '\t' << b.name();
  out << '\n' << lang;
  for (const DisambigBucket &b : buckets) {
    out << '\t';
    if (b.count == 0) {
      out << "-";
    } else {
      out << FormatDouble(b.accuracy()) << " (" << FormatDouble(b.random_baseline()) << ")";
    }
  }
  out << '\n';
  return out.str();
}

DisambigReport EvalDisambiguation(const AdjacencyMatrix &a, const AnchorDictionary &dict,
                                  const AnchorAssociation &association,
                                  const DisambigOptions &options) {
  if (!(options.mask_fraction > 0.0 && options.mask_fraction < 1.0)) {
    throw InvalidArgument("mask_fraction must be in (0, 1)");
  }
  if (!(options.score_scale > 0.0)) throw InvalidArgument("score_scale must be positive");
  DisambigReport report;
  report.lang = a.lang();
  report.mask_fraction = options.mask_fraction;
  report.seed = options.factorize.seed;
  report.stored_entries = static_cast<int64_t>(a.nnz());
  report.buckets = {{1, 0}, {2, 0}, {1, 10}, {2, 10}};
  if (a.nnz() == 0) throw InvalidArgument("no maskable entries: the adjacency matrix is empty");

  std::vector<MatrixEntry> entries = a.Entries();
  size_t m = static_cast<size_t>(
      std::llround(options.mask_fraction * static_cast<double>(entries.size())));
  m = std::clamp<size_t>(m, 1, entries.size());
  std::mt19937_64 rng(MixSeed(options.factorize.seed, kMaskStream));
  std::vector<size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  order.resize(m);
  std::sort(order.begin(), order.end());
  std::vector<MatrixEntry> masked;
  masked.reserve(m);
  for (size_t k : order) masked.push_back(entries[k]);
  report.masked = static_cast<int64_t>(m);

  // Resolve anchors before paying for the factorization.
  const ConceptIndex &index = a.index();
  std::vector<std::pair<const MatrixEntry *, const AnchorEntry *>> cases;
  for (const MatrixEntry &e : masked) {
    auto phrase = association.Find(index.at(e.row), index.at(e.col));
    const AnchorEntry *anchor = phrase ? dict.Find(*phrase) : nullptr;
    if (anchor == nullptr || !anchor->candidates.count(index.at(e.col))) {
      report.excluded++;
      continue;
    }
    cases.emplace_back(&e, anchor);
  }
  if (cases.empty()) {
    throw InvalidArgument("no maskable entries: none of the " + std::to_string(m) +
                          " masked links has an anchor naming its target");
  }

  AdjacencyMatrix reduced = a.WithoutEntries(masked);
  FactorModel model = options.masked_unobserved
                          ? Factorize(reduced, options.factorize, masked)
                          : Factorize(reduced, options.factorize);
  if (options.score_scale != 1.0) model.ScaleScores(options.score_scale);

  for (const auto &[e, anchor] : cases) {
    const ConceptId &source = index.at(e->row);
    const ConceptId &target = index.at(e->col);
    auto choice = Disambiguate(model, source, *anchor);
    const bool correct = choice && *choice == target;
    const size_t n = anchor->candidates.size();
    report.cases.push_back({source, target, anchor->phrase, n, choice, correct});
    for (DisambigBucket &b : report.buckets) {
      if (!b.Contains(n)) continue;
      b.count++;
      b.correct += correct ? 1 : 0;
      b.baseline_sum += 1.0 / static_cast<double>(n);
    }
  }
  return report;
}

}  // namespace wikipda
