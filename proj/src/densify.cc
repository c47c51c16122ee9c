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

#include "wikipda/densify.h"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace wikipda {

using ordered_json = nlohmann::ordered_json;

void BagOfLinks::Add(const ConceptId &target, Provenance provenance, int64_t n) {
  if (n < 1) throw InvalidArgument("bag counts must be positive");
  LinkCount &c = counts[target];
  (provenance == Provenance::kExisting ? c.existing : c.densified) += n;
}

int64_t BagOfLinks::size() const {
  int64_t n = 0;
  for (const auto &[cid, c] : counts) n += c.total();
  return n;
}

int64_t BagOfLinks::existing_size() const {
  int64_t n = 0;
  for (const auto &[cid, c] : counts) n += c.existing;
  return n;
}

Provenance BagOfLinks::provenance(const ConceptId &target) const {
  auto it = counts.find(target);
  return it != counts.end() && it->second.existing > 0 ? Provenance::kExisting
                                                       : Provenance::kDensified;
}

BagOfLinks SparseBag(const Article &article) {
  BagOfLinks bag;
  bag.id = article.id;
  bag.lang = article.lang;
  for (const ExtractedLink &link : article.links) bag.Add(link.target, Provenance::kExisting);
  return bag;
}

std::optional<ConceptId> Disambiguate(const FactorModel &model, const ConceptId &source,
                                      const AnchorEntry &entry) {
  auto source_ordinal = model.index().Find(source);
  if (!source_ordinal) return std::nullopt;
  std::optional<ConceptId> best;
  double best_score = 0.0;
  int64_t best_count = 0;
  // candidates iterate in ConceptId order, so only strict improvements
  // replace the current best.
  for (const auto &[candidate, count] : entry.candidates) {
    auto target = model.index().Find(candidate);
    if (!target) continue;
    double score = model.ScoreOrdinals(*source_ordinal, *target);
    if (!best || score > best_score || (score == best_score && count > best_count)) {
      best = candidate;
      best_score = score;
      best_count = count;
    }
  }
  return best;
}

BagOfLinks DensifyArticle(const Article &article, const AnchorDictionary &dict,
                          const FactorModel &model, const DensifyOptions &options) {
  BagOfLinks bag = SparseBag(article);
  std::vector<Token> tokens = TokenizeArticle(article);
  const auto &links = article.links;
  const size_t ngram_max = static_cast<size_t>(dict.ngram_max());
  const size_t ngram_min = static_cast<size_t>(std::max(options.ngram_min, 1));
  size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].segment >= 0) {
      ++i;
      continue;
    }
    // First existing link starting at or after this token; no n-gram may
    // reach into it.
    auto next_link = std::lower_bound(
        links.begin(), links.end(), tokens[i].span.end,
        [](const ExtractedLink &l, size_t offset) { return l.span.begin < offset; });
    size_t limit = next_link == links.end() ? article.text.size() : next_link->span.begin;
    size_t run = 0;
    while (run < ngram_max && i + run < tokens.size() && tokens[i + run].segment < 0 &&
           tokens[i + run].span.end <= limit) {
      ++run;
    }
    bool matched = false;
    for (size_t n = run; n >= ngram_min && !matched; --n) {
      std::string phrase = tokens[i].norm;
      for (size_t k = 1; k < n; ++k) {
        phrase.push_back(' ');
        phrase += tokens[i + k].norm;
      }
      const AnchorEntry *entry = dict.Find(phrase);
      if (entry == nullptr || !Eligible(*entry, options.link_threshold, options.max_candidates)) {
        continue;
      }
      auto target = Disambiguate(model, article.id, *entry);
      if (!target) continue;
      bag.Add(*target, Provenance::kDensified);
      i += n;
      matched = true;
    }
    if (!matched) ++i;
  }
  return bag;
}

std::vector<BagOfLinks> DensifyCorpus(std::span<const Article> articles,
                                      const AnchorDictionary &dict, const FactorModel &model,
                                      const DensifyOptions &options, int threads,
                                      DensifyStats *stats) {
  std::vector<BagOfLinks> bags(articles.size());
  ParallelFor(articles.size(), threads, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) bags[i] = DensifyArticle(articles[i], dict, model, options);
  });
  if (stats != nullptr) {
    for (const BagOfLinks &bag : bags) {
      stats->sparse_links += bag.existing_size();
      stats->densified_links += bag.size();
    }
  }
  return bags;
}

std::string SerializeBag(const BagOfLinks &bag) {
  ordered_json record;
  record["qid"] = bag.id.str();
  record["lang"] = bag.lang;
  ordered_json links = ordered_json::array();
  for (const auto &[cid, c] : bag.counts) {
    links.push_back({{"qid", cid.str()}, {"count", c.total()}, {"existing", c.existing}});
  }
  record["links"] = std::move(links);
  return record.dump();
}

void WriteBags(std::ostream &out, std::span<const BagOfLinks> bags) {
  for (const BagOfLinks &bag : bags) out << SerializeBag(bag) << '\n';
  if (!out) throw IoError("failed writing bags of links");
}

std::vector<BagOfLinks> ReadBags(std::istream &in, const std::string &source) {
  std::vector<BagOfLinks> bags;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      ordered_json record = ordered_json::parse(line);
      BagOfLinks bag;
      bag.id = ConceptId::Parse(record.at("qid").get<std::string>());
      bag.lang = record.at("lang").get<std::string>();
      for (const auto &link : record.at("links")) {
        ConceptId id = ConceptId::Parse(link.at("qid").get<std::string>());
        int64_t count = link.at("count").get<int64_t>();
        int64_t existing = link.value("existing", int64_t{0});
        if (count < 1 || existing < 0 || existing > count) {
          throw InvalidArgument("invalid counts for " + id.str());
        }
        if (bag.counts.count(id)) throw InvalidArgument("duplicate concept " + id.str());
        bag.counts[id] = LinkCount{existing, count - existing};
      }
      bags.push_back(std::move(bag));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return bags;
}

std::vector<BagOfLinks> ReadBagsFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return ReadBags(in, path);
}

}  // namespace wikipda
