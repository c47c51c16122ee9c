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

#include "wikipda/anchors.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace wikipda {

using ordered_json = nlohmann::ordered_json;

namespace {

void ValidateEntry(const AnchorEntry &entry, int ngram_max) {
  size_t n = PhraseLength(entry.phrase);
  if (n < 1 || n > static_cast<size_t>(ngram_max)) {
    throw InvalidArgument("phrase '" + entry.phrase + "' has " + std::to_string(n) +
                          " tokens, outside [1, " + std::to_string(ngram_max) + "]");
  }
  if (NormalizePhrase(entry.phrase) != entry.phrase) {
    throw InvalidArgument("phrase '" + entry.phrase + "' is not normalized");
  }
  if (entry.link_occurrences < 1) {
    throw InvalidArgument("phrase '" + entry.phrase + "' has no link occurrences");
  }
  if (entry.total_occurrences < entry.link_occurrences) {
    throw InvalidArgument("phrase '" + entry.phrase + "' is linked more often than it occurs");
  }
  if (entry.candidates.empty()) {
    throw InvalidArgument("phrase '" + entry.phrase + "' has no candidates");
  }
  int64_t sum = 0;
  for (const auto &[cid, count] : entry.candidates) {
    if (count < 1) throw InvalidArgument("non-positive candidate count for " + cid.str());
    sum += count;
  }
  if (sum != entry.link_occurrences) {
    throw InvalidArgument("candidate counts of '" + entry.phrase + "' do not sum to its link count");
  }
}

}  // namespace

std::vector<Token> TokenizeArticle(const Article &article) {
  std::vector<Span> spans;
  spans.reserve(article.links.size());
  for (const auto &link : article.links) spans.push_back(link.span);
  return TokenizeSegmented(article.text, spans);
}

const AnchorEntry *AnchorDictionary::Find(const std::string &phrase) const {
  auto it = entries_.find(phrase);
  return it == entries_.end() ? nullptr : &it->second;
}

void AnchorDictionary::Insert(AnchorEntry entry) {
  ValidateEntry(entry, ngram_max_);
  std::string key = entry.phrase;
  entries_[key] = std::move(entry);
}

void AnchorDictionary::Merge(const AnchorDictionary &other) {
  if (other.lang_ != lang_ || other.ngram_max_ != ngram_max_) {
    throw InvalidArgument("cannot merge anchor dictionaries of different shape");
  }
  for (const auto &[phrase, theirs] : other.entries_) {
    AnchorEntry &mine = entries_[phrase];
    mine.phrase = phrase;
    mine.total_occurrences += theirs.total_occurrences;
    mine.link_occurrences += theirs.link_occurrences;
    for (const auto &[cid, count] : theirs.candidates) mine.candidates[cid] += count;
  }
}

void AnchorDictionary::Validate() const {
  for (const auto &[phrase, entry] : entries_) {
    if (phrase != entry.phrase) throw InvalidArgument("dictionary key mismatch for " + phrase);
    ValidateEntry(entry, ngram_max_);
  }
}

void AnchorDictionary::Write(std::ostream &out) const {
  std::vector<const AnchorEntry *> sorted;
  sorted.reserve(entries_.size());
  for (const auto &[phrase, entry] : entries_) sorted.push_back(&entry);
  std::sort(sorted.begin(), sorted.end(),
            [](const AnchorEntry *a, const AnchorEntry *b) { return a->phrase < b->phrase; });
  for (const AnchorEntry *entry : sorted) {
    ordered_json record;
    record["lang"] = lang_;
    record["phrase"] = entry->phrase;
    record["total"] = entry->total_occurrences;
    record["linked"] = entry->link_occurrences;
    ordered_json candidates = ordered_json::array();
    for (const auto &[cid, count] : entry->candidates) {
      candidates.push_back({{"qid", cid.str()}, {"count", count}});
    }
    record["candidates"] = std::move(candidates);
    out << record.dump() << '\n';
  }
  if (!out) throw IoError("failed writing anchor dictionary");
}

AnchorDictionary AnchorDictionary::Read(std::istream &in, const std::string &source,
                                        int ngram_max) {
  AnchorDictionary dict;
  dict.ngram_max_ = ngram_max;
  bool have_lang = false;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      ordered_json record = ordered_json::parse(line);
      std::string lang = record.at("lang").get<std::string>();
      if (!have_lang) {
        dict.lang_ = lang;
        have_lang = true;
      } else if (lang != dict.lang_) {
        throw InvalidArgument("mixed languages '" + dict.lang_ + "' and '" + lang + "'");
      }
      AnchorEntry entry;
      entry.phrase = record.at("phrase").get<std::string>();
      entry.total_occurrences = record.at("total").get<int64_t>();
      entry.link_occurrences = record.at("linked").get<int64_t>();
      for (const auto &c : record.at("candidates")) {
        ConceptId id = ConceptId::Parse(c.at("qid").get<std::string>());
        auto [it, inserted] = entry.candidates.emplace(id, c.at("count").get<int64_t>());
        if (!inserted) throw InvalidArgument("duplicate candidate " + id.str());
      }
      if (dict.entries_.count(entry.phrase)) {
        throw InvalidArgument("duplicate phrase '" + entry.phrase + "'");
      }
      dict.Insert(std::move(entry));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return dict;
}

AnchorDictionary AnchorDictionary::ReadFile(const std::string &path, int ngram_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Read(in, path, ngram_max);
}

AnchorDictionary BuildDictionary(std::span<const Article> articles, const std::string &lang,
                                 int ngram_max) {
  if (ngram_max < 1) throw InvalidArgument("ngram_max must be >= 1");
  AnchorDictionary dict(lang, ngram_max);
  std::unordered_map<std::string, AnchorEntry> entries;

  // Pass 1: link anchors and their targets.
  for (const Article &article : articles) {
    if (article.lang != lang) {
      throw InvalidArgument("article " + article.id.str() + " is in '" + article.lang +
                            "', expected '" + lang + "'");
    }
    for (const ExtractedLink &link : article.links) {
      std::string phrase = NormalizePhrase(link.anchor);
      size_t n = PhraseLength(phrase);
      if (n < 1 || n > static_cast<size_t>(ngram_max)) continue;
      AnchorEntry &entry = entries[phrase];
      entry.phrase = phrase;
      entry.link_occurrences++;
      entry.candidates[link.target]++;
    }
  }

  // Pass 2: every textual occurrence of a known anchor phrase, counted once
  // per starting token.
  for (const Article &article : articles) {
    std::vector<Token> tokens = TokenizeArticle(article);
    for (size_t i = 0; i < tokens.size(); ++i) {
      std::string phrase;
      for (size_t n = 1; n <= static_cast<size_t>(ngram_max) && i + n <= tokens.size(); ++n) {
        if (n > 1) phrase.push_back(' ');
        phrase += tokens[i + n - 1].norm;
        auto it = entries.find(phrase);
        if (it != entries.end()) it->second.total_occurrences++;
      }
    }
  }

  for (auto &[phrase, entry] : entries) dict.Insert(std::move(entry));
  return dict;
}

bool Eligible(const AnchorEntry &entry, double threshold, int max_candidates) {
  if (threshold < 0.0 || threshold > 1.0) throw InvalidArgument("threshold must lie in [0, 1]");
  if (max_candidates < 1) throw InvalidArgument("max_candidates must be >= 1");
  return entry.link_probability() >= threshold &&
         entry.candidates.size() <= static_cast<size_t>(max_candidates);
}

}  // namespace wikipda
