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

#include "wikipda/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace wikipda {

using ordered_json = nlohmann::ordered_json;

namespace {

// Splits a TSV line into exactly `n` fields or returns false.
bool SplitTsv(const std::string &line, size_t n, std::vector<std::string> *fields) {
  fields->clear();
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields->push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields->size() == n;
}

// Calls fn(fields, line_number) for every data line of a 3-column TSV.
template <typename Fn>
void ForEachTsvRow(std::istream &in, const std::string &source, Fn fn) {
  std::string line;
  std::vector<std::string> fields;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!SplitTsv(line, 3, &fields)) {
      throw ParseError(source + ":" + std::to_string(line_number) +
                       ": expected 3 tab-separated fields");
    }
    try {
      fn(fields, line_number);
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
}

bool IsLowercaseLang(const std::string &lang) {
  if (lang.empty()) return false;
  return std::none_of(lang.begin(), lang.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

}  // namespace

void ValidateArticle(const Article &article) {
  if (article.id.empty()) throw InvalidArgument("article without concept id");
  if (!IsLowercaseLang(article.lang)) {
    throw InvalidArgument("language code must be non-empty lowercase: '" + article.lang + "'");
  }
  size_t previous_end = 0;
  for (size_t i = 0; i < article.links.size(); ++i) {
    const ExtractedLink &link = article.links[i];
    if (link.target.empty()) throw InvalidArgument("link without target concept");
    if (link.span.begin >= link.span.end || link.span.end > article.text.size()) {
      throw InvalidArgument("link span [" + std::to_string(link.span.begin) + ", " +
                            std::to_string(link.span.end) + ") outside text");
    }
    if (i > 0 && link.span.begin < previous_end) {
      throw InvalidArgument("overlapping or unsorted link spans");
    }
    previous_end = link.span.end;
    if (article.text.compare(link.span.begin, link.span.size(), link.anchor) != 0) {
      throw InvalidArgument("anchor '" + link.anchor + "' does not match text at its span");
    }
  }
}

void RedirectMap::Add(const std::string &lang, std::string_view from, std::string_view to) {
  std::string source = NormalizeTitle(from);
  std::string target = NormalizeTitle(to);
  if (source.empty() || target.empty()) throw InvalidArgument("empty redirect title");
  entries_[lang][source] = target;
}

std::string RedirectMap::Resolve(const std::string &lang, std::string_view title) const {
  std::string current = NormalizeTitle(title);
  if (current.empty()) throw InvalidArgument("cannot resolve an empty title");
  auto lang_it = entries_.find(lang);
  if (lang_it == entries_.end()) return current;
  const auto &table = lang_it->second;
  std::vector<std::string> path{current};
  std::unordered_set<std::string> seen{current};
  while (true) {
    auto it = table.find(current);
    if (it == table.end()) return current;
    current = it->second;
    if (!seen.insert(current).second) {
      auto start = std::find(path.begin(), path.end(), current);
      std::vector<std::string> cycle(start, path.end());
      cycle.push_back(current);
      std::string message = "redirect cycle in '" + lang + "':";
      for (const auto &t : cycle) message += " " + t + (&t == &cycle.back() ? "" : " ->");
      throw RedirectCycleError(message, std::move(cycle));
    }
    path.push_back(current);
  }
}

size_t RedirectMap::size() const {
  size_t n = 0;
  for (const auto &[lang, table] : entries_) n += table.size();
  return n;
}

RedirectMap RedirectMap::Load(std::istream &in, const std::string &source) {
  RedirectMap map;
  ForEachTsvRow(in, source, [&](const std::vector<std::string> &f, size_t) {
    map.Add(f[0], f[1], f[2]);
  });
  return map;
}

RedirectMap RedirectMap::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open redirect table " + path);
  return Load(in, path);
}

void SitelinkMap::Add(const std::string &lang, std::string_view title, const ConceptId &cid) {
  std::string key = NormalizeTitle(title);
  if (key.empty()) throw InvalidArgument("empty sitelink title");
  auto [it, inserted] = entries_[lang].emplace(key, cid);
  if (!inserted && it->second != cid) {
    throw InvalidArgument("title '" + key + "' in '" + lang + "' maps to both " +
                          it->second.str() + " and " + cid.str());
  }
}

std::optional<ConceptId> SitelinkMap::Find(const std::string &lang, std::string_view title) const {
  auto lang_it = entries_.find(lang);
  if (lang_it == entries_.end()) return std::nullopt;
  auto it = lang_it->second.find(NormalizeTitle(title));
  if (it == lang_it->second.end()) return std::nullopt;
  return it->second;
}

size_t SitelinkMap::size() const {
  size_t n = 0;
  for (const auto &[lang, table] : entries_) n += table.size();
  return n;
}

SitelinkMap SitelinkMap::Load(std::istream &in, const std::string &source) {
  SitelinkMap map;
  ForEachTsvRow(in, source, [&](const std::vector<std::string> &f, size_t) {
    map.Add(f[0], f[1], ConceptId::Parse(f[2]));
  });
  return map;
}

SitelinkMap SitelinkMap::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sitelink table " + path);
  return Load(in, path);
}

std::optional<ConceptId> MapToConcept(const std::string &lang, std::string_view title,
                                      const SitelinkMap &sitelinks) {
  return sitelinks.Find(lang, title);
}

Article BuildArticle(const ConceptId &cid, const std::string &lang,
                     const std::string &title, std::string_view markup,
                     const RedirectMap &redirects, const SitelinkMap &sitelinks,
                     Diagnostics *diagnostics) {
  ParsedWikitext parsed = ParseWikitextLinks(markup, diagnostics);
  Article article;
  article.id = cid;
  article.lang = lang;
  article.title = title;
  article.text = std::move(parsed.text);
  for (WikiLink &link : parsed.links) {
    std::string resolved;
    try {
      resolved = redirects.Resolve(lang, link.target_title);
    } catch (const RedirectCycleError &) {
      if (diagnostics) diagnostics->Increment("redirect_cycle");
      continue;
    }
    auto target = MapToConcept(lang, resolved, sitelinks);
    if (!target) {
      if (diagnostics) diagnostics->Increment("unmapped_link");
      continue;
    }
    article.links.push_back({std::move(link.anchor), *target, link.span});
  }
  if (diagnostics) diagnostics->Increment("links", static_cast<int64_t>(article.links.size()));
  return article;
}

SourceFormat DetectFormat(const std::string &path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".xml") ? SourceFormat::kMediaWikiXml : SourceFormat::kCanonical;
}

namespace {

template <typename T>
T Field(const ordered_json &record, const char *name) {
  auto it = record.find(name);
  if (it == record.end()) throw InvalidArgument(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception &) {
    throw InvalidArgument(std::string("field '") + name + "' has the wrong type");
  }
}

Article ParseCanonicalRecord(const ordered_json &record, const RedirectMap &redirects,
                             const SitelinkMap &sitelinks, bool *dropped,
                             Diagnostics *diagnostics) {
  *dropped = false;
  if (!record.is_object()) throw InvalidArgument("record is not a JSON object");
  std::string qid = Field<std::string>(record, "qid");
  std::string lang = Field<std::string>(record, "lang");
  std::string title = Field<std::string>(record, "title");
  int64_t ns = Field<int64_t>(record, "ns");
  std::string text = Field<std::string>(record, "text");
  if (!IsLowercaseLang(lang)) throw InvalidArgument("lang must be non-empty lowercase");
  if (ns != 0) {
    if (diagnostics) diagnostics->Increment("dropped_namespace");
    *dropped = true;
    return {};
  }
  std::optional<ConceptId> cid;
  if (qid.empty()) {
    try {
      cid = MapToConcept(lang, redirects.Resolve(lang, title), sitelinks);
    } catch (const RedirectCycleError &) {
      if (diagnostics) diagnostics->Increment("redirect_cycle");
    }
    if (!cid) {
      if (diagnostics) diagnostics->Increment("dropped_unmapped_article");
      *dropped = true;
      return {};
    }
  } else {
    cid = ConceptId::Parse(qid);
  }
  if (!record.contains("links")) {
    return BuildArticle(*cid, lang, title, text, redirects, sitelinks, diagnostics);
  }
  Article article;
  article.id = *cid;
  article.lang = std::move(lang);
  article.title = std::move(title);
  article.text = std::move(text);
  const auto &links = record.at("links");
  if (!links.is_array()) throw InvalidArgument("field 'links' must be an array");
  for (const auto &entry : links) {
    if (!entry.is_object()) throw InvalidArgument("link entry is not an object");
    ExtractedLink link;
    link.anchor = Field<std::string>(entry, "anchor");
    link.target = ConceptId::Parse(Field<std::string>(entry, "target_qid"));
    int64_t start = Field<int64_t>(entry, "start");
    int64_t end = Field<int64_t>(entry, "end");
    if (start < 0 || end < 0) throw InvalidArgument("negative link offset");
    link.span = {static_cast<size_t>(start), static_cast<size_t>(end)};
    article.links.push_back(std::move(link));
  }
  std::stable_sort(article.links.begin(), article.links.end(),
                   [](const ExtractedLink &a, const ExtractedLink &b) {
                     return a.span.begin < b.span.begin;
                   });
  ValidateArticle(article);
  if (diagnostics) diagnostics->Increment("links", static_cast<int64_t>(article.links.size()));
  return article;
}

}  // namespace

void IngestCanonical(std::istream &in, const std::string &source,
                     const RedirectMap &redirects, const SitelinkMap &sitelinks,
                     const IngestOptions &options, const ArticleSink &sink,
                     Diagnostics *diagnostics) {
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (diagnostics) diagnostics->Increment("records");
    Article article;
    bool dropped = false;
    try {
      ordered_json record = ordered_json::parse(line);
      article = ParseCanonicalRecord(record, redirects, sitelinks, &dropped, diagnostics);
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    }
    if (dropped) continue;
    if (!options.lang.empty() && article.lang != options.lang) {
      if (diagnostics) diagnostics->Increment("dropped_language");
      continue;
    }
    if (diagnostics) diagnostics->Increment("articles");
    sink(std::move(article));
  }
  if (in.bad()) throw IoError("read error in " + source);
}

void IngestFile(const std::string &path, const RedirectMap &redirects,
                const SitelinkMap &sitelinks, const IngestOptions &options,
                const ArticleSink &sink, Diagnostics *diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path);
  if (DetectFormat(path) == SourceFormat::kMediaWikiXml) {
    IngestMediaWikiXml(in, path, redirects, sitelinks, options, sink, diagnostics);
  } else {
    IngestCanonical(in, path, redirects, sitelinks, options, sink, diagnostics);
  }
}

std::string SerializeArticle(const Article &article) {
  ordered_json record;
  record["qid"] = article.id.str();
  record["lang"] = article.lang;
  record["title"] = article.title;
  record["ns"] = 0;
  record["text"] = article.text;
  ordered_json links = ordered_json::array();
  for (const ExtractedLink &link : article.links) {
    ordered_json entry;
    entry["anchor"] = link.anchor;
    entry["target_qid"] = link.target.str();
    entry["start"] = link.span.begin;
    entry["end"] = link.span.end;
    links.push_back(std::move(entry));
  }
  record["links"] = std::move(links);
  return record.dump();
}

void WriteArticles(std::ostream &out, const std::vector<Article> &articles) {
  for (const Article &article : articles) out << SerializeArticle(article) << '\n';
  if (!out) throw IoError("failed writing articles");
}

std::vector<Article> LoadArticles(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Article> articles;
  IngestCanonical(in, path, RedirectMap(), SitelinkMap(), IngestOptions(),
                  [&](Article &&a) { articles.push_back(std::move(a)); }, nullptr);
  return articles;
}

}  // namespace wikipda
