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

// Corpus ingestion: articles, their concept-mapped links, redirect and
// sitelink tables, and the canonical newline-delimited JSON record format.
//
// Canonical record (one JSON object per line, UTF-8):
//
//   {"qid":"Q44","lang":"en","title":"Beer","ns":0,"text":"...",
//    "links":[{"anchor":"ale","target_qid":"Q3303","start":10,"end":13}]}
//
// start/end are byte offsets into text (see wikitext.h for the convention).
// A record without a "links" field is treated as raw wiki markup and is
// run through the link extractor, redirect resolution and sitelink lookup.
// A record with an empty "qid" gets its concept from the sitelink table.

#ifndef WIKIPDA_CORPUS_H_
#define WIKIPDA_CORPUS_H_

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wikipda/concept_id.h"
#include "wikipda/util.h"
#include "wikipda/wikitext.h"

namespace wikipda {

struct ExtractedLink {
  std::string anchor;
  ConceptId target;
  Span span;

  friend bool operator==(const ExtractedLink &, const ExtractedLink &) = default;
};

struct Article {
  ConceptId id;
  std::string lang;
  std::string title;
  std::string text;
  std::vector<ExtractedLink> links;  // sorted by span, non-overlapping

  friend bool operator==(const Article &, const Article &) = default;
};

// Checks the Article invariants; throws InvalidArgument describing the
// first violation.
void ValidateArticle(const Article &article);

class RedirectCycleError : public Error {
 public:
  RedirectCycleError(const std::string &message, std::vector<std::string> cycle)
      : Error(message), cycle_(std::move(cycle)) {}
  const std::vector<std::string> &cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

// Per-language title -> title redirect table. Titles are normalized with
// NormalizeTitle on insertion and lookup.
class RedirectMap {
 public:
  void Add(const std::string &lang, std::string_view from, std::string_view to);
  // Follows redirects to a terminal title. Returns the (normalized) input
  // when it is not a redirect. Throws RedirectCycleError on a cycle.
  std::string Resolve(const std::string &lang, std::string_view title) const;
  size_t size() const;

  // TSV: lang <TAB> from <TAB> to; '#' starts a comment line.
  static RedirectMap Load(std::istream &in, const std::string &source);
  static RedirectMap LoadFile(const std::string &path);

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, std::string>> entries_;
};

// (lang, title) -> ConceptId.
class SitelinkMap {
 public:
  // Throws InvalidArgument if the title already maps to a different concept.
  void Add(const std::string &lang, std::string_view title, const ConceptId &cid);
  std::optional<ConceptId> Find(const std::string &lang, std::string_view title) const;
  size_t size() const;

  // TSV: lang <TAB> title <TAB> qid; '#' starts a comment line.
  static SitelinkMap Load(std::istream &in, const std::string &source);
  static SitelinkMap LoadFile(const std::string &path);

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, ConceptId>> entries_;
};

// Exact lookup of an already redirect-resolved title.
std::optional<ConceptId> MapToConcept(const std::string &lang, std::string_view title,
                                      const SitelinkMap &sitelinks);

// Turns parsed markup into an Article: resolves link targets through
// redirects and sitelinks. Unmapped or cyclic targets are dropped and
// counted ("unmapped_link", "redirect_cycle").
Article BuildArticle(const ConceptId &cid, const std::string &lang,
                     const std::string &title, std::string_view markup,
                     const RedirectMap &redirects, const SitelinkMap &sitelinks,
                     Diagnostics *diagnostics);

using ArticleSink = std::function<void(Article &&)>;

enum class SourceFormat { kCanonical, kMediaWikiXml };

// Guesses the format from the file name (".xml" -> MediaWiki dump).
SourceFormat DetectFormat(const std::string &path);

struct IngestOptions {
  // Language code for sources that do not carry one (MediaWiki dumps).
  std::string lang;
};

// Streams canonical records. Records outside namespace 0 are dropped
// ("dropped_namespace"). Throws ParseError with the line number on schema
// violations.
void IngestCanonical(std::istream &in, const std::string &source,
                     const RedirectMap &redirects, const SitelinkMap &sitelinks,
                     const IngestOptions &options, const ArticleSink &sink,
                     Diagnostics *diagnostics);

// Streams a MediaWiki XML dump (<page><ns><title><revision><text>).
// Redirect pages and pages outside namespace 0 are dropped.
void IngestMediaWikiXml(std::istream &in, const std::string &source,
                        const RedirectMap &redirects, const SitelinkMap &sitelinks,
                        const IngestOptions &options, const ArticleSink &sink,
                        Diagnostics *diagnostics);

// Opens `path` and dispatches on its format.
void IngestFile(const std::string &path, const RedirectMap &redirects,
                const SitelinkMap &sitelinks, const IngestOptions &options,
                const ArticleSink &sink, Diagnostics *diagnostics);

// Canonical serialization of a single article (no trailing newline).
std::string SerializeArticle(const Article &article);
void WriteArticles(std::ostream &out, const std::vector<Article> &articles);

// Reads a canonical file produced by WriteArticles into memory.
std::vector<Article> LoadArticles(const std::string &path);

}  // namespace wikipda

#endif  // WIKIPDA_CORPUS_H_
