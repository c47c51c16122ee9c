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

// Extraction of internal links from wiki markup.
//
// Only a small subset of the markup language is interpreted:
//
//   [[Target]] and [[Target|anchor]]   internal links
//   {{ ... }}                          templates (dropped, nesting aware)
//   <!-- ... -->                       comments (dropped)
//   <nowiki> ... </nowiki>             literal text, never parsed
//
// Everything else is copied verbatim. The parser produces a "rendered" text
// in which each link is replaced by its anchor text, and reports link spans
// as half-open UTF-8 byte offsets into that rendered text. This is the span
// convention used throughout the library: for every link,
// rendered.substr(span.begin, span.size()) == anchor.
//
// Links whose target carries a namespace prefix (File:, Category:, ...) or
// an interlanguage prefix (fr:, zh-yue:, ...) and links that contain nested
// links (image captions) are removed from the rendered text. Unterminated
// constructs are kept as literal text.

#ifndef WIKIPDA_WIKITEXT_H_
#define WIKIPDA_WIKITEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wikipda/util.h"

namespace wikipda {

// Half-open byte interval [begin, end).
struct Span {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool Contains(const Span &other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool Overlaps(const Span &other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const Span &, const Span &) = default;
};

struct WikiLink {
  std::string anchor;
  std::string target_title;  // normalized, fragment removed
  Span span;                 // into ParsedWikitext::text

  friend bool operator==(const WikiLink &, const WikiLink &) = default;
};

struct ParsedWikitext {
  std::string text;  // rendered text
  std::vector<WikiLink> links;
};

// Parses wiki markup. Never throws on malformed input; skipped fragments
// are tallied in diagnostics when given ("malformed_link", "template",
// "comment", "namespaced_link", "nested_link", "empty_target").
ParsedWikitext ParseWikitextLinks(std::string_view markup,
                                  Diagnostics *diagnostics = nullptr);

// Canonical title form: underscores become spaces, whitespace is trimmed
// and collapsed, and a leading ASCII letter is upper-cased.
std::string NormalizeTitle(std::string_view title);

}  // namespace wikipda

#endif  // WIKIPDA_WIKITEXT_H_
