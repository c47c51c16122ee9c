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

#include "wikipda/wikitext.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace wikipda {

namespace {

// Link prefixes that put the target outside the main namespace. Compared
// after ASCII lower-casing.
const std::unordered_set<std::string> &NamespacePrefixes() {
  static const std::unordered_set<std::string> prefixes = {
      "archivo",   "bestand",   "categoria", "categorie", "categoría",
      "catégorie", "category",  "commons",   "datei",     "draft",
      "file",      "fichier",   "help",      "image",     "kategori",
      "kategoria", "kategorie", "media",     "meta",      "module",
      "plik",      "portal",    "soubor",    "special",   "talk",
      "template",  "user",      "wikipedia", "wikt",      "wiktionary",
      "wp",        "Категория", "Категорія", "Файл",      "ملف",
      "تصنيف",     "ファイル",   "カテゴリ",   "分类",       "文件",
  };
  return prefixes;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool StartsWith(std::string_view s, size_t pos, std::string_view prefix) {
  return s.size() - pos >= prefix.size() && s.compare(pos, prefix.size(), prefix) == 0;
}

bool StartsWithIgnoreCase(std::string_view s, size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

size_t FindIgnoreCase(std::string_view s, std::string_view needle, size_t from) {
  for (size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (StartsWithIgnoreCase(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

// Finds the position of the closer matching an opener at `pos`, honoring
// nesting of the same bracket pair. Returns npos when unterminated.
size_t FindMatching(std::string_view s, size_t pos, std::string_view open,
                    std::string_view close) {
  int depth = 0;
  size_t i = pos;
  while (i < s.size()) {
    if (StartsWith(s, i, open)) {
      ++depth;
      i += open.size();
    } else if (StartsWith(s, i, close)) {
      if (--depth == 0) return i;
      i += close.size();
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

// "fr", "zh-yue", "be-tarask": lower-case language code patterns.
bool LooksLikeLanguagePrefix(std::string_view prefix) {
  if (prefix.size() < 2 || prefix.size() > 12) return false;
  size_t head = 0;
  while (head < prefix.size() && prefix[head] >= 'a' && prefix[head] <= 'z') ++head;
  if (head < 2 || head > 3) return false;
  for (size_t i = head; i < prefix.size(); ++i) {
    char c = prefix[i];
    if (!(c == '-' || (c >= 'a' && c <= 'z'))) return false;
  }
  return head == prefix.size() || prefix[head] == '-';
}

bool IsNamespaced(std::string_view target) {
  size_t colon = target.find(':');
  if (colon == std::string_view::npos) return false;
  std::string_view prefix = target.substr(0, colon);
  while (!prefix.empty() && prefix.back() == ' ') prefix.remove_suffix(1);
  while (!prefix.empty() && prefix.front() == ' ') prefix.remove_prefix(1);
  if (LooksLikeLanguagePrefix(prefix)) return true;
  const auto &prefixes = NamespacePrefixes();
  return prefixes.count(AsciiLower(prefix)) > 0 || prefixes.count(std::string(prefix)) > 0;
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

void Tally(Diagnostics *diagnostics, const char *name) {
  if (diagnostics != nullptr) diagnostics->Increment(name);
}

}  // namespace

std::string NormalizeTitle(std::string_view title) {
  std::string out;
  out.reserve(title.size());
  bool pending_space = false;
  for (char c : title) {
    if (c == '_' || std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

ParsedWikitext ParseWikitextLinks(std::string_view markup, Diagnostics *diagnostics) {
  ParsedWikitext result;
  std::string &out = result.text;
  out.reserve(markup.size());
  size_t pos = 0;
  const size_t n = markup.size();
  while (pos < n) {
    if (StartsWith(markup, pos, "<!--")) {
      size_t close = markup.find("-->", pos + 4);
      Tally(diagnostics, "comment");
      pos = close == std::string_view::npos ? n : close + 3;
      continue;
    }
    if (StartsWithIgnoreCase(markup, pos, "<nowiki/>")) {
      pos += 9;
      continue;
    }
    if (StartsWithIgnoreCase(markup, pos, "<nowiki>")) {
      size_t close = FindIgnoreCase(markup, "</nowiki>", pos + 8);
      if (close != std::string_view::npos) {
        out.append(markup.substr(pos + 8, close - pos - 8));
        pos = close + 9;
        continue;
      }
    }
    if (StartsWith(markup, pos, "{{")) {
      size_t close = FindMatching(markup, pos, "{{", "}}");
      if (close != std::string_view::npos) {
        Tally(diagnostics, "template");
        pos = close + 2;
        continue;
      }
      out.append("{{");
      pos += 2;
      continue;
    }
    if (StartsWith(markup, pos, "[[")) {
      size_t close = FindMatching(markup, pos, "[[", "]]");
      if (close == std::string_view::npos) {
        Tally(diagnostics, "malformed_link");
        out.append("[[");
        pos += 2;
        continue;
      }
      std::string_view inner = markup.substr(pos + 2, close - pos - 2);
      if (inner.find("[[") != std::string_view::npos) {
        Tally(diagnostics, "nested_link");
        pos = close + 2;
        continue;
      }
      size_t pipe = inner.find('|');
      std::string_view target = inner.substr(0, pipe);
      if (target.find_first_of("\n{}<>[]") != std::string_view::npos) {
        Tally(diagnostics, "malformed_link");
        out.append("[[");
        pos += 2;
        continue;
      }
      pos = close + 2;
      bool colon_link = !target.empty() && target.front() == ':';
      if (colon_link) target.remove_prefix(1);
      if (IsNamespaced(target)) {
        Tally(diagnostics, "namespaced_link");
        continue;
      }
      std::string_view anchor =
          pipe == std::string_view::npos ? target : inner.substr(pipe + 1);
      size_t hash = target.find('#');
      std::string title = NormalizeTitle(target.substr(0, hash));
      if (IsBlank(anchor)) anchor = target.substr(0, hash);
      if (title.empty()) {
        // Same-page section link: keep the visible text, emit no link.
        Tally(diagnostics, "empty_target");
        out.append(anchor);
        continue;
      }
      if (IsBlank(anchor)) continue;
      WikiLink link;
      link.anchor = std::string(anchor);
      link.target_title = std::move(title);
      link.span.begin = out.size();
      out.append(anchor);
      link.span.end = out.size();
      result.links.push_back(std::move(link));
      continue;
    }
    out.push_back(markup[pos]);
    ++pos;
  }
  return result;
}

}  // namespace wikipda
