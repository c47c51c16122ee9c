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

// UTF-8 word tokenizer shared by anchor-dictionary construction and
// densification.
//
// Tokens are maximal runs of word characters. Whitespace and punctuation
// separate tokens and never form tokens themselves. A hyphen or apostrophe
// between two word characters stays inside the token ("co-operate",
// "l'eau"). CJK ideographs and kana form one token per character. Tokens
// are case-folded (ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic).

#ifndef WIKIPDA_TOKENIZER_H_
#define WIKIPDA_TOKENIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikipda/wikitext.h"

namespace wikipda {

struct Token {
  std::string norm;  // case-folded form
  Span span;         // byte offsets into the original text
  // Index of the boundary span (see TokenizeSegmented) containing the
  // token, or -1.
  int segment = -1;

  friend bool operator==(const Token &, const Token &) = default;
};

std::vector<Token> Tokenize(std::string_view text);

// Tokenizes text treating every span in `boundaries` (sorted, disjoint) as a
// separate region: no token crosses a boundary edge, and tokens inside
// boundaries[i] carry segment = i.
std::vector<Token> TokenizeSegmented(std::string_view text, std::span<const Span> boundaries);

// Dictionary key for a phrase: case-folded tokens joined by single spaces.
std::string NormalizePhrase(std::string_view text);

// Number of tokens in a normalized phrase.
size_t PhraseLength(std::string_view normalized);

}  // namespace wikipda

#endif  // WIKIPDA_TOKENIZER_H_
