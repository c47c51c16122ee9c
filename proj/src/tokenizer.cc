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

#include "wikipda/tokenizer.h"

#include <algorithm>

namespace wikipda {

namespace {

// Decodes one code point at pos; invalid sequences decode as U+FFFD with
// length 1.
char32_t Decode(std::string_view s, size_t pos, size_t *length) {
  auto byte = [&](size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    *length = 1;
    return b0;
  }
  int extra = (b0 & 0xE0) == 0xC0 ? 1 : (b0 & 0xF0) == 0xE0 ? 2 : (b0 & 0xF8) == 0xF0 ? 3 : -1;
  if (extra < 0 || pos + static_cast<size_t>(extra) >= s.size()) {
    *length = 1;
    return 0xFFFD;
  }
  char32_t cp = b0 & (0x3F >> extra);
  for (int i = 1; i <= extra; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      *length = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *length = static_cast<size_t>(extra) + 1;
  return cp;
}

void Encode(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t Fold(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x137) return cp | 1;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp | 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  return cp;
}

bool IsSpace(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

bool IsPunct(char32_t cp) {
  if (cp < 0x80) {
    return cp < 0x20 || cp == 0x7F ||
           !((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'));
  }
  return (cp >= 0x80 && cp <= 0x9F) || (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 ||
         cp == 0xF7 || (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x2190 && cp <= 0x2BFF) ||
         (cp >= 0x3001 && cp <= 0x303F) || cp == 0x30FB || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65) || cp == 0x060C || cp == 0x061B || cp == 0x061F ||
         cp == 0x06D4 || cp == 0x0589 || cp == 0x05BE || cp == 0x05C0 || cp == 0x05C3 ||
         cp == 0x0964 || cp == 0x0965 || cp == 0xFFFD;
}

bool IsJoiner(char32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019 || cp == 0x2010 || cp == 0x2011;
}

bool IsCjk(char32_t cp) {
  return (cp >= 0x3040 && cp <= 0x30FF && cp != 0x30FB) || (cp >= 0x31F0 && cp <= 0x31FF) ||
         (cp >= 0x3400 && cp <= 0x4DBF) || (cp >= 0x4E00 && cp <= 0x9FFF) ||
         (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x20000 && cp <= 0x2FFFF);
}

bool IsWord(char32_t cp) { return !IsSpace(cp) && !IsPunct(cp) && !IsCjk(cp); }

// Tokenizes text[begin, end) and appends to out.
void TokenizeRange(std::string_view text, size_t begin, size_t end, int segment,
                   std::vector<Token> *out) {
  std::string_view region = text.substr(0, end);
  Token current;
  bool open = false;
  auto close = [&](size_t at) {
    if (!open) return;
    current.span.end = at;
    current.segment = segment;
    out->push_back(std::move(current));
    current = Token();
    open = false;
  };
  size_t pos = begin;
  while (pos < end) {
    size_t len;
    char32_t cp = Decode(region, pos, &len);
    if (IsCjk(cp)) {
      close(pos);
      Token t;
      Encode(cp, &t.norm);
      t.span = {pos, pos + len};
      t.segment = segment;
      out->push_back(std::move(t));
    } else if (IsWord(cp)) {
      if (!open) {
        open = true;
        current.span.begin = pos;
      }
      Encode(Fold(cp), &current.norm);
    } else if (open && IsJoiner(cp) && pos + len < end) {
      size_t next_len;
      char32_t next = Decode(region, pos + len, &next_len);
      if (IsWord(next)) {
        Encode(cp, &current.norm);
      } else {
        close(pos);
      }
    } else {
      close(pos);
    }
    pos += len;
  }
  close(end);
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  TokenizeRange(text, 0, text.size(), -1, &tokens);
  return tokens;
}

std::vector<Token> TokenizeSegmented(std::string_view text, std::span<const Span> boundaries) {
  std::vector<Token> tokens;
  size_t pos = 0;
  for (size_t i = 0; i < boundaries.size(); ++i) {
    const Span &b = boundaries[i];
    size_t begin = std::clamp(b.begin, pos, text.size());
    size_t end = std::clamp(b.end, begin, text.size());
    TokenizeRange(text, pos, begin, -1, &tokens);
    TokenizeRange(text, begin, end, static_cast<int>(i), &tokens);
    pos = end;
  }
  TokenizeRange(text, pos, text.size(), -1, &tokens);
  return tokens;
}

std::string NormalizePhrase(std::string_view text) {
  std::string out;
  for (const Token &t : Tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += t.norm;
  }
  return out;
}

size_t PhraseLength(std::string_view normalized) {
  if (normalized.empty()) return 0;
  return static_cast<size_t>(std::count(normalized.begin(), normalized.end(), ' ')) + 1;
}

}  // namespace wikipda
