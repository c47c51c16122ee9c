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

#include "wikipda/concept_id.h"

#include <cctype>

#include "wikipda/util.h"

namespace wikipda {

std::optional<ConceptId> ConceptId::TryParse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.size() < 2 || (text[0] != 'Q' && text[0] != 'q')) return std::nullopt;
  for (size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  std::string id(text);
  id[0] = 'Q';
  return ConceptId(std::move(id));
}

ConceptId ConceptId::Parse(std::string_view text) {
  auto id = TryParse(text);
  if (!id) {
    throw InvalidArgument("invalid concept id '" + std::string(text) +
                          "' (expected Q followed by digits)");
  }
  return *id;
}

size_t ConceptIndex::Add(const ConceptId &id) {
  auto [it, inserted] = ordinals_.emplace(id, concepts_.size());
  if (inserted) concepts_.push_back(id);
  return it->second;
}

std::optional<size_t> ConceptIndex::Find(const ConceptId &id) const {
  auto it = ordinals_.find(id);
  if (it == ordinals_.end()) return std::nullopt;
  return it->second;
}

}  // namespace wikipda
