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

#ifndef WIKIPDA_CONCEPT_ID_H_
#define WIKIPDA_CONCEPT_ID_H_

#include <compare>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wikipda {

// Language-independent knowledge-base concept identifier ("Q44"). The same
// ConceptId denotes the same concept in every language edition.
class ConceptId {
 public:
  ConceptId() = default;

  // Canonicalizes (trims whitespace, upper-cases a leading 'q') and
  // validates. Throws InvalidArgument for anything but 'Q' + digits.
  static ConceptId Parse(std::string_view text);
  // Same as Parse but returns nullopt instead of throwing.
  static std::optional<ConceptId> TryParse(std::string_view text);

  const std::string &str() const { return id_; }
  bool empty() const { return id_.empty(); }

  friend bool operator==(const ConceptId &, const ConceptId &) = default;
  friend std::strong_ordering operator<=>(const ConceptId &a,
                                          const ConceptId &b) {
    return a.id_ <=> b.id_;
  }

 private:
  explicit ConceptId(std::string id) : id_(std::move(id)) {}
  std::string id_;
};

inline std::ostream &operator<<(std::ostream &out, const ConceptId &id) {
  return out << id.str();
}

}  // namespace wikipda

template <>
struct std::hash<wikipda::ConceptId> {
  size_t operator()(const wikipda::ConceptId &id) const noexcept {
    return std::hash<std::string>()(id.str());
  }
};

namespace wikipda {

// Dense ordinal assignment for a set of concepts. Ordinals follow insertion
// order.
class ConceptIndex {
 public:
  // Returns the existing ordinal or appends the concept.
  size_t Add(const ConceptId &id);
  std::optional<size_t> Find(const ConceptId &id) const;
  const ConceptId &at(size_t ordinal) const { return concepts_.at(ordinal); }
  size_t size() const { return concepts_.size(); }
  const std::vector<ConceptId> &concepts() const { return concepts_; }

  friend bool operator==(const ConceptIndex &a, const ConceptIndex &b) {
    return a.concepts_ == b.concepts_;
  }

 private:
  std::vector<ConceptId> concepts_;
  std::unordered_map<ConceptId, size_t> ordinals_;
};

}  // namespace wikipda

#endif  // WIKIPDA_CONCEPT_ID_H_
