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

// LDA over bags of links, trained by collapsed Gibbs sampling on a corpus
// pooled across languages. Inference only ever reads concept ids, so a
// trained model applies unchanged to any language.

#ifndef WIKIPDA_TOPICS_H_
#define WIKIPDA_TOPICS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wikipda/concept_id.h"
#include "wikipda/densify.h"

namespace wikipda {

inline constexpr int64_t kDefaultMinDf = 500;
inline constexpr int64_t kDefaultMinDocLinks = 10;
inline constexpr double kDefaultBeta = 0.01;
inline constexpr int kDefaultTopics = 40;
inline constexpr int kDefaultLdaIterations = 200;
inline constexpr int kDefaultInferIterations = 100;
inline constexpr int kDefaultInferBurnIn = 50;

// Symmetric document-topic prior used when alpha is "auto".
inline double AutoAlpha(int num_topics) { return 50.0 / num_topics; }

class Vocabulary {
 public:
  Vocabulary() = default;
  // Concepts are kept in the given order.
  Vocabulary(std::vector<ConceptId> concepts, std::vector<int64_t> doc_frequency);

  size_t size() const { return index_.size(); }
  const ConceptId &at(size_t ordinal) const { return index_.at(ordinal); }
  std::optional<size_t> Find(const ConceptId &id) const { return index_.Find(id); }
  const std::vector<ConceptId> &concepts() const { return index_.concepts(); }
  const std::vector<int64_t> &doc_frequency() const { return doc_frequency_; }

  friend bool operator==(const Vocabulary &, const Vocabulary &) = default;

 private:
  ConceptIndex index_;
  std::vector<int64_t> doc_frequency_;
};

struct PrunedCorpus {
  Vocabulary vocabulary;  // sorted by ConceptId
  std::vector<BagOfLinks> bags;
  int64_t dropped_documents = 0;
  int64_t dropped_concepts = 0;
};

// Drops concepts found in fewer than min_df documents (pooled over all
// languages), then documents left with fewer than min_doc_links links
// (counting multiplicity). Throws InvalidArgument if nothing survives.
PrunedCorpus Prune(std::span<const BagOfLinks> bags, int64_t min_df = kDefaultMinDf,
                   int64_t min_doc_links = kDefaultMinDocLinks);

// Probability vector over K topics.
struct TopicVector {
  std::vector<double> probabilities;
  bool fallback = false;       // no known concept; uniform prior returned
  int64_t unknown_links = 0;   // occurrences skipped as out-of-vocabulary

  size_t size() const { return probabilities.size(); }
  double operator[](size_t k) const { return probabilities[k]; }
  size_t Argmax() const;
};

struct TrainOptions {
  int num_topics = kDefaultTopics;
  double alpha = 0.0;  // <= 0 selects AutoAlpha(num_topics)
  double beta = kDefaultBeta;
  int iterations = kDefaultLdaIterations;
  uint64_t seed = 1;
};

struct InferOptions {
  int iterations = kDefaultInferIterations;
  int burn_in = kDefaultInferBurnIn;
  uint64_t seed = 1;
};

class TopicModel {
 public:
  TopicModel() = default;
  TopicModel(int num_topics, double alpha, double beta, Vocabulary vocabulary, uint64_t seed);

  int num_topics() const { return num_topics_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  uint64_t seed() const { return seed_; }
  const Vocabulary &vocabulary() const { return vocabulary_; }

  int64_t count(size_t topic, size_t word) const {
    return counts_[word * static_cast<size_t>(num_topics_) + topic];
  }
  int64_t topic_total(size_t topic) const { return totals_[topic]; }
  int64_t total_tokens() const;

  // phi_kw = (n_kw + beta) / (n_k + |V| beta)
  double Phi(size_t topic, size_t word) const;
  std::vector<double> TopicDistribution(size_t topic) const;

  // Throws InvalidArgument when totals disagree with counts or counts are
  // negative.
  void Validate() const;

  // Binary layout (little-endian): "WPDT", u32 version, u32 K, f64 alpha,
  // f64 beta, u64 |V| + length-prefixed concept ids, u64 nnz + (u32 topic,
  // u32 ordinal, u32 count) triples, K x u64 topic totals, u64 seed, then
  // |V| x u64 document frequencies.
  void Write(std::ostream &out) const;
  static TopicModel Read(std::istream &in, const std::string &source);
  static TopicModel ReadFile(const std::string &path);
  void WriteFile(const std::string &path) const;
  std::string DebugJson() const;

  friend bool operator==(const TopicModel &, const TopicModel &) = default;

 private:
  friend TopicModel Train(const PrunedCorpus &, const TrainOptions &);

  int num_topics_ = 0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  uint64_t seed_ = 0;
  Vocabulary vocabulary_;
  std::vector<int64_t> counts_;  // word-major: [w * K + k]
  std::vector<int64_t> totals_;
};

// Collapsed Gibbs sampling, single-threaded and deterministic given the
// seed.
TopicModel Train(const PrunedCorpus &corpus, const TrainOptions &options);

// Fold-in Gibbs sampling with the model's counts frozen. Returns the mean
// over post-burn-in sweeps of (n_dk + alpha) / (n_d + K alpha). Concepts
// outside the vocabulary are skipped; a bag with none left yields the
// uniform vector with fallback = true. Never reads bag.lang.
TopicVector Infer(const TopicModel &model, const BagOfLinks &bag, const InferOptions &options);

// Seed used for a document so results do not depend on corpus order.
uint64_t DocumentSeed(uint64_t seed, const ConceptId &cid);

// The n concepts with largest phi in the topic; ties by ConceptId.
std::vector<ConceptId> TopConcepts(const TopicModel &model, size_t topic, size_t n);

// Per-document output record: {"qid":..,"lang":..,"theta":[...]}.
struct DocumentTopics {
  ConceptId id;
  std::string lang;
  TopicVector theta;
};
std::string SerializeDocumentTopics(const DocumentTopics &doc);
std::vector<DocumentTopics> ReadDocumentTopics(std::istream &in, const std::string &source);
std::vector<DocumentTopics> ReadDocumentTopicsFile(const std::string &path);

}  // namespace wikipda

#endif  // WIKIPDA_TOPICS_H_
