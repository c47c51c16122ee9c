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

#include "wikipda/topics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include "json.hpp"

namespace wikipda {

namespace {

constexpr char kMagic[] = "WPDT";
constexpr uint32_t kVersion = 1;

// Expands a bag into vocabulary ordinals with multiplicity, in ConceptId
// order. Returns the number of skipped out-of-vocabulary occurrences.
int64_t BagTokens(const Vocabulary &vocabulary, const BagOfLinks &bag,
                  std::vector<uint32_t> *tokens) {
  int64_t unknown = 0;
  for (const auto &[cid, c] : bag.counts) {
    auto w = vocabulary.Find(cid);
    if (!w) {
      unknown += c.total();
      continue;
    }
    tokens->insert(tokens->end(), static_cast<size_t>(c.total()), static_cast<uint32_t>(*w));
  }
  return unknown;
}

// Draws k with probability weights[k] / sum(weights), given the prefix sums.
size_t SampleCumulative(const std::vector<double> &cumulative, std::mt19937_64 &rng) {
  double u = Uniform01(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<size_t>(it - cumulative.begin());
}

}  // namespace

Vocabulary::Vocabulary(std::vector<ConceptId> concepts, std::vector<int64_t> doc_frequency)
    : doc_frequency_(std::move(doc_frequency)) {
  if (concepts.size() != doc_frequency_.size()) {
    throw InvalidArgument("vocabulary and document frequencies differ in length");
  }
  for (const ConceptId &c : concepts) {
    if (index_.Add(c) + 1 != index_.size()) throw InvalidArgument("duplicate vocabulary entry " + c.str());
  }
}

PrunedCorpus Prune(std::span<const BagOfLinks> bags, int64_t min_df, int64_t min_doc_links) {
  if (min_df < 1) throw InvalidArgument("min_df must be >= 1");
  if (min_doc_links < 1) throw InvalidArgument("min_doc_links must be >= 1");
  std::map<ConceptId, int64_t> df;
  for (const BagOfLinks &bag : bags) {
    for (const auto &[cid, c] : bag.counts) df[cid]++;
  }
  PrunedCorpus out;
  std::vector<ConceptId> kept;
  std::vector<int64_t> kept_df;
  for (const auto &[cid, n] : df) {
    if (n >= min_df) {
      kept.push_back(cid);
      kept_df.push_back(n);
    } else {
      out.dropped_concepts++;
    }
  }
  Vocabulary vocabulary(std::move(kept), std::move(kept_df));
  for (const BagOfLinks &bag : bags) {
    BagOfLinks pruned;
    pruned.id = bag.id;
    pruned.lang = bag.lang;
    for (const auto &[cid, c] : bag.counts) {
      if (vocabulary.Find(cid)) pruned.counts.emplace(cid, c);
    }
    if (pruned.size() < min_doc_links) {
      out.dropped_documents++;
      continue;
    }
    out.bags.push_back(std::move(pruned));
  }
  if (out.bags.empty()) throw InvalidArgument("no document survives pruning");
  // Document frequencies describe the corpus the vocabulary was built on;
  // concepts whose documents were all dropped keep their entry.
  out.vocabulary = std::move(vocabulary);
  return out;
}

size_t TopicVector::Argmax() const {
  return static_cast<size_t>(std::max_element(probabilities.begin(), probabilities.end()) -
                             probabilities.begin());
}

TopicModel::TopicModel(int num_topics, double alpha, double beta, Vocabulary vocabulary,
                       uint64_t seed)
    : num_topics_(num_topics), alpha_(alpha), beta_(beta), seed_(seed),
      vocabulary_(std::move(vocabulary)),
      counts_(vocabulary_.size() * static_cast<size_t>(std::max(num_topics, 0)), 0),
      totals_(static_cast<size_t>(std::max(num_topics, 0)), 0) {
  if (num_topics < 1) throw InvalidArgument("number of topics must be >= 1");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidArgument("alpha and beta must be positive");
}

int64_t TopicModel::total_tokens() const {
  return std::accumulate(totals_.begin(), totals_.end(), int64_t{0});
}

double TopicModel::Phi(size_t topic, size_t word) const {
  return (static_cast<double>(count(topic, word)) + beta_) /
         (static_cast<double>(totals_[topic]) + static_cast<double>(vocabulary_.size()) * beta_);
}

std::vector<double> TopicModel::TopicDistribution(size_t topic) const {
  std::vector<double> phi(vocabulary_.size());
  for (size_t w = 0; w < phi.size(); ++w) phi[w] = Phi(topic, w);
  return phi;
}

void TopicModel::Validate() const {
  const size_t k_count = static_cast<size_t>(num_topics_);
  if (counts_.size() != vocabulary_.size() * k_count || totals_.size() != k_count) {
    throw InvalidArgument("topic model count arrays have the wrong shape");
  }
  std::vector<int64_t> sums(k_count, 0);
  for (size_t w = 0; w < vocabulary_.size(); ++w) {
    for (size_t k = 0; k < k_count; ++k) {
      int64_t c = count(k, w);
      if (c < 0) throw InvalidArgument("negative topic-concept count");
      sums[k] += c;
    }
  }
  if (sums != totals_) throw InvalidArgument("topic totals do not match topic-concept counts");
}

void TopicModel::Write(std::ostream &out) const {
  BinaryWriter w(out);
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kVersion);
  w.U32(static_cast<uint32_t>(num_topics_));
  w.F64(alpha_);
  w.F64(beta_);
  w.U64(vocabulary_.size());
  for (const ConceptId &c : vocabulary_.concepts()) w.String(c.str());
  uint64_t nnz = static_cast<uint64_t>(
      std::count_if(counts_.begin(), counts_.end(), [](int64_t c) { return c != 0; }));
  w.U64(nnz);
  for (size_t k = 0; k < static_cast<size_t>(num_topics_); ++k) {
    for (size_t word = 0; word < vocabulary_.size(); ++word) {
      int64_t c = count(k, word);
      if (c == 0) continue;
      w.U32(static_cast<uint32_t>(k));
      w.U32(static_cast<uint32_t>(word));
      w.U32(static_cast<uint32_t>(c));
    }
  }
  for (int64_t t : totals_) w.U64(static_cast<uint64_t>(t));
  w.U64(seed_);
  for (int64_t df : vocabulary_.doc_frequency()) w.U64(static_cast<uint64_t>(df));
}

TopicModel TopicModel::Read(std::istream &in, const std::string &source) {
  BinaryReader r(in, source);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) throw ParseError(source + ": not a topic model");
  uint32_t version = r.U32();
  if (version != kVersion) {
    throw ParseError(source + ": unsupported topic model version " + std::to_string(version));
  }
  try {
    int k = static_cast<int>(r.U32());
    double alpha = r.F64();
    double beta = r.F64();
    uint64_t v = r.U64();
    std::vector<ConceptId> concepts;
    concepts.reserve(v);
    for (uint64_t i = 0; i < v; ++i) concepts.push_back(ConceptId::Parse(r.String()));
    uint64_t nnz = r.U64();
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> triples;
    triples.reserve(nnz);
    for (uint64_t i = 0; i < nnz; ++i) {
      uint32_t topic = r.U32();
      uint32_t word = r.U32();
      uint32_t c = r.U32();
      triples.emplace_back(topic, word, c);
    }
    std::vector<int64_t> totals(static_cast<size_t>(k));
    for (auto &t : totals) t = static_cast<int64_t>(r.U64());
    uint64_t seed = r.U64();
    std::vector<int64_t> df(v, 0);
    if (!r.AtEnd()) {
      for (auto &d : df) d = static_cast<int64_t>(r.U64());
    }
    TopicModel model(k, alpha, beta, Vocabulary(std::move(concepts), std::move(df)), seed);
    for (const auto &[topic, word, c] : triples) {
      if (topic >= static_cast<uint32_t>(k) || word >= v) {
        throw InvalidArgument("count triple outside the model");
      }
      model.counts_[word * static_cast<size_t>(k) + topic] = c;
    }
    model.totals_ = std::move(totals);
    model.Validate();
    return model;
  } catch (const InvalidArgument &e) {
    throw ParseError(source + ": " + e.what());
  }
}

TopicModel TopicModel::ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Read(in, path);
}

void TopicModel::WriteFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  Write(out);
  if (!out) throw IoError("cannot write " + path);
}

std::string TopicModel::DebugJson() const {
  nlohmann::ordered_json j;
  j["k"] = num_topics_;
  j["alpha"] = alpha_;
  j["beta"] = beta_;
  j["seed"] = seed_;
  std::vector<std::string> vocab;
  for (const ConceptId &c : vocabulary_.concepts()) vocab.push_back(c.str());
  j["vocabulary"] = vocab;
  j["topic_totals"] = totals_;
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (size_t k = 0; k < static_cast<size_t>(num_topics_); ++k) {
    std::vector<int64_t> row(vocabulary_.size());
    for (size_t w = 0; w < row.size(); ++w) row[w] = count(k, w);
    topics.push_back(row);
  }
  j["topic_concept_counts"] = std::move(topics);
  return j.dump(2);
}

TopicModel Train(const PrunedCorpus &corpus, const TrainOptions &options) {
  const int k_count = options.num_topics;
  if (k_count < 2) throw InvalidArgument("LDA needs at least 2 topics");
  if (options.iterations < 1) throw InvalidArgument("LDA iterations must be >= 1");
  const double alpha = options.alpha > 0.0 ? options.alpha : AutoAlpha(k_count);
  const double beta = options.beta;
  const Vocabulary &vocabulary = corpus.vocabulary;
  if (static_cast<size_t>(k_count) > vocabulary.size()) {
    LogWarning("number of topics (" + std::to_string(k_count) + ") exceeds vocabulary size (" +
               std::to_string(vocabulary.size()) + ")");
  }
  TopicModel model(k_count, alpha, beta, vocabulary, options.seed);
  const size_t K = static_cast<size_t>(k_count);
  const double v_beta = static_cast<double>(vocabulary.size()) * beta;

  std::vector<std::vector<uint32_t>> docs(corpus.bags.size());
  for (size_t d = 0; d < docs.size(); ++d) {
    if (BagTokens(vocabulary, corpus.bags[d], &docs[d]) != 0) {
      throw InvalidArgument("training bag contains concepts outside the vocabulary");
    }
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<uint32_t>> z(docs.size());
  std::vector<int64_t> doc_topic(docs.size() * K, 0);
  auto &nkw = model.counts_;
  auto &nk = model.totals_;
  for (size_t d = 0; d < docs.size(); ++d) {
    z[d].resize(docs[d].size());
    for (size_t t = 0; t < docs[d].size(); ++t) {
      uint32_t k = static_cast<uint32_t>(UniformIndex(rng, K));
      z[d][t] = k;
      doc_topic[d * K + k]++;
      nkw[docs[d][t] * K + k]++;
      nk[k]++;
    }
  }

  std::vector<double> cumulative(K);
  for (int it = 0; it < options.iterations; ++it) {
    for (size_t d = 0; d < docs.size(); ++d) {
      int64_t *ndk = &doc_topic[d * K];
      for (size_t t = 0; t < docs[d].size(); ++t) {
        const uint32_t w = docs[d][t];
        const uint32_t old = z[d][t];
        int64_t *nw = &nkw[w * K];
        ndk[old]--;
        nw[old]--;
        nk[old]--;
        double sum = 0.0;
        for (size_t k = 0; k < K; ++k) {
          sum += (static_cast<double>(ndk[k]) + alpha) * (static_cast<double>(nw[k]) + beta) /
                 (static_cast<double>(nk[k]) + v_beta);
          cumulative[k] = sum;
        }
        const uint32_t k_new = static_cast<uint32_t>(SampleCumulative(cumulative, rng));
        z[d][t] = k_new;
        ndk[k_new]++;
        nw[k_new]++;
        nk[k_new]++;
      }
    }
    if ((it + 1) % 50 == 0) LogInfo("lda sweep " + std::to_string(it + 1));
  }
  return model;
}

uint64_t DocumentSeed(uint64_t seed, const ConceptId &cid) {
  return MixSeed(seed, Fnv1a64(cid.str()));
}

TopicVector Infer(const TopicModel &model, const BagOfLinks &bag, const InferOptions &options) {
  if (options.iterations < 1 || options.burn_in < 0 || options.burn_in >= options.iterations) {
    throw InvalidArgument("inference needs iterations > burn_in >= 0");
  }
  const size_t K = static_cast<size_t>(model.num_topics());
  const double alpha = model.alpha();
  TopicVector out;
  std::vector<uint32_t> tokens;
  out.unknown_links = BagTokens(model.vocabulary(), bag, &tokens);
  if (tokens.empty()) {
    out.probabilities.assign(K, 1.0 / static_cast<double>(K));
    out.fallback = true;
    return out;
  }

  // Frozen topic-word factors for the distinct words of the document.
  std::vector<uint32_t> words = tokens;
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::vector<double> phi(words.size() * K);
  std::vector<uint32_t> slot(tokens.size());
  for (size_t i = 0, t = 0; i < words.size(); ++i) {
    for (size_t k = 0; k < K; ++k) phi[i * K + k] = model.Phi(k, words[i]);
    while (t < tokens.size() && tokens[t] == words[i]) slot[t++] = static_cast<uint32_t>(i);
  }

  std::mt19937_64 rng(options.seed);
  std::vector<uint32_t> z(tokens.size());
  std::vector<int64_t> ndk(K, 0);
  for (size_t t = 0; t < tokens.size(); ++t) {
    z[t] = static_cast<uint32_t>(UniformIndex(rng, K));
    ndk[z[t]]++;
  }
  std::vector<double> cumulative(K);
  std::vector<double> accum(K, 0.0);
  const double denom = static_cast<double>(tokens.size()) + static_cast<double>(K) * alpha;
  int samples = 0;
  for (int it = 0; it < options.iterations; ++it) {
    for (size_t t = 0; t < tokens.size(); ++t) {
      ndk[z[t]]--;
      const double *p = &phi[slot[t] * K];
      double sum = 0.0;
      for (size_t k = 0; k < K; ++k) {
        sum += (static_cast<double>(ndk[k]) + alpha) * p[k];
        cumulative[k] = sum;
      }
      z[t] = static_cast<uint32_t>(SampleCumulative(cumulative, rng));
      ndk[z[t]]++;
    }
    if (it >= options.burn_in) {
      for (size_t k = 0; k < K; ++k) accum[k] += (static_cast<double>(ndk[k]) + alpha) / denom;
      ++samples;
    }
  }
  out.probabilities.resize(K);
  double total = 0.0;
  for (size_t k = 0; k < K; ++k) {
    out.probabilities[k] = accum[k] / samples;
    total += out.probabilities[k];
  }
  // Guard the sum against accumulated rounding.
  for (double &p : out.probabilities) p /= total;
  return out;
}

std::vector<ConceptId> TopConcepts(const TopicModel &model, size_t topic, size_t n) {
  if (topic >= static_cast<size_t>(model.num_topics())) throw InvalidArgument("topic out of range");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const Vocabulary &vocab = model.vocabulary();
  std::vector<size_t> order(vocab.size());
  std::iota(order.begin(), order.end(), 0);
  // Within one topic phi is monotone in the raw count.
  auto better = [&](size_t a, size_t b) {
    int64_t ca = model.count(topic, a), cb = model.count(topic, b);
    if (ca != cb) return ca > cb;
    return vocab.at(a) < vocab.at(b);
  };
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    better);
  std::vector<ConceptId> top;
  top.reserve(n);
  for (size_t i = 0; i < n; ++i) top.push_back(vocab.at(order[i]));
  return top;
}

std::string SerializeDocumentTopics(const DocumentTopics &doc) {
  nlohmann::ordered_json j;
  j["qid"] = doc.id.str();
  j["lang"] = doc.lang;
  j["theta"] = doc.theta.probabilities;
  return j.dump();
}

std::vector<DocumentTopics> ReadDocumentTopics(std::istream &in, const std::string &source) {
  std::vector<DocumentTopics> docs;
  std::string line;
  size_t line_number = 0;
  size_t k = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      DocumentTopics doc;
      doc.id = ConceptId::Parse(j.at("qid").get<std::string>());
      doc.lang = j.at("lang").get<std::string>();
      doc.theta.probabilities = j.at("theta").get<std::vector<double>>();
      if (doc.theta.size() == 0) throw InvalidArgument("empty theta");
      if (k == 0) k = doc.theta.size();
      if (doc.theta.size() != k) throw InvalidArgument("topic vectors differ in length");
      double sum = 0.0;
      for (double p : doc.theta.probabilities) {
        if (!(p >= 0.0)) throw InvalidArgument("negative topic probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6) throw InvalidArgument("theta does not sum to 1");
      docs.push_back(std::move(doc));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(source + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<DocumentTopics> ReadDocumentTopicsFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return ReadDocumentTopics(in, path);
}

}  // namespace wikipda
