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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "wikipda/eval.h"

namespace wikipda {

namespace {

// k indices drawn without replacement from [0, n), in draw order.
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k, std::mt19937_64 &rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates.
  for (size_t i = 0; i < k && i < n; ++i) {
    size_t j = i + UniformIndex(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(std::min(k, n));
  return idx;
}

struct BiasJob {
  std::string lang;
  std::vector<std::vector<double>> x;
  std::vector<bool> y;
  uint64_t seed = 0;
};

}  // namespace

std::vector<LanguageBiasResult> LanguageBias(
    const std::map<std::string, std::vector<std::vector<double>>> &vectors_by_lang,
    int64_t sample_per_lang, uint64_t seed, int threads) {
  if (sample_per_lang < 2) throw InvalidArgument("sample_per_lang must be >= 2");
  std::vector<std::string> langs;
  for (const auto &[lang, vectors] : vectors_by_lang) {
    if (vectors.empty()) {
      LogWarning("language " + lang + " has no documents; skipped");
      continue;
    }
    langs.push_back(lang);
  }
  if (langs.size() < 2) throw InvalidArgument("language bias needs at least 2 languages");
  const size_t per_other =
      std::max<size_t>(1, static_cast<size_t>(sample_per_lang) / (langs.size() - 1));

  // Sampling happens up front so warnings come out in a stable order.
  std::vector<BiasJob> jobs;
  for (const std::string &lang : langs) {
    BiasJob job;
    job.lang = lang;
    job.seed = MixSeed(seed, Fnv1a64(lang));
    std::mt19937_64 rng(job.seed);
    const auto &own = vectors_by_lang.at(lang);
    if (own.size() < static_cast<size_t>(sample_per_lang)) {
      LogWarning("language " + lang + " has " + std::to_string(own.size()) +
                 " documents, fewer than the " + std::to_string(sample_per_lang) + " requested");
    }
    for (size_t i : SampleWithoutReplacement(own.size(), static_cast<size_t>(sample_per_lang), rng)) {
      job.x.push_back(own[i]);
      job.y.push_back(true);
    }
    for (const std::string &other : langs) {
      if (other == lang) continue;
      const auto &vectors = vectors_by_lang.at(other);
      for (size_t i : SampleWithoutReplacement(vectors.size(), per_other, rng)) {
        job.x.push_back(vectors[i]);
        job.y.push_back(false);
      }
    }
    jobs.push_back(std::move(job));
  }

  std::vector<LanguageBiasResult> results(jobs.size());
  ParallelFor(jobs.size(), threads, [&](size_t begin, size_t end) {
    for (size_t j = begin; j < end; ++j) {
      const BiasJob &job = jobs[j];
      std::vector<std::string> strata;
      for (bool label : job.y) strata.push_back(label ? "1" : "0");
      Split split = StratifiedSplit(strata, 0.8, MixSeed(job.seed, 1));
      std::vector<std::vector<double>> train_x;
      std::vector<bool> train_y;
      for (size_t i : split.train) {
        train_x.push_back(job.x[i]);
        train_y.push_back(job.y[i]);
      }
      LogisticOptions options;
      options.transform = FeatureTransform::kLogOdds;
      options.seed = job.seed;
      LogisticModel model = FitLogistic(train_x, train_y, options);
      std::vector<double> scores;
      std::vector<bool> labels;
      for (size_t i : split.test) {
        scores.push_back(model.Logit(job.x[i]));
        labels.push_back(job.y[i]);
      }
      LanguageBiasResult &r = results[j];
      r.lang = job.lang;
      r.weights = model.weights;
      r.bias = model.bias;
      r.positives = std::count(job.y.begin(), job.y.end(), true);
      r.negatives = static_cast<int64_t>(job.y.size()) - r.positives;
      const bool both = std::find(labels.begin(), labels.end(), true) != labels.end() &&
                        std::find(labels.begin(), labels.end(), false) != labels.end();
      r.auc = both ? Auc(scores, labels) : std::numeric_limits<double>::quiet_NaN();
    }
  });
  return results;
}

std::string LanguageBiasJson(std::span<const LanguageBiasResult> results) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const LanguageBiasResult &r : results) {
    nlohmann::ordered_json j;
    j["lang"] = r.lang;
    j["auc"] = std::isnan(r.auc) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.auc);
    j["positives"] = r.positives;
    j["negatives"] = r.negatives;
    j["bias"] = r.bias;
    j["weights"] = r.weights;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

double CosineDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vectors differ in length");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::clamp(1.0 - dot / std::sqrt(na * nb), 0.0, 2.0);
}

std::vector<size_t> AverageLinkageOrder(const std::vector<std::vector<double>> &distances) {
  const size_t n = distances.size();
  std::vector<std::vector<size_t>> clusters(n);
  for (size_t i = 0; i < n; ++i) clusters[i] = {i};
  auto linkage = [&](const std::vector<size_t> &a, const std::vector<size_t> &b) {
    double sum = 0.0;
    for (size_t i : a) {
      for (size_t j : b) sum += distances[i][j];
    }
    return sum / static_cast<double>(a.size() * b.size());
  };
  while (clusters.size() > 1) {
    size_t best_i = 0, best_j = 1;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < clusters.size(); ++i) {
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double d = linkage(clusters[i], clusters[j]);
        if (d < best) {
          best = d;
          best_i = i;
          best_j = j;
        }
      }
    }
    clusters[best_i].insert(clusters[best_i].end(), clusters[best_j].begin(),
                            clusters[best_j].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_j));
  }
  return n == 0 ? std::vector<size_t>{} : clusters.front();
}

DistanceMatrix LanguageDistances(const std::map<std::string, std::vector<DocumentTopics>> &by_lang,
                                 DistanceMode mode) {
  DistanceMatrix out;
  for (const auto &[lang, docs] : by_lang) {
    if (docs.empty()) {
      LogWarning("language " + lang + " has no topic vectors; excluded");
      continue;
    }
    out.langs.push_back(lang);
  }
  const size_t n = out.langs.size();
  if (n == 0) throw InvalidArgument("no language has topic vectors");
  size_t k_dim = by_lang.at(out.langs.front()).front().theta.size();
  for (const std::string &lang : out.langs) {
    for (const DocumentTopics &doc : by_lang.at(lang)) {
      if (doc.theta.size() != k_dim) throw InvalidArgument("topic vectors differ in length");
    }
  }
  out.values.assign(n, std::vector<double>(n, 0.0));

  if (mode == DistanceMode::kAll) {
    std::vector<std::vector<double>> means(n, std::vector<double>(k_dim, 0.0));
    for (size_t l = 0; l < n; ++l) {
      const auto &docs = by_lang.at(out.langs[l]);
      for (const DocumentTopics &doc : docs) {
        for (size_t k = 0; k < k_dim; ++k) means[l][k] += doc.theta[k];
      }
      for (double &m : means[l]) m /= static_cast<double>(docs.size());
    }
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        out.values[a][b] = out.values[b][a] = CosineDistance(means[a], means[b]);
      }
    }
  } else {
    std::vector<std::unordered_map<ConceptId, const std::vector<double> *>> lookup(n);
    for (size_t l = 0; l < n; ++l) {
      for (const DocumentTopics &doc : by_lang.at(out.langs[l])) {
        if (!lookup[l].emplace(doc.id, &doc.theta.probabilities).second) {
          throw InvalidArgument("duplicate concept " + doc.id.str() + " in " + out.langs[l]);
        }
      }
    }
    std::set<ConceptId> common;
    for (const auto &[id, theta] : lookup[0]) {
      bool everywhere = true;
      for (size_t l = 1; l < n && everywhere; ++l) everywhere = lookup[l].count(id) > 0;
      if (everywhere) common.insert(id);
    }
    if (common.empty()) throw InvalidArgument("languages share no concept");
    out.common_concepts = static_cast<int64_t>(common.size());
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        double sum = 0.0;
        for (const ConceptId &id : common) {
          sum += CosineDistance(*lookup[a].at(id), *lookup[b].at(id));
        }
        out.values[a][b] = out.values[b][a] = sum / static_cast<double>(common.size());
      }
    }
  }
  for (size_t i : AverageLinkageOrder(out.values)) out.leaf_order.push_back(out.langs[i]);
  return out;
}

std::string DistanceMatrix::ToTsv() const {
  std::ostringstream out;
  out << "lang";
  for (const std::string &lang : langs) out << '\t' << lang;
  out << '\n';
  for (size_t a = 0; a < langs.size(); ++a) {
    out << langs[a];
    for (double d : values[a]) out << '\t' << FormatDouble(d);
    out << '\n';
  }
  return out.str();
}

}  // namespace wikipda
