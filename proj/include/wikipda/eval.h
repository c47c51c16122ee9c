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

// Evaluation harness: masked-link disambiguation, intruder tasks, logistic
// regression with AUC, language bias and distance analyses, and supervised
// classification over topic vectors.

#ifndef WIKIPDA_EVAL_H_
#define WIKIPDA_EVAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wikipda/adjacency.h"
#include "wikipda/anchors.h"
#include "wikipda/corpus.h"
#include "wikipda/factorize.h"
#include "wikipda/topics.h"

namespace wikipda {

inline constexpr double kDefaultMaskFraction = 0.05;
inline constexpr int kDefaultIntruderMembers = 5;
inline constexpr int kDefaultIntruderPresentation = kDefaultIntruderMembers + 1;
inline constexpr int kDefaultIntruderLowRank = 50;
inline constexpr int kDefaultIntruderHighRank = 10;
inline constexpr int kDefaultIntruderTopics = 20;
inline constexpr double kLogOddsEpsilon = 1e-6;

// ---------------------------------------------------------------------------
// Masked-link disambiguation.

// Anchor phrase to evaluate each (source, target) link through.
class AnchorAssociation {
 public:
  // Most frequent normalized anchor per (source, target) over the stored
  // links of the articles; ties go to the smaller phrase.
  static AnchorAssociation FromArticles(std::span<const Article> articles);
  // Most frequent anchor per target over the whole dictionary, used when no
  // article-level link data is at hand.
  static AnchorAssociation FromDictionary(const AnchorDictionary &dict);

  // Explicit per-link association; switches to per-link lookup.
  void Add(const ConceptId &source, const ConceptId &target, std::string phrase);

  std::optional<std::string> Find(const ConceptId &source, const ConceptId &target) const;

 private:
  bool per_article_ = false;
  std::map<std::pair<ConceptId, ConceptId>, std::string> by_link_;
  std::map<ConceptId, std::string> by_target_;
};

struct DisambigBucket {
  int min_candidates = 1;
  int max_candidates = 0;  // 0 means unbounded
  int64_t count = 0;
  int64_t correct = 0;
  double baseline_sum = 0.0;  // sum of 1/|C_p|

  std::string name() const;
  bool Contains(size_t candidates) const;
  // NaN for an empty bucket.
  double accuracy() const;
  double random_baseline() const;
};

// One evaluated masked link.
struct DisambigCase {
  ConceptId source;
  ConceptId target;
  std::string phrase;
  size_t candidates = 0;
  std::optional<ConceptId> chosen;
  bool correct = false;
};

struct DisambigReport {
  std::string lang;
  double mask_fraction = kDefaultMaskFraction;
  uint64_t seed = 0;
  int64_t stored_entries = 0;
  int64_t masked = 0;
  int64_t excluded = 0;  // masked entries with no usable anchor
  // [1,inf], [2,inf], [1,10], [2,10]
  std::vector<DisambigBucket> buckets;
  std::vector<DisambigCase> cases;  // not serialized

  const DisambigBucket &bucket(int min_candidates, int max_candidates) const;
  std::string ToJson() const;
  std::string ToTsv() const;
};

struct DisambigOptions {
  double mask_fraction = kDefaultMaskFraction;
  FactorizeOptions factorize;  // its seed drives both masking and ALS
  // false: masked cells become zeros, as if the link never existed.
  // true: masked cells are dropped from the ALS loss entirely.
  bool masked_unobserved = false;
  // Scales every factor score by this constant before ranking; ranking is
  // invariant to it. Exposed for property tests.
  double score_scale = 1.0;
};

DisambigReport EvalDisambiguation(const AdjacencyMatrix &a, const AnchorDictionary &dict,
                                  const AnchorAssociation &association,
                                  const DisambigOptions &options);

// ---------------------------------------------------------------------------
// Intruder detection tasks.

struct IntruderTask {
  int topic = 0;
  std::vector<ConceptId> members;
  ConceptId intruder;
  std::vector<ConceptId> presentation;
  int answer_index = 0;
};

struct IntruderOptions {
  int members = kDefaultIntruderMembers;
  int low_rank = kDefaultIntruderLowRank;    // intruder ranks at or below this in its topic
  int high_rank = kDefaultIntruderHighRank;  // and within this many of another topic
};

// Tasks follow the random topic selection order.
std::vector<IntruderTask> GenerateIntruders(const TopicModel &model, int n_topics, uint64_t seed,
                                            const IntruderOptions &options = {});

// Task file without answers, and the answer key.
std::string IntruderTasksJson(std::span<const IntruderTask> tasks);
std::string IntruderAnswersJson(std::span<const IntruderTask> tasks);

// ---------------------------------------------------------------------------
// Logistic regression and AUC.

enum class FeatureTransform { kIdentity, kLogOdds };

// ln(p / (1 - p)) with p clamped to [eps, 1 - eps].
double LogOdds(double p);

struct LogisticOptions {
  FeatureTransform transform = FeatureTransform::kIdentity;
  double l2 = 1e-4;
  int epochs = 500;
  double learning_rate = 0.1;
  uint64_t seed = 1;
};

struct LogisticModel {
  FeatureTransform transform = FeatureTransform::kIdentity;
  std::vector<double> weights;  // on the transformed, unstandardized features
  double bias = 0.0;

  double Logit(std::span<const double> x) const;
  double Predict(std::span<const double> x) const;
};

// Full-batch gradient descent on L2-penalized cross-entropy. Features are
// standardized internally. Throws InvalidArgument on single-class input.
LogisticModel FitLogistic(std::span<const std::vector<double>> x, const std::vector<bool> &y,
                          const LogisticOptions &options);

// Mann-Whitney AUC with midranks for ties.
double Auc(std::span<const double> scores, const std::vector<bool> &labels);

// Seeded split stratified by the given labels; train gets round(0.8 n) of
// each stratum, but never the whole stratum when it has 2 or more rows.
struct Split {
  std::vector<size_t> train;
  std::vector<size_t> test;
};
Split StratifiedSplit(std::span<const std::string> strata, double train_fraction, uint64_t seed);

// ---------------------------------------------------------------------------
// Language analyses.

struct LabeledVector {
  std::vector<double> theta;
  std::vector<std::string> labels;
  ConceptId id;  // optional document id
};

struct LabeledVectorSet {
  std::vector<LabeledVector> rows;

  size_t dimension() const { return rows.empty() ? 0 : rows.front().theta.size(); }
  void Add(std::vector<double> theta, std::vector<std::string> labels, ConceptId id = {});
  // Throws InvalidArgument when vectors differ in length.
  void Validate() const;
};

struct LanguageBiasResult {
  std::string lang;
  std::vector<double> weights;
  double bias = 0.0;
  double auc = 0.0;
  int64_t positives = 0;
  int64_t negatives = 0;
};

std::vector<LanguageBiasResult> LanguageBias(
    const std::map<std::string, std::vector<std::vector<double>>> &vectors_by_lang,
    int64_t sample_per_lang, uint64_t seed, int threads = 1);
std::string LanguageBiasJson(std::span<const LanguageBiasResult> results);

enum class DistanceMode { kAll, kCommon };

struct DistanceMatrix {
  std::vector<std::string> langs;
  std::vector<std::vector<double>> values;
  std::vector<std::string> leaf_order;
  int64_t common_concepts = 0;  // kCommon only

  std::string ToTsv() const;
};

double CosineDistance(std::span<const double> a, std::span<const double> b);

// kCommon averages per-article distances over the concepts present in every
// language.
DistanceMatrix LanguageDistances(const std::map<std::string, std::vector<DocumentTopics>> &by_lang,
                                 DistanceMode mode);

// Leaf order of average-linkage agglomerative clustering.
std::vector<size_t> AverageLinkageOrder(const std::vector<std::vector<double>> &distances);

// ---------------------------------------------------------------------------
// Supervised classification.

struct ClassResult {
  std::string label;
  double auc = 0.0;
  int64_t train_positives = 0;
  int64_t test_positives = 0;
};

struct SupervisedReport {
  std::vector<ClassResult> classes;  // sorted by label
  std::vector<std::string> skipped;
  double macro_auc = 0.0;

  std::string ToJson() const;
};

struct SupervisedOptions {
  FeatureTransform transform = FeatureTransform::kIdentity;
  int threads = 1;
};

SupervisedReport SupervisedTopicEval(const LabeledVectorSet &train, const LabeledVectorSet &test,
                                     uint64_t seed, const SupervisedOptions &options = {});

}  // namespace wikipda

#endif  // WIKIPDA_EVAL_H_
