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
#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "support/synthetic.h"
#include "wikipda/eval.h"

namespace wikipda {
namespace {

using testing::Q;

// ---------------------------------------------------------------------------
// Disambiguation.

struct Planted {
  std::vector<Article> articles;
  AdjacencyMatrix adjacency;
  AnchorDictionary dict;
  AnchorAssociation association;
};

Planted MakePlanted(uint64_t seed, int per_community = 60) {
  testing::PlantedOptions o;
  o.per_community = per_community;
  o.links_inside = 10;
  o.links_across = 1;
  o.ambiguous_pairs = per_community / 3;
  o.seed = seed;
  Planted p;
  p.articles = testing::PlantedPartition(o).articles;
  p.adjacency = BuildAdjacency(p.articles);
  p.dict = BuildDictionary(p.articles, "en");
  p.association = AnchorAssociation::FromArticles(p.articles);
  return p;
}

DisambigOptions SmallOptions(uint64_t seed) {
  DisambigOptions o;
  o.mask_fraction = 0.1;
  o.factorize.rank = 2;
  o.factorize.iterations = 10;
  o.factorize.seed = seed;
  return o;
}

void CheckBucketInvariants(const DisambigReport &r) {
  for (int upper : {0, 10}) {
    const DisambigBucket &all = r.bucket(1, upper);
    const DisambigBucket &ambiguous = r.bucket(2, upper);
    if (ambiguous.count > 0) {
      CHECK(all.accuracy() >= ambiguous.accuracy());
      CHECK(all.random_baseline() >= ambiguous.random_baseline());
    }
  }
}

TEST_CASE("unambiguous anchors are always resolved") {
  Planted p = MakePlanted(1);
  // Every link gets a phrase naming only its own target.
  AnchorAssociation association;
  AnchorDictionary dict("en", 4);
  for (const Article &a : p.articles) {
    for (const ExtractedLink &l : a.links) {
      AnchorEntry e;
      e.phrase = "c" + l.target.str().substr(1);
      e.total_occurrences = e.link_occurrences = 1;
      e.candidates[l.target] = 1;
      association.Add(a.id, l.target, e.phrase);
      if (!dict.Find(e.phrase)) dict.Insert(e);
    }
  }
  DisambigReport r = EvalDisambiguation(p.adjacency, dict, association, SmallOptions(2));
  const DisambigBucket &all = r.bucket(1, 0);
  REQUIRE(all.count > 0);
  CHECK(all.accuracy() == 1.0);
  CHECK(all.random_baseline() == 1.0);
  CHECK(r.bucket(2, 0).count == 0);
  CHECK(std::isnan(r.bucket(2, 0).accuracy()));
}

TEST_CASE("baseline for candidate sets of sizes 2 and 4") {
  ConceptIndex index;
  for (int q = 1; q <= 7; ++q) index.Add(Q(q));
  AdjacencyMatrix a = AdjacencyMatrix::FromEntries("en", index, 7, {{0, 1, 1.0}, {2, 3, 1.0}});
  AnchorDictionary dict("en", 4);
  auto entry = [](std::string phrase, std::vector<int> qids) {
    AnchorEntry e;
    e.phrase = std::move(phrase);
    for (int q : qids) e.candidates[Q(q)] = 1;
    e.link_occurrences = e.total_occurrences = static_cast<int64_t>(qids.size());
    return e;
  };
  dict.Insert(entry("two", {2, 5}));
  dict.Insert(entry("four", {4, 5, 6, 7}));
  AnchorAssociation association;
  association.Add(Q(1), Q(2), "two");
  association.Add(Q(3), Q(4), "four");
  DisambigOptions o;
  o.mask_fraction = 0.75;  // rounds to both entries
  o.factorize.rank = 1;
  DisambigReport r = EvalDisambiguation(a, dict, association, o);
  CHECK(r.masked == 2);
  CHECK(r.bucket(2, 0).count == 2);
  CHECK(r.bucket(2, 0).random_baseline() == 0.375);
  CHECK(r.bucket(2, 10).random_baseline() == 0.375);
}

TEST_CASE("masked links without a usable anchor are excluded") {
  Planted p = MakePlanted(3, 30);
  AnchorAssociation empty;
  CHECK_THROWS_AS(EvalDisambiguation(p.adjacency, p.dict, empty, SmallOptions(1)),
                  InvalidArgument);
  DisambigOptions bad = SmallOptions(1);
  bad.mask_fraction = 1.0;
  CHECK_THROWS_AS(EvalDisambiguation(p.adjacency, p.dict, p.association, bad), InvalidArgument);
}

TEST_CASE("planted partition beats chance and keeps bucket invariants") {
  for (uint64_t seed : {1, 2, 3}) {
    CAPTURE(seed);
    Planted p = MakePlanted(seed);
    DisambigReport r = EvalDisambiguation(p.adjacency, p.dict, p.association, SmallOptions(seed));
    const DisambigBucket &b = r.bucket(2, 0);
    REQUIRE(b.count > 0);
    CHECK(b.accuracy() - b.random_baseline() >= 0.2);
    CheckBucketInvariants(r);

    double baseline = 0.0;
    int64_t n = 0;
    for (const DisambigCase &c : r.cases) {
      if (c.candidates < 2) continue;
      baseline += 1.0 / static_cast<double>(c.candidates);
      ++n;
    }
    CHECK(n == b.count);
    CHECK(std::abs(baseline / n - b.random_baseline()) < 1e-15);
  }
}

TEST_CASE("rescaling scores changes no choice") {
  Planted p = MakePlanted(4, 40);
  DisambigReport base = EvalDisambiguation(p.adjacency, p.dict, p.association, SmallOptions(4));
  for (double scale : {1e-3, 2.0, 1e4}) {
    DisambigOptions o = SmallOptions(4);
    o.score_scale = scale;
    DisambigReport r = EvalDisambiguation(p.adjacency, p.dict, p.association, o);
    REQUIRE(r.cases.size() == base.cases.size());
    for (size_t i = 0; i < r.cases.size(); ++i) CHECK(r.cases[i].chosen == base.cases[i].chosen);
    for (size_t i = 0; i < r.buckets.size(); ++i) {
      CHECK(r.buckets[i].correct == base.buckets[i].correct);
    }
  }
}

TEST_CASE("disambiguation report serializes") {
  Planted p = MakePlanted(5, 30);
  DisambigReport r = EvalDisambiguation(p.adjacency, p.dict, p.association, SmallOptions(5));
  nlohmann::json j = nlohmann::json::parse(r.ToJson());
  CHECK(j["buckets"].size() == 4);
  CHECK(j["buckets"][1]["bucket"] == "[2,inf]");
  CHECK(r.ToTsv().find("[1,10]") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Intruders.

TopicModel TrainTopics(int generators, int words, int docs, int iterations) {
  testing::LdaCorpus corpus = testing::GenerateLdaCorpus(docs, generators, words, 30, 8);
  TrainOptions o;
  o.num_topics = generators;
  o.alpha = 0.1;
  o.iterations = iterations;
  o.seed = 2;
  return Train(Prune(corpus.bags, 1, 1), o);
}

TEST_CASE("intruder tasks") {
  SUBCASE("two disjoint topics") {
    TopicModel model = TrainTopics(2, 25, 100, 50);
    std::vector<IntruderTask> tasks = GenerateIntruders(model, 2, 1);
    REQUIRE(tasks.size() == 2);
    for (const IntruderTask &t : tasks) {
      std::vector<ConceptId> other = TopConcepts(model, 1 - t.topic, 10);
      CHECK(std::find(other.begin(), other.end(), t.intruder) != other.end());
    }
  }
  SUBCASE("K=40, n=20") {
    TopicModel model = TrainTopics(40, 10, 400, 20);
    std::vector<IntruderTask> tasks = GenerateIntruders(model, 20, 7);
    REQUIRE(tasks.size() == 20);
    std::set<int> topics;
    for (const IntruderTask &t : tasks) {
      topics.insert(t.topic);
      CHECK(t.members == TopConcepts(model, t.topic, 5));
      CHECK(std::find(t.members.begin(), t.members.end(), t.intruder) == t.members.end());
      REQUIRE(t.presentation.size() == 6);
      CHECK(t.presentation[t.answer_index] == t.intruder);
      std::vector<ConceptId> sorted = t.presentation, expected = t.members;
      expected.push_back(t.intruder);
      std::sort(sorted.begin(), sorted.end());
      std::sort(expected.begin(), expected.end());
      CHECK(sorted == expected);
    }
    CHECK(topics.size() == 20);

    std::vector<IntruderTask> again = GenerateIntruders(model, 20, 7);
    CHECK(IntruderAnswersJson(again) == IntruderAnswersJson(tasks));
    CHECK(IntruderTasksJson(again) == IntruderTasksJson(tasks));
    CHECK(IntruderTasksJson(tasks).find("intruder") == std::string::npos);
  }
  SUBCASE("a single topic is rejected") {
    std::vector<BagOfLinks> bags(1);
    bags[0].id = Q(1);
    bags[0].Add(Q(2), Provenance::kExisting);
    TopicModel one(1, 0.1, 0.01, Prune(bags, 1, 1).vocabulary, 1);
    CHECK_THROWS_AS(GenerateIntruders(one, 1, 1), InvalidArgument);
  }
}

// ---------------------------------------------------------------------------
// Logistic regression and AUC.

TEST_CASE("auc") {
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  std::vector<bool> y{false, false, true, true};
  CHECK(Auc(s, y) == 0.75);
  CHECK(testing::PairwiseAuc(s, y) == 0.75);
  CHECK(Auc(std::vector<double>{1, 2, 3, 4}, y) == 1.0);
  CHECK(Auc(std::vector<double>{1, 1, 1, 1}, y) == 0.5);
  CHECK_THROWS_AS(Auc(s, std::vector<bool>(4, true)), InvalidArgument);

  std::mt19937_64 rng(5);
  std::vector<double> scores;
  std::vector<bool> labels;
  for (int i = 0; i < 4000; ++i) {
    scores.push_back(std::round(Uniform01(rng) * 20) / 20);
    labels.push_back(Uniform01(rng) < 0.3);
  }
  CHECK(Auc(scores, labels) == doctest::Approx(testing::PairwiseAuc(scores, labels)).epsilon(1e-12));
  CHECK(std::abs(Auc(scores, labels) - 0.5) < 0.05);

  std::vector<double> transformed;
  for (double x : scores) transformed.push_back(std::exp(3 * x) - 7);
  CHECK(Auc(transformed, labels) == Auc(scores, labels));
}

TEST_CASE("logistic regression") {
  CHECK(LogOdds(0.5) == 0.0);
  CHECK(LogOdds(0.0) == doctest::Approx(std::log(1e-6 / (1 - 1e-6))));
  CHECK(LogOdds(1.0) == doctest::Approx(-LogOdds(0.0)));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<std::vector<double>> x;
  std::vector<bool> y;
  for (int i = 0; i < 200; ++i) {
    bool positive = i % 2 == 0;
    x.push_back({(positive ? 2.0 : -2.0) + noise(rng), noise(rng)});
    y.push_back(positive);
  }
  LogisticModel model = FitLogistic(x, y, {});
  std::vector<double> scores;
  for (const auto &row : x) scores.push_back(model.Predict(row));
  CHECK(Auc(scores, y) >= 0.99);
  CHECK(model.weights[0] > 0.0);

  std::vector<std::vector<double>> flat(50, std::vector<double>{0.3, 0.7});
  std::vector<bool> mixed;
  for (int i = 0; i < 50; ++i) mixed.push_back(i % 2 == 0);
  LogisticModel none = FitLogistic(flat, mixed, {});
  std::vector<double> flat_scores;
  for (const auto &row : flat) flat_scores.push_back(none.Predict(row));
  CHECK(std::abs(Auc(flat_scores, mixed) - 0.5) <= 0.05);

  CHECK_THROWS_AS(FitLogistic(flat, std::vector<bool>(50, true), {}), InvalidArgument);
}

TEST_CASE("stratified split") {
  std::vector<std::string> strata;
  for (int i = 0; i < 50; ++i) strata.push_back(i < 40 ? "a" : "b");
  Split s = StratifiedSplit(strata, 0.8, 1);
  CHECK(s.train.size() + s.test.size() == 50);
  int train_b = 0;
  for (size_t i : s.train) train_b += strata[i] == "b";
  CHECK(train_b == 8);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  Split again = StratifiedSplit(strata, 0.8, 1);
  CHECK(again.train == s.train);
}

// ---------------------------------------------------------------------------
// Language analyses.

std::vector<std::vector<double>> DirichletVectors(int n, const std::vector<double> &alpha,
                                                  uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v;
    double sum = 0.0;
    for (double a : alpha) {
      v.push_back(std::gamma_distribution<double>(a, 1.0)(rng));
      sum += v.back();
    }
    for (double &x : v) x /= sum;
    out.push_back(std::move(v));
  }
  return out;
}

TEST_CASE("language bias") {
  SUBCASE("disjoint dominant topics") {
    std::map<std::string, std::vector<std::vector<double>>> by_lang{
        {"en", DirichletVectors(300, {8, 1, 1}, 1)}, {"fr", DirichletVectors(300, {1, 8, 1}, 2)}};
    std::vector<LanguageBiasResult> r = LanguageBias(by_lang, 200, 1, 2);
    REQUIRE(r.size() == 2);
    for (const LanguageBiasResult &l : r) CHECK(l.auc >= 0.95);
  }
  SUBCASE("identical distributions") {
    std::map<std::string, std::vector<std::vector<double>>> by_lang{
        {"de", DirichletVectors(600, {2, 2, 2}, 3)},
        {"en", DirichletVectors(600, {2, 2, 2}, 4)},
        {"xx", {}}};
    std::vector<LanguageBiasResult> r = LanguageBias(by_lang, 10000, 1);
    REQUIRE(r.size() == 2);
    for (const LanguageBiasResult &l : r) {
      CHECK(std::abs(l.auc - 0.5) < 0.1);
      CHECK(l.positives == 600);
    }
    CHECK(nlohmann::json::parse(LanguageBiasJson(r)).size() == 2);
  }
}

DocumentTopics Doc(int q, const std::string &lang, std::vector<double> theta) {
  return {Q(q), lang, {std::move(theta), false, 0}};
}

TEST_CASE("cosine distances") {
  CHECK(CosineDistance(std::vector<double>{1, 2}, std::vector<double>{2, 4}) ==
        doctest::Approx(0.0));
  CHECK(CosineDistance(std::vector<double>{1, 0}, std::vector<double>{0, 3}) == 1.0);

  std::map<std::string, std::vector<DocumentTopics>> by_lang;
  std::mt19937_64 rng(2);
  for (const char *lang : {"de", "en", "fr", "it"}) {
    for (int q = 1; q <= 30; ++q) {
      if (q % 4 == 0 && std::string(lang) == "it") continue;
      auto v = DirichletVectors(1, {1, 1, 1, 1}, rng())[0];
      by_lang[lang].push_back(Doc(q, lang, v));
    }
  }
  for (DistanceMode mode : {DistanceMode::kAll, DistanceMode::kCommon}) {
    DistanceMatrix d = LanguageDistances(by_lang, mode);
    REQUIRE(d.langs.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
      CHECK(d.values[i][i] == 0.0);
      for (size_t j = 0; j < 4; ++j) {
        CHECK(d.values[i][j] == d.values[j][i]);
        CHECK(d.values[i][j] >= 0.0);
        CHECK(d.values[i][j] <= 2.0);
      }
    }
    CHECK(d.leaf_order.size() == 4);
    if (mode == DistanceMode::kCommon) CHECK(d.common_concepts == 23);
  }
}

TEST_CASE("average linkage places the similar pair together") {
  std::vector<std::vector<double>> means{{1, 0, 0}, {0, 1, 0}, {0.02, 1, 0}};
  std::vector<std::vector<double>> d(3, std::vector<double>(3));
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) d[i][j] = i == j ? 0.0 : CosineDistance(means[i], means[j]);
  }
  std::vector<size_t> order = AverageLinkageOrder(d);
  REQUIRE(order.size() == 3);
  auto pos = [&](size_t x) { return std::find(order.begin(), order.end(), x) - order.begin(); };
  CHECK(std::abs(pos(1) - pos(2)) == 1);
  // Of the three distinct orders up to reversal, only those with 0 at an
  // end keep the pair adjacent.
  CHECK((pos(0) == 0 || pos(0) == 2));
}

// ---------------------------------------------------------------------------
// Supervised classification.

LabeledVectorSet ArgmaxLabeled(int n, uint64_t seed, bool random_labels) {
  LabeledVectorSet set;
  std::mt19937_64 rng(seed ^ 0x99);
  const std::vector<std::string> names{"arts", "science", "sports", "history"};
  for (const auto &v : DirichletVectors(n, {0.5, 0.5, 0.5, 0.5}, seed)) {
    size_t best = std::max_element(v.begin(), v.end()) - v.begin();
    size_t label = random_labels ? UniformIndex(rng, 4) : best;
    set.Add(v, {names[label]});
  }
  return set;
}

TEST_CASE("supervised topic classification") {
  SUBCASE("labels from argmax topic") {
    SupervisedReport r = SupervisedTopicEval(ArgmaxLabeled(800, 1, false),
                                             ArgmaxLabeled(400, 2, false), 1);
    CHECK(r.classes.size() == 4);
    CHECK(r.macro_auc >= 0.95);
  }
  SUBCASE("random labels") {
    SupervisedReport r = SupervisedTopicEval(ArgmaxLabeled(800, 3, true),
                                             ArgmaxLabeled(800, 4, true), 1);
    CHECK(std::abs(r.macro_auc - 0.5) < 0.08);
  }
  SUBCASE("classes missing from test or rare in train are skipped") {
    LabeledVectorSet train = ArgmaxLabeled(200, 5, false);
    train.Add({0.25, 0.25, 0.25, 0.25}, {"rare"});
    LabeledVectorSet test;
    for (const LabeledVector &row : ArgmaxLabeled(200, 6, false).rows) {
      if (row.labels[0] != "sports") test.Add(row.theta, row.labels);
    }
    SupervisedReport r = SupervisedTopicEval(train, test, 1);
    std::set<std::string> skipped(r.skipped.begin(), r.skipped.end());
    CHECK(skipped == std::set<std::string>{"rare", "sports"});
    double sum = 0.0;
    for (const ClassResult &c : r.classes) sum += c.auc;
    CHECK(r.macro_auc == doctest::Approx(sum / r.classes.size()));
    CHECK(nlohmann::json::parse(r.ToJson()).contains("macro_auc"));
  }
  SUBCASE("ragged vectors are rejected") {
    LabeledVectorSet bad;
    bad.Add({0.5, 0.5}, {"a"});
    bad.Add({1.0}, {"a"});
    CHECK_THROWS_AS(bad.Validate(), InvalidArgument);
  }
}

}  // namespace
}  // namespace wikipda
