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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "support/synthetic.h"
#include "wikipda/eval.h"
#include "wikipda/pipeline.h"
#include "wikipda/util.h"

namespace wikipda {
namespace {

namespace fs = std::filesystem;
using testing::Q;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// ---------------------------------------------------------------------------

void AlsOracle(Outcome &o) {
  std::mt19937_64 rng(20);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd dense(20, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) dense(i, j) = std::abs(normal(rng)) + 0.05;
  }
  FactorizeOptions full;
  full.rank = 20;
  full.lambda = 0.0;
  full.iterations = 10;
  FactorModel model = Factorize(testing::DenseAdjacency(dense), full);
  const double err = (dense - model.u() * model.v().transpose()).squaredNorm();
  const double optimum = testing::TruncatedSvdError(dense, 20);
  const double rel = std::abs(err - optimum) / dense.squaredNorm();
  o.detail << "full-rank relative gap " << rel;
  o.Require(rel <= 1e-4, "full-rank gap <= 1e-4");

  // Planted rank 1 with 5% of the cells held out of the loss.
  const int n = 40;
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 0.5 + Uniform01(rng);
    y(i) = 0.5 + Uniform01(rng);
  }
  Eigen::MatrixXd rank1 = x * y.transpose();
  AdjacencyMatrix a = testing::DenseAdjacency(rank1);
  std::vector<MatrixEntry> entries = a.Entries();
  Shuffle(entries, rng);
  entries.resize(entries.size() / 20);
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry &l, const MatrixEntry &r) {
              return std::pair(l.row, l.col) < std::pair(r.row, r.col);
            });
  FactorizeOptions one;
  one.rank = 1;
  one.lambda = 0.0;
  one.iterations = 50;
  FactorModel m1 = Factorize(a.WithoutEntries(entries), one, entries);
  double worst = 0.0;
  for (const MatrixEntry &e : entries) {
    worst = std::max(worst, std::abs(m1.ScoreOrdinals(e.row, e.col) - rank1(e.row, e.col)));
  }
  o.detail << "; rank-1 masked max error " << worst << " over " << entries.size() << " cells";
  o.Require(worst <= 1e-3, "masked recovery <= 1e-3");
}

// Fraction of links to an ambiguous name for which the exact rank-2 SVD of
// the unmasked matrix scores the true target above its namesake.
double SvdSeparability(const AdjacencyMatrix &a, const testing::PlantedCorpus &corpus,
                       const testing::PlantedOptions &p) {
  const Eigen::Index n = static_cast<Eigen::Index>(a.dimension());
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (const MatrixEntry &e : a.Entries()) dense(e.row, e.col) = e.weight;
  Eigen::MatrixXd recon = testing::TruncatedSvd(dense, 2);
  int right = 0, total = 0;
  for (const Article &article : corpus.articles) {
    for (const ExtractedLink &link : article.links) {
      int t = std::stoi(link.target.str().substr(1)) - 1;
      if (t % p.per_community >= p.ambiguous_pairs) continue;
      int partner = t < p.per_community ? t + p.per_community : t - p.per_community;
      auto row = a.index().Find(article.id);
      auto col = a.index().Find(link.target);
      auto other = a.index().Find(Q(partner + 1));
      if (!row || !col || !other) continue;
      ++total;
      right += recon(*row, *col) > recon(*row, *other);
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(right) / total;
}

void DisambiguationBeatsChance(Outcome &o) {
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    testing::PlantedOptions p;
    p.communities = 2;
    p.per_community = 100;
    p.links_inside = 12;
    p.links_across = 1;
    p.ambiguous_pairs = 40;
    p.seed = seed;
    testing::PlantedCorpus corpus = testing::PlantedPartition(p);
    const std::vector<Article> &articles = corpus.articles;
    AdjacencyMatrix adjacency = BuildAdjacency(articles);
    const double separable = SvdSeparability(adjacency, corpus, p);
    o.Require(separable >= 0.9, "exact SVD separates the communities");
    DisambigOptions d;
    d.factorize.rank = 2;  // one dimension per planted community
    d.factorize.seed = seed;
    DisambigReport r = EvalDisambiguation(adjacency, BuildDictionary(articles, "en"),
                                          AnchorAssociation::FromArticles(articles), d);
    const DisambigBucket &b = r.bucket(2, 0);
    const double lift = b.accuracy() - b.random_baseline();
    o.detail << (seed == 1 ? "" : "; ") << "seed " << seed << ": " << b.accuracy() << " vs "
             << b.random_baseline() << " (n=" << b.count << ", svd oracle " << separable << ")";
    o.Require(b.count > 0 && lift >= 0.2, "lift >= 0.2 for seed " + std::to_string(seed));
    for (int upper : {0, 10}) {
      o.Require(r.bucket(1, upper).accuracy() >= r.bucket(2, upper).accuracy(),
                "bucket monotonicity for seed " + std::to_string(seed));
    }
  }
}

void DensificationRatio(Outcome &o) {
  // Each linked concept is mentioned three times; only the first is a link.
  testing::PlantedOptions p;
  p.per_community = 100;
  p.links_inside = 10;
  p.ambiguous_pairs = 0;
  p.plain_mentions = 2;
  std::vector<Article> articles = testing::PlantedPartition(p).articles;
  FactorizeOptions f;
  f.rank = 8;
  FactorModel model = Factorize(BuildAdjacency(articles), f);
  DensifyStats stats;
  DensifyCorpus(articles, BuildDictionary(articles, "en"), model, {}, 1, &stats);
  o.detail << "ratio " << stats.ratio() << " (" << stats.densified_links << "/"
           << stats.sparse_links << ")";
  o.Require(std::abs(stats.ratio() - 3.0) <= 0.1, "ratio within 3.0 +/- 0.1");
}

// Fraction of held-out documents whose argmax topic maps to their generator
// under the best of the two topic-to-generator matchings.
double MatchingAccuracy(const TopicModel &model, const testing::LdaCorpus &held_out) {
  InferOptions io;
  int agree = 0;
  for (size_t d = 0; d < held_out.bags.size(); ++d) {
    TopicVector theta = Infer(model, held_out.bags[d], io);
    agree += static_cast<int>(theta.Argmax()) == held_out.generator[d];
  }
  const double n = static_cast<double>(held_out.bags.size());
  return std::max(agree, static_cast<int>(n) - agree) / n;
}

void LdaRecovery(Outcome &o) {
  testing::LdaCorpus train = testing::GenerateLdaCorpus(500, 2, 30, 40, 1);
  testing::LdaCorpus held_out = testing::GenerateLdaCorpus(200, 2, 30, 40, 2, 900000);
  TrainOptions t;
  t.num_topics = 2;
  t.iterations = 200;
  t.seed = 7;
  PrunedCorpus pruned = Prune(train.bags, 1, 1);
  TopicModel model = Train(pruned, t);
  const double accuracy = MatchingAccuracy(model, held_out);
  o.detail << "held-out matching " << accuracy;
  o.Require(accuracy >= 0.95, "matching >= 0.95");
  const bool same = Train(pruned, t) == model;
  o.detail << (same ? "; retrain identical" : "; retrain differs");
  o.Require(same, "deterministic training");
}

LabeledVectorSet ModeVectors(int per_class, uint64_t seed) {
  // Class c concentrates on topic c; modes overlap so the task is not trivial.
  const int k = 5;
  std::mt19937_64 rng(seed);
  LabeledVectorSet set;
  for (int i = 0; i < per_class * k; ++i) {
    int c = i % k;
    std::vector<double> theta(k);
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
      theta[j] = std::gamma_distribution<double>(j == c ? 2.0 : 1.0, 1.0)(rng);
      sum += theta[j];
    }
    for (double &x : theta) x /= sum;
    set.Add(std::move(theta), {"class" + std::to_string(c)});
  }
  return set;
}

void ZeroShot(Outcome &o) {
  testing::LdaCorpus train = testing::GenerateLdaCorpus(200, 2, 20, 30, 3);
  TrainOptions t;
  t.num_topics = 2;
  t.iterations = 50;
  TopicModel model = Train(Prune(train.bags, 1, 1), t);
  testing::LdaCorpus docs = testing::GenerateLdaCorpus(50, 2, 20, 30, 4, 700000);
  InferOptions io;
  bool identical = true;
  for (BagOfLinks bag : docs.bags) {
    bag.lang = "en";
    TopicVector a = Infer(model, bag, io);
    bag.lang = "sw";
    TopicVector b = Infer(model, bag, io);
    identical = identical && a.probabilities == b.probabilities;
  }
  o.detail << (identical ? "relabeled vectors identical" : "relabeled vectors differ");
  o.Require(identical, "language relabeling is a no-op");

  LabeledVectorSet lang_a = ModeVectors(300, 1);
  LabeledVectorSet lang_a_test = ModeVectors(1000, 2);
  LabeledVectorSet lang_b_test = ModeVectors(1000, 3);
  const double same = SupervisedTopicEval(lang_a, lang_a_test, 1).macro_auc;
  const double cross = SupervisedTopicEval(lang_a, lang_b_test, 1).macro_auc;
  o.detail << "; same-language AUC " << same << ", cross-language " << cross;
  o.Require(std::abs(same - cross) <= 0.05, "AUC gap <= 0.05");
}

void EvaluationArithmetic(Outcome &o) {
  const std::vector<double> scores{0.1, 0.4, 0.35, 0.8};
  const std::vector<bool> labels{false, false, true, true};
  const double auc = Auc(scores, labels);
  o.detail << "auc " << auc;
  o.Require(auc == 0.75 && testing::PairwiseAuc(scores, labels) == 0.75, "auc == 0.75");

  testing::PlantedOptions p;
  p.per_community = 60;
  p.ambiguous_pairs = 25;
  std::vector<Article> articles = testing::PlantedPartition(p).articles;
  DisambigOptions d;
  d.factorize.rank = 4;
  d.mask_fraction = 0.2;
  DisambigReport r = EvalDisambiguation(BuildAdjacency(articles), BuildDictionary(articles, "en"),
                                        AnchorAssociation::FromArticles(articles), d);
  double worst = 0.0;
  for (const DisambigBucket &b : r.buckets) {
    double sum = 0.0;
    int64_t n = 0;
    for (const DisambigCase &c : r.cases) {
      if (c.candidates < static_cast<size_t>(b.min_candidates)) continue;
      if (b.max_candidates != 0 && c.candidates > static_cast<size_t>(b.max_candidates)) continue;
      sum += 1.0 / static_cast<double>(c.candidates);
      ++n;
    }
    if (n > 0) worst = std::max(worst, std::abs(sum / static_cast<double>(n) - b.random_baseline()));
  }
  o.detail << "; baseline max deviation " << worst;
  o.Require(worst <= 1e-15, "baselines equal mean 1/|C_p|");

  const double lo = LogOdds(0.5);
  o.detail << "; logodds(0.5) " << lo;
  o.Require(lo == 0.0, "logodds(0.5) == 0");
}

std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).generic_string()] = ReadFile(e.path().string());
    }
  }
  return files;
}

bool RunPipeline(const fs::path &work, std::ostringstream &log) {
  const std::string config = std::string(WIKIPDA_TOY_DIR) + "/config.json";
  for (const char *stage : {"ingest", "build-anchors", "build-adjacency", "factorize", "densify",
                            "train-lda", "infer", "eval-disambig", "intruders", "lang-bias",
                            "distances", "classify"}) {
    std::ostringstream out, err;
    int code = RunCli({stage, "--config", config, "--workdir", work.string(), "--deterministic",
                       "-q"},
                      out, err);
    if (code != kExitOk) {
      log << stage << " exited " << code << ": " << err.str();
      return false;
    }
  }
  return true;
}

void Reproducibility(Outcome &o) {
  fs::path work = fs::temp_directory_path() / "wikipda_acceptance_repro";
  fs::remove_all(work);
  std::ostringstream log;
  o.Require(RunPipeline(work, log), "first run");
  auto first = Snapshot(work);
  fs::remove_all(work);
  o.Require(RunPipeline(work, log), "second run");
  auto second = Snapshot(work);
  fs::remove_all(work);
  size_t differing = 0;
  for (const auto &[path, bytes] : first) {
    auto it = second.find(path);
    if (it == second.end() || it->second != bytes) {
      ++differing;
      o.detail << " differs: " << path;
    }
  }
  o.detail << first.size() << " artifacts compared, " << differing << " differ" << log.str();
  o.Require(!first.empty() && differing == 0 && first.size() == second.size(),
            "byte-identical artifacts");
}

void DefaultsAudit(Outcome &o) {
  std::ostringstream out, err;
  int code = RunCli({"defaults"}, out, err);
  o.Require(code == kExitOk, "defaults exits 0");
  nlohmann::json j = nlohmann::json::parse(out.str());
  const std::vector<std::pair<std::string, nlohmann::json>> expected{
      {"link_threshold", 0.065}, {"ngram_min", 1},      {"ngram_max", 4},
      {"max_candidates", 10},    {"rank", 150},         {"mask_fraction", 0.05},
      {"min_doc_links", 10},     {"min_df", 500},       {"intruder_members", 5},
      {"intruder_presentation", 6}};
  for (const auto &[key, value] : expected) {
    bool ok = j.contains(key) && j[key] == value;
    o.Require(ok, key + " == " + value.dump());
  }
  o.detail << expected.size() << " constants checked";
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;  // 0: unbounded
  std::function<void(Outcome &)> run;
};

}  // namespace
}  // namespace wikipda

int main() {
  using namespace wikipda;
  SetLogLevel(LogLevel::kQuiet);
  const std::vector<Criterion> criteria{
      {1, "ALS oracle equivalence", 5, AlsOracle},
      {2, "disambiguation beats chance", 60, DisambiguationBeatsChance},
      {3, "densification ratio", 10, DensificationRatio},
      {4, "LDA recovery", 60, LdaRecovery},
      {5, "zero-shot structural check", 0, ZeroShot},
      {6, "evaluation arithmetic", 0, EvaluationArithmetic},
      {7, "reproducibility", 0, Reproducibility},
      {8, "defaults audit", 0, DefaultsAudit},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      o.pass = false;
      o.detail << " [over the " << c.budget_seconds << " s budget]";
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name
              << ", " << FormatDouble(std::round(seconds * 100) / 100) << " s): "
              << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
