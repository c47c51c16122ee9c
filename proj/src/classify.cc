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

#include "json.hpp"
#include "wikipda/eval.h"

namespace wikipda {

namespace {

bool HasLabel(const LabeledVector &row, const std::string &label) {
  return std::find(row.labels.begin(), row.labels.end(), label) != row.labels.end();
}

struct ClassOutcome {
  std::optional<ClassResult> result;
  std::string reason;  // set when skipped
};

ClassOutcome EvalClass(const LabeledVectorSet &train, const LabeledVectorSet &test,
                       const std::string &label, const std::vector<std::string> &classes,
                       uint64_t seed, const SupervisedOptions &options) {
  ClassOutcome outcome;
  std::vector<size_t> positives;
  for (size_t i = 0; i < train.rows.size(); ++i) {
    if (HasLabel(train.rows[i], label)) positives.push_back(i);
  }
  if (positives.size() < 2) {
    outcome.reason = "fewer than 2 training positives";
    return outcome;
  }

  // Balanced negatives, split evenly over the other classes.
  std::mt19937_64 rng(seed);
  const size_t others = classes.size() - 1;
  const size_t per_other = others == 0 ? 0 : (positives.size() + others - 1) / others;
  std::set<size_t> chosen;
  for (const std::string &other : classes) {
    if (other == label) continue;
    std::vector<size_t> pool;
    for (size_t i = 0; i < train.rows.size(); ++i) {
      const LabeledVector &row = train.rows[i];
      if (HasLabel(row, other) && !HasLabel(row, label) && !chosen.count(i)) pool.push_back(i);
    }
    Shuffle(pool, rng);
    for (size_t k = 0; k < per_other && k < pool.size(); ++k) chosen.insert(pool[k]);
  }
  if (chosen.empty()) {
    outcome.reason = "no negative training examples";
    return outcome;
  }

  std::vector<std::vector<double>> x;
  std::vector<bool> y;
  for (size_t i : positives) {
    x.push_back(train.rows[i].theta);
    y.push_back(true);
  }
  for (size_t i : chosen) {
    x.push_back(train.rows[i].theta);
    y.push_back(false);
  }
  LogisticOptions lr;
  lr.transform = options.transform;
  lr.seed = seed;
  LogisticModel model = FitLogistic(x, y, lr);

  std::vector<double> scores;
  std::vector<bool> labels;
  int64_t test_positives = 0;
  for (const LabeledVector &row : test.rows) {
    scores.push_back(model.Logit(row.theta));
    labels.push_back(HasLabel(row, label));
    test_positives += labels.back() ? 1 : 0;
  }
  if (test_positives == 0 || test_positives == static_cast<int64_t>(labels.size())) {
    outcome.reason = "test set lacks positives or negatives";
    return outcome;
  }
  outcome.result = ClassResult{label, Auc(scores, labels), static_cast<int64_t>(positives.size()),
                               test_positives};
  return outcome;
}

}  // namespace

SupervisedReport SupervisedTopicEval(const LabeledVectorSet &train, const LabeledVectorSet &test,
                                     uint64_t seed, const SupervisedOptions &options) {
  train.Validate();
  test.Validate();
  if (train.rows.empty() || test.rows.empty()) throw InvalidArgument("empty train or test set");
  if (train.dimension() != test.dimension()) {
    throw InvalidArgument("train and test vectors differ in length");
  }
  std::set<std::string> label_set;
  for (const LabeledVector &row : train.rows) label_set.insert(row.labels.begin(), row.labels.end());
  std::vector<std::string> classes(label_set.begin(), label_set.end());
  if (classes.size() < 2) throw InvalidArgument("supervised evaluation needs at least 2 classes");

  std::vector<ClassOutcome> outcomes(classes.size());
  ParallelFor(classes.size(), options.threads, [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      outcomes[c] = EvalClass(train, test, classes[c], classes, MixSeed(seed, Fnv1a64(classes[c])),
                              options);
    }
  });

  SupervisedReport report;
  double sum = 0.0;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (!outcomes[c].result) {
      LogWarning("class " + classes[c] + " skipped: " + outcomes[c].reason);
      report.skipped.push_back(classes[c]);
      continue;
    }
    sum += outcomes[c].result->auc;
    report.classes.push_back(*outcomes[c].result);
  }
  report.macro_auc = report.classes.empty() ? std::nan("")
                                            : sum / static_cast<double>(report.classes.size());
  return report;
}

std::string SupervisedReport::ToJson() const {
  nlohmann::ordered_json j;
  j["macro_auc"] = std::isnan(macro_auc) ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(macro_auc);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const ClassResult &c : classes) {
    list.push_back({{"label", c.label},
                    {"auc", c.auc},
                    {"train_positives", c.train_positives},
                    {"test_positives", c.test_positives}});
  }
  j["classes"] = std::move(list);
  j["skipped"] = skipped;
  return j.dump(2) + "\n";
}

}  // namespace wikipda
