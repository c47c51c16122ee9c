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
#include <map>
#include <numeric>
#include <random>

#include "wikipda/eval.h"

namespace wikipda {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double Transform(FeatureTransform t, double x) {
  return t == FeatureTransform::kLogOdds ? LogOdds(x) : x;
}

}  // namespace

double LogOdds(double p) {
  p = std::clamp(p, kLogOddsEpsilon, 1.0 - kLogOddsEpsilon);
  return std::log(p / (1.0 - p));
}

double LogisticModel::Logit(std::span<const double> x) const {
  if (x.size() != weights.size()) throw InvalidArgument("feature vector has the wrong length");
  double z = bias;
  for (size_t k = 0; k < x.size(); ++k) z += weights[k] * Transform(transform, x[k]);
  return z;
}

double LogisticModel::Predict(std::span<const double> x) const { return Sigmoid(Logit(x)); }

LogisticModel FitLogistic(std::span<const std::vector<double>> x, const std::vector<bool> &y,
                          const LogisticOptions &options) {
  if (x.size() != y.size()) throw InvalidArgument("features and labels differ in length");
  const size_t n = x.size();
  const int64_t positives = std::count(y.begin(), y.end(), true);
  if (positives == 0 || positives == static_cast<int64_t>(n)) {
    throw InvalidArgument("logistic regression needs both classes in the training set");
  }
  if (options.epochs < 1 || !(options.learning_rate > 0.0) || !(options.l2 >= 0.0)) {
    throw InvalidArgument("invalid logistic regression options");
  }
  const size_t d = x.front().size();

  // Transformed and standardized design matrix.
  std::vector<double> mean(d, 0.0), scale(d, 0.0);
  std::vector<std::vector<double>> z(n, std::vector<double>(d));
  for (size_t i = 0; i < n; ++i) {
    if (x[i].size() != d) throw InvalidArgument("feature vectors differ in length");
    for (size_t k = 0; k < d; ++k) {
      z[i][k] = Transform(options.transform, x[i][k]);
      mean[k] += z[i][k];
    }
  }
  for (double &m : mean) m /= static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < d; ++k) scale[k] += (z[i][k] - mean[k]) * (z[i][k] - mean[k]);
  }
  for (double &s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s < 1e-12) s = 1.0;
  }
  for (auto &row : z) {
    for (size_t k = 0; k < d; ++k) row[k] = (row[k] - mean[k]) / scale[k];
  }

  std::vector<double> w(d, 0.0), grad(d);
  double b = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double s = b;
      for (size_t k = 0; k < d; ++k) s += w[k] * z[i][k];
      double r = Sigmoid(s) - (y[i] ? 1.0 : 0.0);
      for (size_t k = 0; k < d; ++k) grad[k] += r * z[i][k];
      grad_b += r;
    }
    for (size_t k = 0; k < d; ++k) {
      w[k] -= options.learning_rate * (grad[k] * inv_n + options.l2 * w[k]);
    }
    b -= options.learning_rate * grad_b * inv_n;
  }

  // Fold the standardization back into the coefficients.
  LogisticModel model;
  model.transform = options.transform;
  model.weights.resize(d);
  model.bias = b;
  for (size_t k = 0; k < d; ++k) {
    model.weights[k] = w[k] / scale[k];
    model.bias -= model.weights[k] * mean[k];
  }
  return model;
}

double Auc(std::span<const double> scores, const std::vector<bool> &labels) {
  if (scores.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  int64_t positives = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const int64_t negatives = static_cast<int64_t>(n) - positives;
  if (positives == 0 || negatives == 0) throw InvalidArgument("AUC needs both classes");
  const double np = static_cast<double>(positives);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(negatives));
}

Split StratifiedSplit(std::span<const std::string> strata, double train_fraction, uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train_fraction must be in (0, 1)");
  }
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < strata.size(); ++i) groups[strata[i]].push_back(i);
  std::mt19937_64 rng(seed);
  Split split;
  for (auto &[label, rows] : groups) {
    Shuffle(rows, rng);
    size_t n_train = static_cast<size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
    if (rows.size() >= 2) n_train = std::clamp<size_t>(n_train, 1, rows.size() - 1);
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

void LabeledVectorSet::Add(std::vector<double> theta, std::vector<std::string> labels,
                           ConceptId id) {
  rows.push_back({std::move(theta), std::move(labels), std::move(id)});
}

void LabeledVectorSet::Validate() const {
  const size_t k = dimension();
  for (const LabeledVector &row : rows) {
    if (row.theta.size() != k) throw InvalidArgument("labeled vectors differ in length");
  }
}

}  // namespace wikipda
