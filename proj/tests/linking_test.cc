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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "support/synthetic.h"
#include "wikipda/adjacency.h"
#include "wikipda/densify.h"
#include "wikipda/factorize.h"

namespace wikipda {
namespace {

using testing::MakeArticle;
using testing::Q;

TEST_CASE("idf weighting") {
  SUBCASE("N=100, d_j=1") {
    std::vector<Article> articles;
    articles.push_back(MakeArticle(1, "en", {{"x", 2}}));
    for (int i = 3; i <= 101; ++i) articles.push_back(MakeArticle(i, "en", {{"y", 1}}));
    AdjacencyMatrix a = BuildAdjacency(articles);
    CHECK(a.num_articles() == 100);
    size_t src = *a.index().Find(Q(1));
    size_t dst = *a.index().Find(Q(2));
    CHECK(a.At(src, dst) == doctest::Approx(-std::log(0.01)).epsilon(1e-12));
    CHECK(a.At(src, dst) == doctest::Approx(4.6052).epsilon(1e-4));
  }
  SUBCASE("a target linked from every article is dropped") {
    std::vector<Article> articles{MakeArticle(1, "en", {{"x", 3}}),
                                  MakeArticle(2, "en", {{"x", 3}})};
    AdjacencyMatrix a = BuildAdjacency(articles);
    CHECK(a.nnz() == 0);
  }
  SUBCASE("two articles linking each other") {
    std::vector<Article> articles{MakeArticle(1, "en", {{"b", 2}}),
                                  MakeArticle(2, "en", {{"a", 1}})};
    AdjacencyMatrix a = BuildAdjacency(articles);
    REQUIRE(a.nnz() == 2);
    for (const MatrixEntry &e : a.Entries()) {
      CHECK(e.weight == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
  }
  SUBCASE("repeated links count once") {
    std::vector<Article> articles{MakeArticle(1, "en", {{"b", 2}, {"b", 2}}),
                                  MakeArticle(3, "en", {{"c", 4}})};
    AdjacencyMatrix a = BuildAdjacency(articles);
    CHECK(a.At(*a.index().Find(Q(1)), *a.index().Find(Q(2))) ==
          doctest::Approx(std::log(2.0)));
  }
  SUBCASE("empty corpus") {
    CHECK_THROWS_AS(BuildAdjacency(std::span<const Article>{}), InvalidArgument);
  }
}

TEST_CASE("adjacency serialization and editing") {
  testing::PlantedOptions o;
  o.per_community = 12;
  o.links_inside = 4;
  o.links_across = 1;
  AdjacencyMatrix a = BuildAdjacency(testing::PlantedPartition(o).articles);
  std::ostringstream out;
  a.Write(out);
  std::istringstream in(out.str());
  CHECK(AdjacencyMatrix::Read(in, "adj") == a);

  std::vector<MatrixEntry> entries = a.Entries();
  std::vector<MatrixEntry> removed{entries[0], entries[5]};
  AdjacencyMatrix reduced = a.WithoutEntries(removed);
  CHECK(reduced.nnz() == a.nnz() - 2);
  CHECK(reduced.At(entries[0].row, entries[0].col) == 0.0);
  CHECK(reduced.At(entries[1].row, entries[1].col) == entries[1].weight);

  AdjacencyMatrix t = a.Transposed();
  for (const MatrixEntry &e : entries) CHECK(t.At(e.col, e.row) == e.weight);
}

TEST_CASE("rank-1 factorization reproduces stored entries") {
  const int n = 12;
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 0.5 + 0.1 * i;
    y(i) = 1.5 - 0.07 * i;
  }
  Eigen::MatrixXd dense = x * y.transpose();
  AdjacencyMatrix a = testing::DenseAdjacency(dense);
  FactorizeOptions options;
  options.rank = 1;
  options.lambda = 0.0;
  options.iterations = 30;
  FactorModel model = Factorize(a, options);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(model.ScoreOrdinals(i, j) - dense(i, j)));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("full-rank factorization matches the svd optimum") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd dense(20, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) dense(i, j) = std::abs(normal(rng)) + 0.1;
  }
  AdjacencyMatrix a = testing::DenseAdjacency(dense);
  for (int r : {5, 20}) {
    FactorizeOptions options;
    options.rank = r;
    options.lambda = 0.0;
    options.iterations = r == 20 ? 20 : 300;
    FactorModel model = Factorize(a, options);
    Eigen::MatrixXd recon = model.u() * model.v().transpose();
    double err = (dense - recon).squaredNorm();
    double optimum = testing::TruncatedSvdError(dense, r);
    double scale = dense.squaredNorm();
    CAPTURE(r);
    CHECK(std::abs(err - optimum) / scale < 1e-4);
  }
}

TEST_CASE("als objective and reproducibility") {
  testing::PlantedOptions o;
  o.per_community = 20;
  o.links_inside = 5;
  o.links_across = 2;
  AdjacencyMatrix a = BuildAdjacency(testing::PlantedPartition(o).articles);
  FactorizeOptions options;
  options.rank = 6;
  options.iterations = 8;
  options.seed = 42;
  FactorModel m1 = Factorize(a, options);
  FactorModel m2 = Factorize(a, options);
  CHECK(m1.u() == m2.u());
  CHECK(m1.v() == m2.v());
  REQUIRE(m1.objective_trace.size() == 9);
  for (size_t k = 1; k < m1.objective_trace.size(); ++k) {
    CHECK(m1.objective_trace[k] <= m1.objective_trace[k - 1] * (1 + 1e-12));
  }
  CHECK(AlsObjective(a, m1.u(), m1.v(), options.lambda) ==
        doctest::Approx(m1.objective_trace.back()));

  options.seed = 43;
  CHECK(Factorize(a, options).u() != m1.u());

  options.rank = static_cast<int>(a.dimension()) + 1;
  CHECK_THROWS_AS(Factorize(a, options), InvalidArgument);
}

TEST_CASE("factor model file round trip") {
  RowMatrix u(3, 2), v(3, 2);
  u << 1, 2, 3, 4, 5, 6;
  v << 0.5, 0.25, -1, 2, 0, 1;
  ConceptIndex index;
  for (int i = 1; i <= 3; ++i) index.Add(Q(i));
  FactorModel model("en", index, u, v);
  model.seed = 9;
  model.lambda = 0.05;
  model.iterations = 3;
  std::ostringstream out;
  model.Write(out);
  std::istringstream in(out.str());
  FactorModel back = FactorModel::Read(in, "model");
  CHECK(back.u() == u);
  CHECK(back.v() == v);
  CHECK(back.seed == 9);
  CHECK(back.iterations == 3);
  CHECK(back.index() == index);
  CHECK(back.Score(Q(1), Q(2)) == std::optional<double>(1 * -1 + 2 * 2));
  CHECK_FALSE(back.Score(Q(1), Q(7)).has_value());

  std::string truncated = out.str().substr(0, 20);
  std::istringstream bad(truncated);
  CHECK_THROWS_AS(FactorModel::Read(bad, "bad"), ParseError);
}

// Model over Q1..Qn with explicit row vectors.
FactorModel Embeddings(const std::vector<std::vector<double>> &u_rows,
                       const std::vector<std::vector<double>> &v_rows) {
  const size_t n = u_rows.size(), r = u_rows[0].size();
  RowMatrix u(n, r), v(n, r);
  ConceptIndex index;
  for (size_t i = 0; i < n; ++i) {
    index.Add(Q(static_cast<int>(i) + 1));
    for (size_t k = 0; k < r; ++k) {
      u(i, k) = u_rows[i][k];
      v(i, k) = v_rows[i][k];
    }
  }
  return FactorModel("en", index, u, v);
}

AnchorEntry Entry(std::string phrase, std::map<ConceptId, int64_t> candidates, int64_t total) {
  AnchorEntry e;
  e.phrase = std::move(phrase);
  e.candidates = std::move(candidates);
  for (const auto &[cid, n] : e.candidates) e.link_occurrences += n;
  e.total_occurrences = total;
  return e;
}

TEST_CASE("scores and disambiguation") {
  FactorModel model = Embeddings({{0, 0}, {1, 0}, {0, 1}}, {{1, 1}, {0.9, 0}, {0.1, 0}});
  CHECK(model.Score(Q(1), Q(2)) == std::optional<double>(0.0));
  CHECK(model.Score(Q(2), Q(2)) == std::optional<double>(0.9));

  CHECK(Disambiguate(model, Q(2), Entry("x", {{Q(3), 1}}, 1)) == Q(3));
  CHECK(Disambiguate(model, Q(2), Entry("x", {{Q(2), 1}, {Q(3), 5}}, 6)) == Q(2));
  CHECK(Disambiguate(model, Q(2), Entry("x", {{Q(2), 1}, {Q(3), 5}}, 6)) ==
        Disambiguate(model, Q(2), Entry("x", {{Q(2), 1}, {Q(3), 5}}, 6)));
  CHECK_FALSE(Disambiguate(model, Q(9), Entry("x", {{Q(2), 1}}, 1)).has_value());
  CHECK_FALSE(Disambiguate(model, Q(2), Entry("x", {{Q(8), 1}}, 1)).has_value());
}

TEST_CASE("exact ties go to the more frequent candidate, then the smaller id") {
  ConceptIndex index;
  for (int id : {1, 44, 682112, 45}) index.Add(Q(id));
  RowMatrix u(4, 2), v(4, 2);
  u << 1, 1, 0, 0, 0, 0, 0, 0;
  // Mirror-image embeddings give identical scores.
  v << 0, 0, 0.3, 0.7, 0.7, 0.3, 0.7, 0.3;
  FactorModel model("en", index, u, v);
  REQUIRE(*model.Score(Q(1), Q(44)) == *model.Score(Q(1), Q(682112)));
  CHECK(Disambiguate(model, Q(1), Entry("beer", {{Q(44), 9}, {Q(682112), 1}}, 20)) == Q(44));
  CHECK(Disambiguate(model, Q(1), Entry("beer", {{Q(44), 1}, {Q(682112), 9}}, 20)) ==
        Q(682112));
  CHECK(Disambiguate(model, Q(1), Entry("beer", {{Q(45), 3}, {Q(44), 3}}, 20)) == Q(44));
}

FactorModel Uniform(const std::vector<int> &qids) {
  ConceptIndex index;
  for (int q : qids) index.Add(Q(q));
  RowMatrix u = RowMatrix::Ones(qids.size(), 1), v = RowMatrix::Ones(qids.size(), 1);
  return FactorModel("en", index, u, v);
}

TEST_CASE("densify prefers the longest match") {
  AnchorDictionary dict("en", 4);
  dict.Insert(Entry("india pale ale", {{Q(2), 5}}, 6));
  dict.Insert(Entry("india", {{Q(3), 5}}, 6));
  dict.Insert(Entry("pale ale", {{Q(4), 5}}, 6));
  FactorModel model = Uniform({1, 2, 3, 4});
  Article a = MakeArticle(1, "en", {{"I like India pale ale a lot", 0}});
  BagOfLinks bag = DensifyArticle(a, dict, model);
  CHECK(bag.counts.size() == 1);
  CHECK(bag.counts.at(Q(2)) == LinkCount{0, 1});

  DensifyOptions only_long;
  only_long.ngram_min = 2;
  Article b = MakeArticle(1, "en", {{"India and pale ale", 0}});
  BagOfLinks bag_b = DensifyArticle(b, dict, model, only_long);
  CHECK(bag_b.counts.size() == 1);
  CHECK(bag_b.counts.count(Q(4)) == 1);
}

TEST_CASE("densify keeps existing links and adds unlinked mentions") {
  AnchorDictionary dict("en", 4);
  dict.Insert(Entry("beer", {{Q(44), 1}}, 2));
  FactorModel model = Uniform({1, 44});
  Article a = MakeArticle(1, "en", {{"beer", 44}, {"and more", 0}, {"beer", 0}});
  BagOfLinks bag = DensifyArticle(a, dict, model);
  CHECK(bag.counts.at(Q(44)).total() == 2);
  CHECK(bag.counts.at(Q(44)).existing == 1);
  CHECK(bag.provenance(Q(44)) == Provenance::kExisting);

  SUBCASE("no matches leaves the sparse bag") {
    Article plain = MakeArticle(1, "en", {{"stout", 7}, {"porter", 8}, {"nothing here", 0}});
    DensifyStats stats;
    std::vector<Article> corpus{plain};
    std::vector<BagOfLinks> bags = DensifyCorpus(corpus, dict, model, {}, 1, &stats);
    CHECK(bags[0] == SparseBag(plain));
    CHECK(stats.ratio() == 1.0);
  }
  SUBCASE("ineligible phrases are skipped") {
    AnchorDictionary rare("en", 4);
    rare.Insert(Entry("beer", {{Q(44), 1}}, 100));
    Article text = MakeArticle(1, "en", {{"beer beer", 0}});
    CHECK(DensifyArticle(text, rare, model).counts.empty());
  }
}

TEST_CASE("densified bags contain the sparse bag") {
  testing::PlantedOptions o;
  o.per_community = 20;
  o.links_inside = 5;
  o.links_across = 1;
  o.ambiguous_pairs = 6;
  o.plain_mentions = 2;
  std::vector<Article> articles = testing::PlantedPartition(o).articles;
  AnchorDictionary dict = BuildDictionary(articles, "en");
  FactorizeOptions fo;
  fo.rank = 4;
  FactorModel model = Factorize(BuildAdjacency(articles), fo);
  DensifyStats stats;
  std::vector<BagOfLinks> bags = DensifyCorpus(articles, dict, model, {}, 2, &stats);
  std::vector<BagOfLinks> serial = DensifyCorpus(articles, dict, model, {}, 1, nullptr);
  CHECK(bags == serial);
  CHECK(stats.ratio() >= 1.0);
  for (size_t i = 0; i < articles.size(); ++i) {
    BagOfLinks sparse = SparseBag(articles[i]);
    for (const auto &[cid, c] : sparse.counts) {
      REQUIRE(bags[i].counts.count(cid));
      CHECK(bags[i].counts.at(cid).existing == c.existing);
      CHECK(bags[i].counts.at(cid).total() >= c.total());
    }
  }
  std::ostringstream out;
  WriteBags(out, bags);
  std::istringstream in(out.str());
  CHECK(ReadBags(in, "bags") == bags);
}

}  // namespace
}  // namespace wikipda
