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

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "doctest.h"
#include "wikipda/config.h"
#include "wikipda/eval.h"
#include "wikipda/manifest.h"
#include "wikipda/pipeline.h"
#include "wikipda/util.h"

namespace wikipda {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path TempDir(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("wikipda_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST_CASE("sha256") {
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("config precedence is flag, environment, file, default") {
  fs::path dir = TempDir("precedence");
  WriteFile((dir / "c.json").string(),
            R"({"rank": 12, "k": 7, "lambda": 0.5, "workdir": "out", "corpus": {"en": "en.xml"}})");
  PipelineConfig c;
  ApplyConfigFile(&c, (dir / "c.json").string());
  CHECK(c.rank == 12);
  CHECK(c.k == 7);
  CHECK(fs::path(c.workdir) == dir / "out");
  CHECK(fs::path(c.corpus.at("en")) == dir / "en.xml");

  ::setenv("WIKIPDA_K", "9", 1);
  ::setenv("WIKIPDA_LAMBDA", "0.25", 1);
  ApplyEnvironment(&c);
  ::unsetenv("WIKIPDA_K");
  ::unsetenv("WIKIPDA_LAMBDA");
  CHECK(c.k == 9);
  CHECK(c.lambda == 0.25);
  ApplyFlag(&c, "lambda", "0.125");
  ApplyFlag(&c, "link-threshold", "0.1");
  CHECK(c.lambda == 0.125);
  CHECK(c.link_threshold == 0.1);
  CHECK(c.rank == 12);
  CHECK(c.max_candidates == 10);

  CHECK_THROWS_AS(ApplyFlag(&c, "rank", "abc"), InvalidArgument);
  CHECK_THROWS_AS(ApplyFlag(&c, "no_such_field", "1"), InvalidArgument);
  CHECK_THROWS(ApplyConfigJson(&c, nlohmann::json::parse(R"({"rnak": 3})"), "."));
}

TEST_CASE("config validation") {
  PipelineConfig c;
  c.languages = {"en"};
  CHECK_NOTHROW(ValidateConfig(c));
  auto broken = [&](auto mutate) {
    PipelineConfig b = c;
    mutate(b);
    return b;
  };
  CHECK_THROWS_AS(ValidateConfig(broken([](auto &b) { b.mask_fraction = 1.0; })), InvalidArgument);
  CHECK_THROWS_AS(ValidateConfig(broken([](auto &b) { b.ngram_min = 5; })), InvalidArgument);
  CHECK_THROWS_AS(ValidateConfig(broken([](auto &b) { b.k = 1; })), InvalidArgument);
  CHECK_THROWS_AS(ValidateConfig(broken([](auto &b) { b.infer_burn_in = 100; })),
                  InvalidArgument);
  CHECK_THROWS_AS(ValidateConfig(broken([](auto &b) { b.intruder_presentation = 7; })),
                  InvalidArgument);
  PipelineConfig det = c;
  det.deterministic = true;
  det.threads = 8;
  CHECK(det.EffectiveThreads() == 1);
}

TEST_CASE("config defaults agree with the module defaults") {
  PipelineConfig c;
  CHECK(c.link_threshold == kDefaultLinkThreshold);
  CHECK(c.max_candidates == kDefaultMaxCandidates);
  CHECK(c.ngram_max == kDefaultNgramMax);
  CHECK(c.rank == kDefaultRank);
  CHECK(c.lambda == kDefaultLambda);
  CHECK(c.als_iterations == kDefaultAlsIterations);
  CHECK(c.min_df == kDefaultMinDf);
  CHECK(c.min_doc_links == kDefaultMinDocLinks);
  CHECK(c.k == kDefaultTopics);
  CHECK(c.beta == kDefaultBeta);
  CHECK(c.lda_iterations == kDefaultLdaIterations);
  CHECK(c.infer_iterations == kDefaultInferIterations);
  CHECK(c.infer_burn_in == kDefaultInferBurnIn);
  CHECK(c.mask_fraction == kDefaultMaskFraction);
  CHECK(c.intruder_topics == kDefaultIntruderTopics);
  CHECK(c.intruder_members == kDefaultIntruderMembers);
  CHECK(c.intruder_presentation == kDefaultIntruderPresentation);
  CHECK(c.intruder_low_rank == kDefaultIntruderLowRank);
  CHECK(c.intruder_high_rank == kDefaultIntruderHighRank);
}

TEST_CASE("defaults subcommand") {
  Result r = Run({"defaults"});
  REQUIRE(r.code == kExitOk);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["link_threshold"] == 0.065);
  CHECK(j["rank"] == 150);
  CHECK(j.size() == ConfigFields().size());
}

TEST_CASE("cli errors") {
  fs::path dir = TempDir("errors");
  SUBCASE("unknown subcommand") { CHECK(Run({"frobnicate"}).code == kExitUserError); }
  SUBCASE("missing factor model names its producer") {
    const std::string config = std::string(WIKIPDA_TOY_DIR) + "/config.json";
    for (const char *stage : {"ingest", "build-anchors"}) {
      REQUIRE(Run({stage, "--config", config, "--workdir", dir.string(), "-q"}).code == kExitOk);
    }
    Result r = Run({"densify", "--config", config, "--workdir", dir.string(), "-q"});
    CHECK(r.code == kExitUserError);
    CHECK(r.err.find("factorize") != std::string::npos);
  }
  SUBCASE("invalid config is reported before any work") {
    Result r = Run({"ingest", "--workdir", (dir / "never").string(), "--rank", "0"});
    CHECK(r.code == kExitUserError);
    CHECK(r.err.find("rank") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "never"));
  }
  SUBCASE("--iters on a stage without iterations") {
    CHECK(Run({"intruders", "--iters", "3", "--workdir", dir.string()}).code == kExitUserError);
  }
}

const std::vector<std::string> kStages{
    "ingest",    "build-anchors", "build-adjacency", "factorize",
    "densify",   "train-lda",     "infer",           "eval-disambig",
    "intruders", "lang-bias",     "distances",       "classify"};

TEST_CASE("full pipeline on the toy corpus") {
  fs::path work = TempDir("toy");
  const std::string config = std::string(WIKIPDA_TOY_DIR) + "/config.json";
  for (const std::string &stage : kStages) {
    Result r = Run({stage, "--config", config, "--workdir", work.string(), "--deterministic",
                    "-q"});
    CAPTURE(stage);
    CAPTURE(r.err);
    REQUIRE(r.code == kExitOk);
  }

  // Reports parse and reflect the planted communities.
  auto report = [&](const std::string &name) {
    return nlohmann::json::parse(ReadFile((work / "reports" / name).string()));
  };
  for (const char *lang : {"en", "fr"}) {
    nlohmann::json d = report(std::string("disambig.") + lang + ".json");
    CHECK(d["lang"] == lang);
    REQUIRE(d["buckets"].size() == 4);
    CHECK(d["buckets"][1]["count"].get<int>() > 0);
    CHECK(d["buckets"][0]["accuracy"].get<double>() >= d["buckets"][1]["accuracy"].get<double>());
  }
  nlohmann::json densify = report("densify.json");
  for (const auto &lang : densify) CHECK(lang["ratio"].get<double>() >= 1.0);
  nlohmann::json tasks = report("intruders.tasks.json");
  CHECK(tasks.size() == 2);
  CHECK(report("lang_bias.json").size() == 2);
  CHECK(report("classify.json")["macro_auc"].get<double>() >= 0.9);
  CHECK(fs::exists(work / "reports" / "distances.common.tsv"));

  std::vector<DocumentTopics> vectors = ReadDocumentTopicsFile((work / "vectors.jsonl").string());
  CHECK(vectors.size() == 200);

  // Every output is listed in exactly one manifest, with its current hash.
  std::map<std::string, int> listed;
  for (const auto &entry : fs::directory_iterator(work / "manifests")) {
    nlohmann::json m = nlohmann::json::parse(ReadFile(entry.path().string()));
    for (const auto &out : m["outputs"]) {
      std::string path = out["path"];
      listed[path]++;
      CHECK(out["sha256"] == Sha256File((work / path).string()));
    }
    std::set<std::string> outputs;
    for (const auto &out : m["outputs"]) outputs.insert(out["path"].get<std::string>());
    for (const auto &in : m["inputs"]) {
      std::string path = in["path"];
      CHECK(fs::exists(work / path));
      CHECK(outputs.count(path) == 0);
    }
  }
  for (const auto &entry : fs::recursive_directory_iterator(work)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), work).generic_string();
    if (rel.rfind("manifests/", 0) == 0) continue;
    CAPTURE(rel);
    CHECK(listed[rel] == 1);
  }

  SUBCASE("infer on an explicit file") {
    fs::path out = work / "single.jsonl";
    Result r = Run({"infer", "--config", config, "--workdir", work.string(), "--model",
                    (work / "topics.bin").string(), "--in", (work / "bags.fr.jsonl").string(),
                    "--out", out.string(), "-q"});
    REQUIRE(r.code == kExitOk);
    CHECK(ReadDocumentTopicsFile(out.string()).size() == 100);
  }
}

}  // namespace
}  // namespace wikipda
