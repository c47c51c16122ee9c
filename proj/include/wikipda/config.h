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

// Pipeline configuration. Every field has a flag of the same name (with
// '-' accepted for '_'), an environment variable WIKIPDA_<NAME>, and a key
// in the JSON config file. Precedence: flag > environment > file > default.

#ifndef WIKIPDA_CONFIG_H_
#define WIKIPDA_CONFIG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace wikipda {

inline constexpr char kVersion[] = "0.1.0";
inline constexpr char kEnvPrefix[] = "WIKIPDA_";

struct PipelineConfig {
  std::vector<std::string> languages;
  std::map<std::string, std::string> corpus;  // lang -> dump or canonical file
  std::string redirects;
  std::string sitelinks;
  std::string workdir = "work";
  std::string labels;  // TSV: qid <TAB> comma-separated labels

  double link_threshold = 0.065;
  int max_candidates = 10;
  int ngram_min = 1;
  int ngram_max = 4;
  int64_t min_df = 500;
  int64_t min_doc_links = 10;

  int rank = 150;
  double lambda = 0.05;
  int als_iterations = 10;

  int k = 40;
  double alpha = 0.0;  // 0 means auto (50 / k)
  double beta = 0.01;
  int lda_iterations = 200;
  int infer_iterations = 100;
  int infer_burn_in = 50;

  uint64_t seed = 1;

  double mask_fraction = 0.05;
  int intruder_topics = 20;
  int intruder_members = 5;
  int intruder_presentation = 6;  // members plus the intruder
  int intruder_low_rank = 50;
  int intruder_high_rank = 10;
  int64_t bias_sample = 20000;
  std::string classify_train_lang;  // empty: all languages, 80/20 split
  std::string classify_test_lang;

  int threads = 0;  // 0: hardware concurrency
  bool deterministic = false;

  // Worker count after applying `deterministic` and hardware limits.
  int EffectiveThreads() const;
};

using ordered_json = nlohmann::ordered_json;

struct ConfigField {
  std::string name;
  std::string help;
  std::function<void(PipelineConfig &, const std::string &)> set_string;
  // Relative paths in file values resolve against the given directory.
  std::function<void(PipelineConfig &, const nlohmann::json &, const std::string &)> set_json;
  std::function<ordered_json(const PipelineConfig &)> get;
};

// All fields in display order.
const std::vector<ConfigField> &ConfigFields();

// JSON object with every field.
ordered_json ConfigToJson(const PipelineConfig &config);

// Applies a JSON object; unknown keys are an error. Relative paths are
// resolved against base_dir.
void ApplyConfigJson(PipelineConfig *config, const nlohmann::json &j, const std::string &base_dir);
void ApplyConfigFile(PipelineConfig *config, const std::string &path);
// Reads WIKIPDA_<NAME> variables for every field.
void ApplyEnvironment(PipelineConfig *config);
void ApplyFlag(PipelineConfig *config, const std::string &name, const std::string &value);

// Throws InvalidArgument naming the first offending field.
void ValidateConfig(const PipelineConfig &config);

}  // namespace wikipda

#endif  // WIKIPDA_CONFIG_H_
