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

#include "wikipda/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <thread>

#include "wikipda/util.h"

namespace wikipda {

namespace {

namespace fs = std::filesystem;

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T ParseNumber(const std::string &field, const std::string &text) {
  std::string t = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidArgument(field + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

bool ParseBool(const std::string &field, const std::string &text) {
  std::string t = Trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw InvalidArgument(field + ": expected a boolean, got '" + text + "'");
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = Trim(std::string_view(text).substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

std::string Resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

template <typename T>
ConfigField Number(std::string name, std::string help, T PipelineConfig::*member) {
  ConfigField f;
  f.name = name;
  f.help = std::move(help);
  f.set_string = [name, member](PipelineConfig &c, const std::string &s) {
    c.*member = ParseNumber<T>(name, s);
  };
  f.set_json = [name, member](PipelineConfig &c, const nlohmann::json &j, const std::string &) {
    if (!j.is_number()) throw InvalidArgument(name + ": expected a number");
    if constexpr (std::is_integral_v<T>) {
      if (!j.is_number_integer()) throw InvalidArgument(name + ": expected an integer");
    }
    c.*member = j.get<T>();
  };
  f.get = [member](const PipelineConfig &c) { return ordered_json(c.*member); };
  return f;
}

ConfigField Text(std::string name, std::string help, std::string PipelineConfig::*member,
                 bool is_path) {
  ConfigField f;
  f.name = name;
  f.help = std::move(help);
  f.set_string = [member](PipelineConfig &c, const std::string &s) { c.*member = s; };
  f.set_json = [name, member, is_path](PipelineConfig &c, const nlohmann::json &j,
                                       const std::string &base) {
    if (!j.is_string()) throw InvalidArgument(name + ": expected a string");
    c.*member = is_path ? Resolve(base, j.get<std::string>()) : j.get<std::string>();
  };
  f.get = [member](const PipelineConfig &c) { return ordered_json(c.*member); };
  return f;
}

std::vector<ConfigField> BuildFields() {
  using C = PipelineConfig;
  std::vector<ConfigField> fields;

  ConfigField languages;
  languages.name = "languages";
  languages.help = "comma-separated language codes";
  languages.set_string = [](C &c, const std::string &s) { c.languages = SplitList(s); };
  languages.set_json = [](C &c, const nlohmann::json &j, const std::string &) {
    if (!j.is_array()) throw InvalidArgument("languages: expected an array");
    c.languages = j.get<std::vector<std::string>>();
  };
  languages.get = [](const C &c) { return ordered_json(c.languages); };
  fields.push_back(languages);

  ConfigField corpus;
  corpus.name = "corpus";
  corpus.help = "per-language source files, lang=path[,lang=path...]";
  corpus.set_string = [](C &c, const std::string &s) {
    c.corpus.clear();
    for (const std::string &item : SplitList(s)) {
      size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InvalidArgument("corpus: expected lang=path, got '" + item + "'");
      }
      c.corpus[item.substr(0, eq)] = item.substr(eq + 1);
    }
  };
  corpus.set_json = [](C &c, const nlohmann::json &j, const std::string &base) {
    if (!j.is_object()) throw InvalidArgument("corpus: expected an object of lang -> path");
    c.corpus.clear();
    for (const auto &[lang, path] : j.items()) {
      if (!path.is_string()) throw InvalidArgument("corpus: paths must be strings");
      c.corpus[lang] = Resolve(base, path.get<std::string>());
    }
  };
  corpus.get = [](const C &c) { return ordered_json(c.corpus); };
  fields.push_back(corpus);

  fields.push_back(Text("redirects", "redirect TSV (lang, from, to)", &C::redirects, true));
  fields.push_back(Text("sitelinks", "sitelink TSV (lang, title, qid)", &C::sitelinks, true));
  fields.push_back(Text("workdir", "artifact directory", &C::workdir, true));
  fields.push_back(Text("labels", "class labels TSV (qid, labels)", &C::labels, true));

  fields.push_back(Number("link_threshold", "minimum anchor link probability", &C::link_threshold));
  fields.push_back(Number("max_candidates", "maximum candidate targets per anchor", &C::max_candidates));
  fields.push_back(Number("ngram_min", "shortest anchor phrase in tokens", &C::ngram_min));
  fields.push_back(Number("ngram_max", "longest anchor phrase in tokens", &C::ngram_max));
  fields.push_back(Number("min_df", "minimum documents per vocabulary concept", &C::min_df));
  fields.push_back(Number("min_doc_links", "minimum links per LDA document", &C::min_doc_links));

  fields.push_back(Number("rank", "factorization rank", &C::rank));
  fields.push_back(Number("lambda", "ALS ridge penalty", &C::lambda));
  fields.push_back(Number("als_iterations", "ALS sweeps", &C::als_iterations));

  fields.push_back(Number("k", "number of topics", &C::k));
  ConfigField alpha;
  alpha.name = "alpha";
  alpha.help = "document-topic prior, or 'auto' for 50/k";
  alpha.set_string = [](C &c, const std::string &s) {
    c.alpha = Trim(s) == "auto" ? 0.0 : ParseNumber<double>("alpha", s);
  };
  alpha.set_json = [](C &c, const nlohmann::json &j, const std::string &) {
    if (j.is_string() && j.get<std::string>() == "auto") {
      c.alpha = 0.0;
    } else if (j.is_number()) {
      c.alpha = j.get<double>();
    } else {
      throw InvalidArgument("alpha: expected a number or \"auto\"");
    }
  };
  alpha.get = [](const C &c) { return c.alpha == 0.0 ? ordered_json("auto") : ordered_json(c.alpha); };
  fields.push_back(alpha);
  fields.push_back(Number("beta", "topic-concept prior", &C::beta));
  fields.push_back(Number("lda_iterations", "Gibbs sweeps for training", &C::lda_iterations));
  fields.push_back(Number("infer_iterations", "Gibbs sweeps for inference", &C::infer_iterations));
  fields.push_back(Number("infer_burn_in", "inference sweeps discarded before averaging", &C::infer_burn_in));

  fields.push_back(Number("seed", "random seed for every stage", &C::seed));

  fields.push_back(Number("mask_fraction", "fraction of links masked for evaluation", &C::mask_fraction));
  fields.push_back(Number("intruder_topics", "topics sampled for intruder tasks", &C::intruder_topics));
  fields.push_back(Number("intruder_members", "top concepts shown per task", &C::intruder_members));
  fields.push_back(Number("intruder_presentation", "concepts shown per task, intruder included",
                          &C::intruder_presentation));
  fields.push_back(Number("intruder_low_rank", "intruder must rank at or below this in its topic",
                          &C::intruder_low_rank));
  fields.push_back(Number("intruder_high_rank", "intruder must rank within this in another topic",
                          &C::intruder_high_rank));
  fields.push_back(Number("bias_sample", "positive examples per language for bias regression",
                          &C::bias_sample));
  fields.push_back(Text("classify_train_lang", "train the classifier on this language only",
                        &C::classify_train_lang, false));
  fields.push_back(Text("classify_test_lang", "test the classifier on this language only",
                        &C::classify_test_lang, false));

  fields.push_back(Number("threads", "worker threads, 0 for all cores", &C::threads));
  ConfigField deterministic;
  deterministic.name = "deterministic";
  deterministic.help = "single-threaded numeric stages";
  deterministic.set_string = [](C &c, const std::string &s) {
    c.deterministic = s.empty() ? true : ParseBool("deterministic", s);
  };
  deterministic.set_json = [](C &c, const nlohmann::json &j, const std::string &) {
    if (!j.is_boolean()) throw InvalidArgument("deterministic: expected a boolean");
    c.deterministic = j.get<bool>();
  };
  deterministic.get = [](const C &c) { return ordered_json(c.deterministic); };
  fields.push_back(deterministic);
  return fields;
}

const ConfigField &FindField(const std::string &name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  for (const ConfigField &f : ConfigFields()) {
    if (f.name == key) return f;
  }
  throw InvalidArgument("unknown configuration field '" + name + "'");
}

}  // namespace

int PipelineConfig::EffectiveThreads() const {
  if (deterministic) return 1;
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

const std::vector<ConfigField> &ConfigFields() {
  static const std::vector<ConfigField> fields = BuildFields();
  return fields;
}

ordered_json ConfigToJson(const PipelineConfig &config) {
  ordered_json j = ordered_json::object();
  for (const ConfigField &f : ConfigFields()) j[f.name] = f.get(config);
  return j;
}

void ApplyConfigJson(PipelineConfig *config, const nlohmann::json &j, const std::string &base_dir) {
  if (!j.is_object()) throw InvalidArgument("configuration must be a JSON object");
  for (const auto &[key, value] : j.items()) FindField(key).set_json(*config, value, base_dir);
}

void ApplyConfigFile(PipelineConfig *config, const std::string &path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  try {
    ApplyConfigJson(config, j, fs::path(path).parent_path().string());
  } catch (const InvalidArgument &e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void ApplyEnvironment(PipelineConfig *config) {
  for (const ConfigField &f : ConfigFields()) {
    std::string var = kEnvPrefix;
    for (char ch : f.name) var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (const char *value = std::getenv(var.c_str())) {
      try {
        f.set_string(*config, value);
      } catch (const InvalidArgument &e) {
        throw InvalidArgument(var + ": " + e.what());
      }
    }
  }
}

void ApplyFlag(PipelineConfig *config, const std::string &name, const std::string &value) {
  FindField(name).set_string(*config, value);
}

void ValidateConfig(const PipelineConfig &c) {
  auto require = [](bool ok, const std::string &message) {
    if (!ok) throw InvalidArgument(message);
  };
  std::set<std::string> seen;
  for (const std::string &lang : c.languages) {
    require(!lang.empty() && lang.find_first_of("/\\. \t") == std::string::npos,
            "languages: invalid code '" + lang + "'");
    require(seen.insert(lang).second, "languages: duplicate code '" + lang + "'");
  }
  require(!c.workdir.empty(), "workdir: must not be empty");
  require(c.link_threshold > 0.0 && c.link_threshold <= 1.0, "link_threshold: must be in (0, 1]");
  require(c.max_candidates >= 1, "max_candidates: must be >= 1");
  require(c.ngram_min >= 1, "ngram_min: must be >= 1");
  require(c.ngram_max >= c.ngram_min, "ngram_max: must be >= ngram_min");
  require(c.min_df >= 1, "min_df: must be >= 1");
  require(c.min_doc_links >= 1, "min_doc_links: must be >= 1");
  require(c.rank >= 1, "rank: must be >= 1");
  require(c.lambda >= 0.0, "lambda: must be >= 0");
  require(c.als_iterations >= 1, "als_iterations: must be >= 1");
  require(c.k >= 2, "k: must be >= 2");
  require(c.alpha >= 0.0, "alpha: must be positive or auto");
  require(c.beta > 0.0, "beta: must be positive");
  require(c.lda_iterations >= 1, "lda_iterations: must be >= 1");
  require(c.infer_burn_in >= 0, "infer_burn_in: must be >= 0");
  require(c.infer_iterations > c.infer_burn_in, "infer_iterations: must exceed infer_burn_in");
  require(c.mask_fraction > 0.0 && c.mask_fraction < 1.0, "mask_fraction: must be in (0, 1)");
  require(c.intruder_topics >= 1, "intruder_topics: must be >= 1");
  require(c.intruder_members >= 1, "intruder_members: must be >= 1");
  require(c.intruder_presentation == c.intruder_members + 1,
          "intruder_presentation: must equal intruder_members + 1");
  require(c.intruder_low_rank >= c.intruder_members,
          "intruder_low_rank: must be >= intruder_members");
  require(c.intruder_high_rank >= 1, "intruder_high_rank: must be >= 1");
  require(c.bias_sample >= 2, "bias_sample: must be >= 2");
  require(c.threads >= 0, "threads: must be >= 0");
}

}  // namespace wikipda
