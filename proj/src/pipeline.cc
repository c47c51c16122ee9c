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

#include "wikipda/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "wikipda/adjacency.h"
#include "wikipda/anchors.h"
#include "wikipda/config.h"
#include "wikipda/corpus.h"
#include "wikipda/densify.h"
#include "wikipda/eval.h"
#include "wikipda/factorize.h"
#include "wikipda/manifest.h"
#include "wikipda/topics.h"
#include "wikipda/util.h"

namespace wikipda {

namespace {

namespace fs = std::filesystem;

struct Context {
  std::string subcommand;
  PipelineConfig config;
  bool lang_scoped = false;  // --lang restricted the run
  std::string infer_model, infer_in, infer_out;
  std::ostream *out = nullptr;
};

class Workdir {
 public:
  explicit Workdir(std::string root) : root_(std::move(root)) {}

  std::string Path(const std::string &name) const { return (fs::path(root_) / name).string(); }
  std::string Articles(const std::string &lang) const { return Path("articles." + lang + ".jsonl"); }
  std::string Anchors(const std::string &lang) const { return Path("anchors." + lang + ".jsonl"); }
  std::string Adjacency(const std::string &lang) const { return Path("adjacency." + lang + ".tsv"); }
  std::string Factors(const std::string &lang) const { return Path("factors." + lang + ".bin"); }
  std::string Bags(const std::string &lang) const { return Path("bags." + lang + ".jsonl"); }
  std::string Topics() const { return Path("topics.bin"); }
  std::string Vectors() const { return Path("vectors.jsonl"); }
  std::string Report(const std::string &name) const { return Path("reports/" + name); }
  std::string Manifest(const std::string &name) const { return Path("manifests/" + name + ".json"); }
  const std::string &root() const { return root_; }

 private:
  std::string root_;
};

// Fails with the subcommand that produces a missing artifact.
void Require(const std::string &path, const std::string &producer) {
  if (!fs::exists(path)) {
    throw IoError("missing artifact " + path + "; run `wikipda " + producer + "` first");
  }
}

void RequireLanguages(const PipelineConfig &config) {
  if (config.languages.empty()) {
    throw InvalidArgument("languages: at least one language is required for this subcommand");
  }
}

void EnsureParent(const std::string &path) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void WriteText(RunManifest *manifest, const std::string &path, std::string_view contents) {
  EnsureParent(path);
  WriteFile(path, contents);
  manifest->AddOutput(path);
}

template <typename Fn>
void WriteStream(RunManifest *manifest, const std::string &path, Fn &&fn) {
  EnsureParent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  fn(out);
  out.close();
  if (!out) throw IoError("cannot write " + path);
  manifest->AddOutput(path);
}

void LogDiagnostics(const std::string &what, const Diagnostics &d) {
  for (const auto &[name, count] : d.counts()) {
    LogInfo(what + " " + name + "=" + std::to_string(count));
  }
}

void FinishManifest(const Context &ctx, const Workdir &work, const RunManifest &manifest) {
  std::string name = ctx.subcommand;
  if (ctx.lang_scoped) name += "." + ctx.config.languages.front();
  std::string path = work.Manifest(name);
  EnsureParent(path);
  manifest.Write(path);
}

FactorizeOptions AlsOptions(const PipelineConfig &c) {
  FactorizeOptions o;
  o.rank = c.rank;
  o.lambda = c.lambda;
  o.iterations = c.als_iterations;
  o.seed = c.seed;
  o.threads = c.EffectiveThreads();
  return o;
}

// ---------------------------------------------------------------------------

void RunIngest(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  RequireLanguages(c);
  for (const std::string &lang : c.languages) {
    if (!c.corpus.count(lang)) throw InvalidArgument("corpus: no source file for language " + lang);
  }
  RedirectMap redirects;
  if (!c.redirects.empty()) {
    redirects = RedirectMap::LoadFile(c.redirects);
    manifest->AddInput(c.redirects);
  }
  SitelinkMap sitelinks;
  if (!c.sitelinks.empty()) {
    sitelinks = SitelinkMap::LoadFile(c.sitelinks);
    manifest->AddInput(c.sitelinks);
  }
  for (const std::string &lang : c.languages) {
    const std::string &source = c.corpus.at(lang);
    manifest->AddInput(source);
    Diagnostics diagnostics;
    std::vector<Article> articles;
    IngestOptions options;
    options.lang = lang;
    IngestFile(source, redirects, sitelinks, options,
               [&](Article &&a) { articles.push_back(std::move(a)); }, &diagnostics);
    LogInfo("ingest " + lang + ": " + std::to_string(articles.size()) + " articles");
    LogDiagnostics("ingest " + lang, diagnostics);
    WriteStream(manifest, work.Articles(lang),
                [&](std::ostream &out) { WriteArticles(out, articles); });
  }
}

void RunBuildAnchors(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  RequireLanguages(ctx.config);
  for (const std::string &lang : ctx.config.languages) {
    Require(work.Articles(lang), "ingest");
    manifest->AddInput(work.Articles(lang));
    std::vector<Article> articles = LoadArticles(work.Articles(lang));
    AnchorDictionary dict = BuildDictionary(articles, lang, ctx.config.ngram_max);
    LogInfo("build-anchors " + lang + ": " + std::to_string(dict.size()) + " phrases");
    WriteStream(manifest, work.Anchors(lang), [&](std::ostream &out) { dict.Write(out); });
  }
}

void RunBuildAdjacency(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  RequireLanguages(ctx.config);
  for (const std::string &lang : ctx.config.languages) {
    Require(work.Articles(lang), "ingest");
    manifest->AddInput(work.Articles(lang));
    AdjacencyMatrix a = BuildAdjacency(LoadArticles(work.Articles(lang)));
    LogInfo("build-adjacency " + lang + ": dimension " + std::to_string(a.dimension()) +
            ", " + std::to_string(a.nnz()) + " entries");
    WriteStream(manifest, work.Adjacency(lang), [&](std::ostream &out) { a.Write(out); });
  }
}

void RunFactorize(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  RequireLanguages(ctx.config);
  for (const std::string &lang : ctx.config.languages) {
    Require(work.Adjacency(lang), "build-adjacency");
    manifest->AddInput(work.Adjacency(lang));
    AdjacencyMatrix a = AdjacencyMatrix::ReadFile(work.Adjacency(lang));
    FactorModel model = Factorize(a, AlsOptions(ctx.config));
    WriteStream(manifest, work.Factors(lang), [&](std::ostream &out) { model.Write(out); });
  }
}

void RunDensify(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  RequireLanguages(c);
  for (const std::string &lang : c.languages) {
    Require(work.Articles(lang), "ingest");
    Require(work.Anchors(lang), "build-anchors");
    Require(work.Factors(lang), "factorize");
  }
  ordered_json report = ordered_json::array();
  for (const std::string &lang : c.languages) {
    for (const std::string &p : {work.Articles(lang), work.Anchors(lang), work.Factors(lang)}) {
      manifest->AddInput(p);
    }
    std::vector<Article> articles = LoadArticles(work.Articles(lang));
    AnchorDictionary dict = AnchorDictionary::ReadFile(work.Anchors(lang), c.ngram_max);
    FactorModel model = FactorModel::ReadFile(work.Factors(lang));
    DensifyOptions options;
    options.link_threshold = c.link_threshold;
    options.max_candidates = c.max_candidates;
    options.ngram_min = c.ngram_min;
    DensifyStats stats;
    std::vector<BagOfLinks> bags =
        DensifyCorpus(articles, dict, model, options, c.EffectiveThreads(), &stats);
    LogInfo("densify " + lang + ": ratio " + FormatDouble(stats.ratio()));
    WriteStream(manifest, work.Bags(lang), [&](std::ostream &out) { WriteBags(out, bags); });
    report.push_back({{"lang", lang},
                      {"articles", articles.size()},
                      {"sparse_links", stats.sparse_links},
                      {"densified_links", stats.densified_links},
                      {"ratio", stats.ratio()}});
  }
  std::string name = ctx.lang_scoped ? "densify." + c.languages.front() + ".json" : "densify.json";
  WriteText(manifest, work.Report(name), report.dump(2) + "\n");
}

std::vector<BagOfLinks> LoadAllBags(const PipelineConfig &c, const Workdir &work,
                                    RunManifest *manifest) {
  RequireLanguages(c);
  for (const std::string &lang : c.languages) Require(work.Bags(lang), "densify");
  std::vector<BagOfLinks> all;
  for (const std::string &lang : c.languages) {
    manifest->AddInput(work.Bags(lang));
    std::vector<BagOfLinks> bags = ReadBagsFile(work.Bags(lang));
    std::move(bags.begin(), bags.end(), std::back_inserter(all));
  }
  return all;
}

void RunTrainLda(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  std::vector<BagOfLinks> bags = LoadAllBags(c, work, manifest);
  PrunedCorpus corpus = Prune(bags, c.min_df, c.min_doc_links);
  LogInfo("train-lda: " + std::to_string(corpus.bags.size()) + " documents, vocabulary " +
          std::to_string(corpus.vocabulary.size()));
  TrainOptions options;
  options.num_topics = c.k;
  options.alpha = c.alpha;
  options.beta = c.beta;
  options.iterations = c.lda_iterations;
  options.seed = c.seed;
  TopicModel model = Train(corpus, options);
  WriteStream(manifest, work.Topics(), [&](std::ostream &out) { model.Write(out); });
  std::ostringstream top;
  top << "topic\trank\tqid\tphi\n";
  for (size_t k = 0; k < static_cast<size_t>(model.num_topics()); ++k) {
    std::vector<ConceptId> concepts = TopConcepts(model, k, 10);
    for (size_t r = 0; r < concepts.size(); ++r) {
      top << k << '\t' << r + 1 << '\t' << concepts[r] << '\t'
          << FormatDouble(model.Phi(k, *model.vocabulary().Find(concepts[r]))) << '\n';
    }
  }
  WriteText(manifest, work.Report("topics.top.tsv"), top.str());
}

void RunInfer(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  std::string model_path = ctx.infer_model.empty() ? work.Topics() : ctx.infer_model;
  Require(model_path, "train-lda");
  std::vector<BagOfLinks> bags;
  if (!ctx.infer_in.empty()) {
    if (!fs::exists(ctx.infer_in)) throw IoError("cannot open " + ctx.infer_in);
    manifest->AddInput(ctx.infer_in);
    bags = ReadBagsFile(ctx.infer_in);
  } else {
    bags = LoadAllBags(c, work, manifest);
  }
  manifest->AddInput(model_path);
  TopicModel model = TopicModel::ReadFile(model_path);
  std::vector<DocumentTopics> docs(bags.size());
  ParallelFor(bags.size(), c.EffectiveThreads(), [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      InferOptions options;
      options.iterations = c.infer_iterations;
      options.burn_in = c.infer_burn_in;
      options.seed = DocumentSeed(c.seed, bags[i].id);
      docs[i] = {bags[i].id, bags[i].lang, Infer(model, bags[i], options)};
    }
  });
  int64_t fallback = std::count_if(docs.begin(), docs.end(),
                                   [](const DocumentTopics &d) { return d.theta.fallback; });
  if (fallback > 0) {
    LogWarning("infer: " + std::to_string(fallback) +
               " documents had no known concept and got the uniform vector");
  }
  std::string out_path = ctx.infer_out.empty() ? work.Vectors() : ctx.infer_out;
  WriteStream(manifest, out_path, [&](std::ostream &out) {
    for (const DocumentTopics &d : docs) out << SerializeDocumentTopics(d) << '\n';
  });
}

void RunEvalDisambig(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  RequireLanguages(c);
  for (const std::string &lang : c.languages) {
    Require(work.Articles(lang), "ingest");
    Require(work.Anchors(lang), "build-anchors");
    Require(work.Adjacency(lang), "build-adjacency");
  }
  for (const std::string &lang : c.languages) {
    for (const std::string &p : {work.Articles(lang), work.Anchors(lang), work.Adjacency(lang)}) {
      manifest->AddInput(p);
    }
    std::vector<Article> articles = LoadArticles(work.Articles(lang));
    AnchorDictionary dict = AnchorDictionary::ReadFile(work.Anchors(lang), c.ngram_max);
    AdjacencyMatrix a = AdjacencyMatrix::ReadFile(work.Adjacency(lang));
    DisambigOptions options;
    options.mask_fraction = c.mask_fraction;
    options.factorize = AlsOptions(c);
    DisambigReport report =
        EvalDisambiguation(a, dict, AnchorAssociation::FromArticles(articles), options);
    WriteText(manifest, work.Report("disambig." + lang + ".json"), report.ToJson());
    WriteText(manifest, work.Report("disambig." + lang + ".tsv"), report.ToTsv());
  }
}

void RunIntruders(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  Require(work.Topics(), "train-lda");
  manifest->AddInput(work.Topics());
  TopicModel model = TopicModel::ReadFile(work.Topics());
  IntruderOptions options;
  options.members = c.intruder_members;
  options.low_rank = c.intruder_low_rank;
  options.high_rank = c.intruder_high_rank;
  std::vector<IntruderTask> tasks = GenerateIntruders(model, c.intruder_topics, c.seed, options);
  WriteText(manifest, work.Report("intruders.tasks.json"), IntruderTasksJson(tasks));
  WriteText(manifest, work.Report("intruders.answers.json"), IntruderAnswersJson(tasks));
}

std::vector<DocumentTopics> LoadVectors(const Workdir &work, RunManifest *manifest) {
  Require(work.Vectors(), "infer");
  manifest->AddInput(work.Vectors());
  return ReadDocumentTopicsFile(work.Vectors());
}

void RunLangBias(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  std::map<std::string, std::vector<std::vector<double>>> by_lang;
  for (DocumentTopics &d : LoadVectors(work, manifest)) {
    by_lang[d.lang].push_back(std::move(d.theta.probabilities));
  }
  auto results = LanguageBias(by_lang, ctx.config.bias_sample, ctx.config.seed,
                              ctx.config.EffectiveThreads());
  WriteText(manifest, work.Report("lang_bias.json"), LanguageBiasJson(results));
}

void RunDistances(const Context &, const Workdir &work, RunManifest *manifest) {
  std::map<std::string, std::vector<DocumentTopics>> by_lang;
  for (DocumentTopics &d : LoadVectors(work, manifest)) by_lang[d.lang].push_back(std::move(d));
  auto emit = [&](const DistanceMatrix &m, const std::string &mode) {
    WriteText(manifest, work.Report("distances." + mode + ".tsv"), m.ToTsv());
    std::string leaves;
    for (const std::string &lang : m.leaf_order) leaves += lang + "\n";
    WriteText(manifest, work.Report("distances." + mode + ".leaves.txt"), leaves);
  };
  emit(LanguageDistances(by_lang, DistanceMode::kAll), "all");
  try {
    emit(LanguageDistances(by_lang, DistanceMode::kCommon), "common");
  } catch (const InvalidArgument &e) {
    LogWarning(std::string("distances: common mode skipped: ") + e.what());
  }
}

std::map<ConceptId, std::vector<std::string>> LoadLabels(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::map<ConceptId, std::vector<std::string>> labels;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t tab = line.find('\t');
    auto id = tab == std::string::npos ? std::nullopt : ConceptId::TryParse(line.substr(0, tab));
    if (!id) throw ParseError(path + ":" + std::to_string(line_number) + ": expected qid<TAB>labels");
    std::vector<std::string> &row = labels[*id];
    std::stringstream items(line.substr(tab + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      if (!item.empty()) row.push_back(item);
    }
  }
  return labels;
}

void RunClassify(const Context &ctx, const Workdir &work, RunManifest *manifest) {
  const PipelineConfig &c = ctx.config;
  if (c.labels.empty()) throw InvalidArgument("labels: a label file is required for classify");
  std::vector<DocumentTopics> docs = LoadVectors(work, manifest);
  manifest->AddInput(c.labels);
  auto labels = LoadLabels(c.labels);

  std::vector<const DocumentTopics *> labeled;
  for (const DocumentTopics &d : docs) {
    auto it = labels.find(d.id);
    if (it != labels.end() && !it->second.empty()) labeled.push_back(&d);
  }
  auto to_row = [&](const DocumentTopics &d, LabeledVectorSet *set) {
    set->Add(d.theta.probabilities, labels.at(d.id), d.id);
  };
  LabeledVectorSet train, test;
  const bool cross = !c.classify_train_lang.empty() && !c.classify_test_lang.empty() &&
                     c.classify_train_lang != c.classify_test_lang;
  if (cross) {
    for (const DocumentTopics *d : labeled) {
      if (d->lang == c.classify_train_lang) to_row(*d, &train);
      if (d->lang == c.classify_test_lang) to_row(*d, &test);
    }
  } else {
    std::vector<const DocumentTopics *> pool;
    const std::string &only = c.classify_train_lang.empty() ? c.classify_test_lang
                                                            : c.classify_train_lang;
    for (const DocumentTopics *d : labeled) {
      if (only.empty() || d->lang == only) pool.push_back(d);
    }
    std::vector<std::string> strata;
    for (const DocumentTopics *d : pool) strata.push_back(labels.at(d->id).front());
    Split split = StratifiedSplit(strata, 0.8, MixSeed(c.seed, 0x73706c6974));
    for (size_t i : split.train) to_row(*pool[i], &train);
    for (size_t i : split.test) to_row(*pool[i], &test);
  }
  SupervisedOptions options;
  options.threads = c.EffectiveThreads();
  SupervisedReport report = SupervisedTopicEval(train, test, c.seed, options);
  WriteText(manifest, work.Report("classify.json"), report.ToJson());
}

using StageFn = void (*)(const Context &, const Workdir &, RunManifest *);

struct Stage {
  const char *name;
  const char *help;
  StageFn fn;
};

const std::vector<Stage> &Stages() {
  static const std::vector<Stage> stages = {
      {"ingest", "parse corpus sources into canonical article files", RunIngest},
      {"build-anchors", "build per-language anchor dictionaries", RunBuildAnchors},
      {"build-adjacency", "build IDF-weighted adjacency matrices", RunBuildAdjacency},
      {"factorize", "factorize adjacency matrices with ALS", RunFactorize},
      {"densify", "densify articles into bags of links", RunDensify},
      {"train-lda", "train the topic model on pooled bags", RunTrainLda},
      {"infer", "infer topic vectors for bags of links", RunInfer},
      {"eval-disambig", "masked-link disambiguation accuracy", RunEvalDisambig},
      {"intruders", "generate intruder detection tasks", RunIntruders},
      {"lang-bias", "per-language logistic regression on topic vectors", RunLangBias},
      {"distances", "language distance matrices", RunDistances},
      {"classify", "supervised per-class evaluation over topic vectors", RunClassify},
      {"defaults", "print the default configuration", nullptr},
  };
  return stages;
}

}  // namespace

const std::vector<std::string> &Subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Stage &s : Stages()) n.push_back(s.name);
    return n;
  }();
  return names;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Crosslingual topic modeling over bags of Wikidata concepts", "wikipda"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, lang, iters;
  bool verbose = false, quiet = false;
  Context ctx;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--lang", lang, "restrict the run to one language");
  app.add_option("--iters", iters, "iteration count of the subcommand's own stage");
  app.add_option("--model", ctx.infer_model, "infer: topic model file");
  app.add_option("--in", ctx.infer_in, "infer: bags of links file");
  app.add_option("--out", ctx.infer_out, "infer: topic vector output file");
  app.add_flag("-v,--verbose", verbose, "progress messages");
  app.add_flag("-q,--quiet", quiet, "errors only");

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
  for (const ConfigField &f : ConfigFields()) {
    std::string names = "--" + f.name;
    std::string hyphenated = f.name;
    std::replace(hyphenated.begin(), hyphenated.end(), '_', '-');
    if (hyphenated != f.name) names += ",--" + hyphenated;
    if (f.name == "deterministic") {
      options[f.name] = app.add_flag(names, f.help);
    } else {
      options[f.name] = app.add_option(names, values[f.name], f.help);
    }
  }
  for (const Stage &s : Stages()) app.add_subcommand(s.name, s.help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }
  SetLogLevel(quiet ? LogLevel::kQuiet : verbose ? LogLevel::kInfo : LogLevel::kWarning);

  const CLI::App *sub = app.get_subcommands().front();
  ctx.subcommand = sub->get_name();
  ctx.out = &out;
  if (ctx.subcommand == "defaults") {
    out << ConfigToJson(PipelineConfig{}).dump(2) << '\n';
    return kExitOk;
  }

  try {
    PipelineConfig &c = ctx.config;
    if (!config_path.empty()) ApplyConfigFile(&c, config_path);
    ApplyEnvironment(&c);
    for (const ConfigField &f : ConfigFields()) {
      if (options[f.name]->count() == 0) continue;
      ApplyFlag(&c, f.name, f.name == "deterministic" ? "true" : values[f.name]);
    }
    if (!iters.empty()) {
      const std::string &s = ctx.subcommand;
      const char *field = s == "train-lda"                          ? "lda_iterations"
                          : s == "infer"                            ? "infer_iterations"
                          : s == "factorize" || s == "densify" || s == "eval-disambig"
                              ? "als_iterations"
                              : nullptr;
      if (field == nullptr) throw InvalidArgument("--iters has no meaning for " + s);
      ApplyFlag(&c, field, iters);
    }
    if (!lang.empty()) {
      c.languages = {lang};
      ctx.lang_scoped = true;
    }
    ValidateConfig(c);
  } catch (const Error &e) {
    err << "wikipda: configuration error: " << e.what() << '\n';
    return kExitUserError;
  }

  try {
    Workdir work(ctx.config.workdir);
    fs::create_directories(work.root());
    RunManifest manifest(ctx.subcommand, work.root(), ctx.config);
    for (const Stage &s : Stages()) {
      if (ctx.subcommand == s.name) s.fn(ctx, work, &manifest);
    }
    FinishManifest(ctx, work, manifest);
  } catch (const InvalidArgument &e) {
    err << "wikipda " << ctx.subcommand << ": " << e.what() << '\n';
    return kExitUserError;
  } catch (const ParseError &e) {
    err << "wikipda " << ctx.subcommand << ": " << e.what() << '\n';
    return kExitUserError;
  } catch (const IoError &e) {
    err << "wikipda " << ctx.subcommand << ": " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception &e) {
    err << "wikipda " << ctx.subcommand << ": internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}

int RunCli(int argc, char **argv, std::ostream &out, std::ostream &err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return RunCli(args, out, err);
}

}  // namespace wikipda
