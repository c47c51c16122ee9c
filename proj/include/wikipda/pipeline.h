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

// Command-line driver. Each subcommand reads its upstream artifacts from
// the work directory, writes its own outputs and a run manifest.
//
//   ingest           corpus files         -> articles.<lang>.jsonl
//   build-anchors    articles             -> anchors.<lang>.jsonl
//   build-adjacency  articles             -> adjacency.<lang>.tsv
//   factorize        adjacency            -> factors.<lang>.bin
//   densify          articles, anchors, factors -> bags.<lang>.jsonl
//   train-lda        bags (all languages) -> topics.bin
//   infer            topics.bin, bags     -> vectors.jsonl
//   eval-disambig    articles, anchors, adjacency -> reports/disambig.<lang>.*
//   intruders        topics.bin           -> reports/intruders.*.json
//   lang-bias        vectors.jsonl        -> reports/lang_bias.json
//   distances        vectors.jsonl        -> reports/distances.*
//   classify         vectors.jsonl, labels -> reports/classify.json
//   defaults         prints the default configuration

#ifndef WIKIPDA_PIPELINE_H_
#define WIKIPDA_PIPELINE_H_

#include <ostream>
#include <string>
#include <vector>

namespace wikipda {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternalError = 2;

const std::vector<std::string> &Subcommands();

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int RunCli(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace wikipda

#endif  // WIKIPDA_PIPELINE_H_
