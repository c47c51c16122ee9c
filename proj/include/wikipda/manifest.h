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

// Run manifests: what a subcommand read and wrote, with content hashes.
// Manifests carry no timestamps so reruns are byte-identical.

#ifndef WIKIPDA_MANIFEST_H_
#define WIKIPDA_MANIFEST_H_

#include <string>
#include <string_view>
#include <vector>

#include "wikipda/config.h"

namespace wikipda {

std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::string &path);

class RunManifest {
 public:
  // Paths inside `workdir` are recorded relative to it.
  RunManifest(std::string subcommand, std::string workdir, const PipelineConfig &config);

  void AddInput(const std::string &path);
  void AddOutput(const std::string &path);
  const std::vector<std::string> &outputs() const { return outputs_; }

  std::string ToJson() const;
  void Write(const std::string &path) const;

 private:
  std::string Display(const std::string &path) const;

  std::string subcommand_;
  std::string workdir_;
  ordered_json config_;
  uint64_t seed_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace wikipda

#endif  // WIKIPDA_MANIFEST_H_
