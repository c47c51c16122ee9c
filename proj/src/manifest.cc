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

#include "wikipda/manifest.h"

#include <openssl/evp.h>

#include <filesystem>
#include <memory>

#include "wikipda/util.h"

namespace wikipda {

namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

std::string Sha256File(const std::string &path) { return Sha256Hex(ReadFile(path)); }

RunManifest::RunManifest(std::string subcommand, std::string workdir, const PipelineConfig &config)
    : subcommand_(std::move(subcommand)), workdir_(std::move(workdir)),
      config_(ConfigToJson(config)), seed_(config.seed) {}

void RunManifest::AddInput(const std::string &path) { inputs_.push_back(path); }

void RunManifest::AddOutput(const std::string &path) { outputs_.push_back(path); }

std::string RunManifest::Display(const std::string &path) const {
  fs::path rel = fs::path(path).lexically_relative(workdir_);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return fs::path(path).generic_string();
}

std::string RunManifest::ToJson() const {
  ordered_json j;
  j["subcommand"] = subcommand_;
  j["version"] = kVersion;
  j["seed"] = seed_;
  // Thread counts do not affect outputs, so they stay out of the snapshot.
  ordered_json config = config_;
  config.erase("threads");
  j["config"] = std::move(config);
  auto files = [&](const std::vector<std::string> &paths) {
    ordered_json list = ordered_json::array();
    for (const std::string &p : paths) {
      list.push_back({{"path", Display(p)}, {"sha256", Sha256File(p)}});
    }
    return list;
  };
  j["inputs"] = files(inputs_);
  j["outputs"] = files(outputs_);
  return j.dump(2) + "\n";
}

void RunManifest::Write(const std::string &path) const { WriteFile(path, ToJson()); }

}  // namespace wikipda
