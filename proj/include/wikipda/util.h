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

// Shared plumbing: error types, diagnostics counters, logging, a parallel
// loop helper and little-endian binary streams.

#ifndef WIKIPDA_UTIL_H_
#define WIKIPDA_UTIL_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wikipda {

// Base class for every error raised by the library. Errors that are not one
// of the subclasses below indicate a bug or an environment failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument or configuration that violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data could not be parsed or failed schema validation. The message
// carries the file position.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Named event counters collected while processing a corpus.
class Diagnostics {
 public:
  void Increment(const std::string &name, int64_t by = 1) {
    counts_[name] += by;
  }
  int64_t Get(const std::string &name) const {
    auto it = counts_.find(name);
    return it == counts_.end() ? 0 : it->second;
  }
  void Merge(const Diagnostics &other) {
    for (const auto &[name, count] : other.counts_) counts_[name] += count;
  }
  const std::map<std::string, int64_t> &counts() const { return counts_; }

 private:
  std::map<std::string, int64_t> counts_;
};

enum class LogLevel { kQuiet = 0, kWarning = 1, kInfo = 2 };

void SetLogLevel(LogLevel level);
void LogInfo(std::string_view message);
void LogWarning(std::string_view message);

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. With threads <= 1 the loop runs inline.
void ParallelFor(size_t n, int threads,
                 const std::function<void(size_t, size_t)> &fn);

// Mixes a base seed with a stream identifier into an independent seed.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

// 64-bit FNV-1a over bytes.
uint64_t Fnv1a64(std::string_view bytes);

// Uniform double in [0, 1) from 53 random bits.
inline double Uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) using rejection sampling, n > 0.
uint64_t UniformIndex(std::mt19937_64 &rng, uint64_t n);

// In-place Fisher-Yates shuffle driven by UniformIndex so results do not
// depend on the standard library implementation.
template <typename T>
void Shuffle(T &items, std::mt19937_64 &rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = UniformIndex(rng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// Little-endian binary writer.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream &out) : out_(out) {}
  void Bytes(std::string_view bytes);
  void U32(uint32_t value);
  void U64(uint64_t value);
  void F32(float value);
  void F64(double value);
  // u32 length followed by the bytes.
  void String(std::string_view value);

 private:
  std::ostream &out_;
};

// Little-endian binary reader; throws ParseError on truncation.
class BinaryReader {
 public:
  BinaryReader(std::istream &in, std::string source)
      : in_(in), source_(std::move(source)) {}
  std::string Bytes(size_t n);
  uint32_t U32();
  uint64_t U64();
  float F32();
  double F64();
  std::string String();
  bool AtEnd();
  uint64_t offset() const { return offset_; }

 private:
  std::istream &in_;
  std::string source_;
  uint64_t offset_ = 0;
};

// Reads a whole file; throws IoError.
std::string ReadFile(const std::string &path);

// Writes a whole file atomically enough for our purposes; throws IoError.
void WriteFile(const std::string &path, std::string_view contents);

// Formats a double with the shortest representation that round-trips.
std::string FormatDouble(double value);

}  // namespace wikipda

#endif  // WIKIPDA_UTIL_H_
