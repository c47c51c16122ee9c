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

#include "wikipda/util.h"

#include <atomic>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

namespace wikipda {

namespace {

std::atomic<int> log_level{static_cast<int>(LogLevel::kWarning)};

}  // namespace

void SetLogLevel(LogLevel level) { log_level = static_cast<int>(level); }

void LogInfo(std::string_view message) {
  if (log_level >= static_cast<int>(LogLevel::kInfo)) {
    std::cerr << "[info] " << message << "\n";
  }
}

void LogWarning(std::string_view message) {
  if (log_level >= static_cast<int>(LogLevel::kWarning)) {
    std::cerr << "[warning] " << message << "\n";
  }
}

void ParallelFor(size_t n, int threads,
                 const std::function<void(size_t, size_t)> &fn) {
  if (n == 0) return;
  size_t workers = threads <= 1 ? 1 : std::min<size_t>(threads, n);
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  size_t chunk = (n + workers - 1) / workers;
  for (size_t begin = 0; begin < n; begin += chunk) {
    size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto &t : pool) t.join();
}

uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t UniformIndex(std::mt19937_64 &rng, uint64_t n) {
  if (n == 0) throw InvalidArgument("UniformIndex: empty range");
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void BinaryWriter::Bytes(std::string_view bytes) {
  out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out_) throw IoError("binary write failed");
}

void BinaryWriter::U32(uint32_t value) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>(value >> (8 * i));
  Bytes(std::string_view(buf, 4));
}

void BinaryWriter::U64(uint64_t value) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>(value >> (8 * i));
  Bytes(std::string_view(buf, 8));
}

void BinaryWriter::F32(float value) { U32(std::bit_cast<uint32_t>(value)); }

void BinaryWriter::F64(double value) { U64(std::bit_cast<uint64_t>(value)); }

void BinaryWriter::String(std::string_view value) {
  U32(static_cast<uint32_t>(value.size()));
  Bytes(value);
}

std::string BinaryReader::Bytes(size_t n) {
  std::string buf(n, '\0');
  in_.read(buf.data(), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in_.gcount()) != n) {
    throw ParseError(source_ + ": truncated at byte offset " +
                     std::to_string(offset_));
  }
  offset_ += n;
  return buf;
}

uint32_t BinaryReader::U32() {
  std::string b = Bytes(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  }
  return v;
}

uint64_t BinaryReader::U64() {
  std::string b = Bytes(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  }
  return v;
}

float BinaryReader::F32() { return std::bit_cast<float>(U32()); }

double BinaryReader::F64() { return std::bit_cast<double>(U64()); }

std::string BinaryReader::String() {
  uint32_t n = U32();
  return Bytes(n);
}

bool BinaryReader::AtEnd() {
  return in_.peek() == std::char_traits<char>::eof();
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void WriteFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("cannot write " + path);
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, end);
}

}  // namespace wikipda
