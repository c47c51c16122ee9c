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

#include <algorithm>
#include <numeric>
#include <random>

#include "json.hpp"
#include "wikipda/eval.h"

namespace wikipda {

namespace {

constexpr uint64_t kTopicStream = 0x746f706963;  // "topic"

// rank[k][w]: 0-based position of word w in topic k.
std::vector<std::vector<size_t>> TopicRanks(const TopicModel &model) {
  const size_t v = model.vocabulary().size();
  std::vector<std::vector<size_t>> ranks(static_cast<size_t>(model.num_topics()),
                                         std::vector<size_t>(v));
  for (size_t k = 0; k < ranks.size(); ++k) {
    std::vector<ConceptId> order = TopConcepts(model, k, v);
    for (size_t pos = 0; pos < order.size(); ++pos) {
      ranks[k][*model.vocabulary().Find(order[pos])] = pos;
    }
  }
  return ranks;
}

}  // namespace

std::vector<IntruderTask> GenerateIntruders(const TopicModel &model, int n_topics, uint64_t seed,
                                            const IntruderOptions &options) {
  const int k_count = model.num_topics();
  if (k_count < 2) throw InvalidArgument("intruder tasks need at least 2 topics");
  if (n_topics < 1 || n_topics > k_count) {
    throw InvalidArgument("n_topics must be in [1, K]");
  }
  if (options.members < 1 || options.low_rank < options.members || options.high_rank < 1) {
    throw InvalidArgument("invalid intruder rank thresholds");
  }
  const size_t v = model.vocabulary().size();
  if (v <= static_cast<size_t>(options.members)) {
    throw InvalidArgument("vocabulary too small for intruder tasks");
  }
  const auto ranks = TopicRanks(model);

  std::mt19937_64 rng(MixSeed(seed, kTopicStream));
  std::vector<int> topics(static_cast<size_t>(k_count));
  std::iota(topics.begin(), topics.end(), 0);
  Shuffle(topics, rng);
  topics.resize(static_cast<size_t>(n_topics));

  std::vector<IntruderTask> tasks;
  for (int t : topics) {
    IntruderTask task;
    task.topic = t;
    task.members = TopConcepts(model, static_cast<size_t>(t), static_cast<size_t>(options.members));
    const auto &own = ranks[static_cast<size_t>(t)];

    // Preferred pool first; if it is empty, drop the low-rank requirement,
    // then the high-rank one, keeping the rank-difference objective.
    std::optional<size_t> best;
    long best_gap = 0;
    for (int relax = 0; relax < 3 && !best; ++relax) {
      for (size_t w = 0; w < v; ++w) {
        if (own[w] < static_cast<size_t>(options.members)) continue;
        if (relax == 0 && own[w] < static_cast<size_t>(options.low_rank)) continue;
        size_t other = v;
        for (size_t k = 0; k < ranks.size(); ++k) {
          if (k != static_cast<size_t>(t)) other = std::min(other, ranks[k][w]);
        }
        if (relax < 2 && other >= static_cast<size_t>(options.high_rank)) continue;
        long gap = static_cast<long>(own[w]) - static_cast<long>(other);
        // Equal gaps keep the smaller id.
        if (!best || gap > best_gap ||
            (gap == best_gap && model.vocabulary().at(w) < model.vocabulary().at(*best))) {
          best = w;
          best_gap = gap;
        }
      }
    }
    task.intruder = model.vocabulary().at(*best);
    task.presentation = task.members;
    task.presentation.push_back(task.intruder);
    Shuffle(task.presentation, rng);
    task.answer_index = static_cast<int>(
        std::find(task.presentation.begin(), task.presentation.end(), task.intruder) -
        task.presentation.begin());
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::string IntruderTasksJson(std::span<const IntruderTask> tasks) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (size_t i = 0; i < tasks.size(); ++i) {
    nlohmann::ordered_json j;
    j["task"] = i;
    std::vector<std::string> items;
    for (const ConceptId &c : tasks[i].presentation) items.push_back(c.str());
    j["presentation"] = items;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string IntruderAnswersJson(std::span<const IntruderTask> tasks) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (size_t i = 0; i < tasks.size(); ++i) {
    nlohmann::ordered_json j;
    j["task"] = i;
    j["topic"] = tasks[i].topic;
    std::vector<std::string> members;
    for (const ConceptId &c : tasks[i].members) members.push_back(c.str());
    j["members"] = members;
    j["intruder"] = tasks[i].intruder.str();
    j["answer_index"] = tasks[i].answer_index;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

}  // namespace wikipda
