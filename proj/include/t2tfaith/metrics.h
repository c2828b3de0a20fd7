// Copyright 2026 The t2tfaith Authors.
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

#ifndef T2TFAITH_METRICS_H_
#define T2TFAITH_METRICS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "t2tfaith/alignment.h"
#include "t2tfaith/corpus.h"

namespace t2tfaith {

// Exact non-negative fraction. Comparisons cross-multiply in 128 bits, so
// no two keys compare equal unless they are the same rational.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Ratio &a, const Ratio &b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<(const Ratio &a, const Ratio &b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
};

struct InstanceMetrics {
  std::string id;
  std::uint64_t covered = 0;         // covered records
  std::uint64_t records = 0;         // K, duplicates counted individually
  std::uint64_t n_hallu = 0;
  std::uint64_t entities = 0;
  std::uint64_t length = 0;          // tokens, punctuation included
  std::uint64_t sentence_count = 0;

  Ratio p_cover() const { return Ratio{covered, records}; }
  Ratio r_hallu() const { return Ratio{n_hallu, length}; }
};

// Sum-form accumulator. Coverage is kept as exact per-K covered counts so
// merging is associative and commutative and the result does not depend on
// instance order or on how the corpus was partitioned.
class CorpusAccumulator {
 public:
  void Add(const InstanceMetrics &m);
  void Merge(const CorpusAccumulator &other);

  std::uint64_t count() const { return count_; }
  std::uint64_t total_hallu() const { return total_hallu_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t total_sentences() const { return total_sentences_; }
  std::uint64_t total_covered() const { return total_covered_; }
  std::uint64_t total_records() const { return total_records_; }

  // Sum of per-instance coverage fractions.
  double CoverageSum() const;

  bool operator==(const CorpusAccumulator &other) const = default;

 private:
  std::uint64_t count_ = 0;
  std::uint64_t total_hallu_ = 0;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t total_sentences_ = 0;
  std::uint64_t total_covered_ = 0;
  std::uint64_t total_records_ = 0;
  std::map<std::uint64_t, std::uint64_t> covered_by_k_;
};

struct CorpusMetrics {
  std::uint64_t n = 0;
  double p_cover = 0;        // mean per-instance coverage
  double r_hallu = 0;        // total hallucinations / total tokens
  double mean_length = 0;    // L
  double mean_sentences = 0;
  std::uint64_t total_hallu = 0;
  std::uint64_t total_tokens = 0;
};

// Throws DegenerateInstance when the text has no tokens.
InstanceMetrics ComputeInstanceMetrics(const Instance &instance,
                                       const Alignment &alignment);

// Throws EmptyCorpus for an empty accumulator or sequence.
CorpusMetrics Finalize(const CorpusAccumulator &acc);
CorpusMetrics ComputeCorpusMetrics(std::span<const InstanceMetrics> metrics);

Ratio HallucinationRatio(const InstanceMetrics &m);

// Total order used for faithfulness ranking: ascending r_hallu, then fewer
// hallucinations, then higher coverage, then ascending id.
bool RanksBefore(const InstanceMetrics &a, const InstanceMetrics &b);

// Ids sorted by RanksBefore.
std::vector<std::string> RankInstances(std::span<const InstanceMetrics> metrics);

}  // namespace t2tfaith

#endif  // T2TFAITH_METRICS_H_
