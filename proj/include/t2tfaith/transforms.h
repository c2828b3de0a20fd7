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

#ifndef T2TFAITH_TRANSFORMS_H_
#define T2TFAITH_TRANSFORMS_H_

// Dataset modification operators: uncovered-record filtering, reference
// truncation, and ranked or seeded-random instance selection.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "t2tfaith/alignment.h"
#include "t2tfaith/corpus.h"
#include "t2tfaith/metrics.h"

namespace t2tfaith {

struct FilterConfig {
  double lambda = 0.0;  // fraction of uncovered records to drop, in [0, 1]
  std::uint64_t seed = 0;
};

struct TruncateConfig {
  std::size_t n_keep = 1;  // sentences to keep, >= 1
};

// Throws UsageError when a config field is out of range.
void Validate(const FilterConfig &cfg);
void Validate(const TruncateConfig &cfg);
void ValidateFraction(double fraction);

// Uniform draw in [0, 1) that decides whether record `index` of the
// instance is dropped:
//   u = top53(splitmix64(seed ^ fnv1a64(id 0x1F attribute 0x1F value 0x1F
//                                        decimal(index)))) / 2^53
double RecordDraw(std::uint64_t seed, const std::string &id,
                  const Record &record, std::size_t index);

struct FilterResult {
  // Unset when every record was removed; callers drop such instances.
  std::optional<Instance> instance;
  std::vector<std::size_t> removed;  // original record indices
  bool empty_table() const { return !instance.has_value(); }
};

// Removes each uncovered record whose draw is below lambda. Covered records
// always survive.
FilterResult FilterUncoveredRecords(const Instance &instance,
                                    const Alignment &alignment,
                                    const FilterConfig &cfg);

// Keeps the first n_keep sentences. Entities that do not end inside the kept
// prefix are dropped; offsets of the rest are unchanged.
Instance TruncateReference(const Instance &instance, const TruncateConfig &cfg);

// ceil(fraction * n), clamped to [1, n] for n > 0. Products within a few
// ulps of an integer round to that integer, so 5% of 100 is 5.
std::size_t SelectionCount(double fraction, std::size_t n);

// Indices of `ids` in seeded hash order: ascending
// splitmix64(seed ^ fnv1a64(id)), ties by id and then by index.
std::vector<std::size_t> RandomOrder(std::span<const std::string> ids,
                                     std::uint64_t seed);

// Prefix of RankInstances of length SelectionCount(fraction, N).
std::vector<std::string> SelectTopFraction(
    std::span<const InstanceMetrics> metrics, double fraction);

// Seeded sample without replacement: the first SelectionCount(fraction, N)
// ids of RandomOrder.
std::vector<std::string> SampleRandomFraction(std::span<const std::string> ids,
                                              double fraction,
                                              std::uint64_t seed);

}  // namespace t2tfaith

#endif  // T2TFAITH_TRANSFORMS_H_
