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

#include "t2tfaith/transforms.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "t2tfaith/errors.h"
#include "t2tfaith/hashing.h"

namespace t2tfaith {

void Validate(const FilterConfig &cfg) {
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) {
    throw UsageError("lambda must lie in [0, 1]");
  }
}

void Validate(const TruncateConfig &cfg) {
  if (cfg.n_keep < 1) throw UsageError("n_keep must be at least 1");
}

void ValidateFraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw UsageError("fraction must lie in (0, 1]");
  }
}

double RecordDraw(std::uint64_t seed, const std::string &id,
                  const Record &record, std::size_t index) {
  std::string key;
  key.reserve(id.size() + record.attribute.size() + record.value.size() + 24);
  key += id;
  key += '\x1f';
  key += record.attribute;
  key += '\x1f';
  key += record.value;
  key += '\x1f';
  key += std::to_string(index);
  return UnitInterval(SplitMix64(seed ^ Fnv1a64(key)));
}

FilterResult FilterUncoveredRecords(const Instance &instance,
                                    const Alignment &alignment,
                                    const FilterConfig &cfg) {
  Validate(cfg);
  FilterResult result;
  const Table &table = instance.table();
  Table kept;
  kept.reserve(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!alignment.IsCovered(k) &&
        RecordDraw(cfg.seed, instance.id(), table[k], k) < cfg.lambda) {
      result.removed.push_back(k);
    } else {
      kept.push_back(table[k]);
    }
  }
  if (kept.empty()) return result;
  if (result.removed.empty()) {
    result.instance = instance;
    return result;
  }
  result.instance =
      Instance::Create(instance.id(), std::move(kept), instance.text(),
                       instance.entities(), instance.sentences());
  return result;
}

Instance TruncateReference(const Instance &instance,
                           const TruncateConfig &cfg) {
  Validate(cfg);
  const auto &sentences = instance.sentences();
  if (cfg.n_keep >= sentences.size()) return instance;

  std::vector<Span> kept(sentences.begin(), sentences.begin() + cfg.n_keep);
  const std::size_t cut = kept.back().end;
  std::vector<EntityMention> entities;
  for (const EntityMention &e : instance.entities()) {
    if (e.span.end <= cut) entities.push_back(e);
  }
  std::string text =
      EncodeUtf8(std::u32string_view(instance.chars()).substr(0, cut));
  return Instance::Create(instance.id(), instance.table(), std::move(text),
                          std::move(entities), std::move(kept));
}

std::size_t SelectionCount(double fraction, std::size_t n) {
  ValidateFraction(fraction);
  if (n == 0) return 0;
  const double exact = fraction * static_cast<double>(n);
  const double nearest = std::round(exact);
  double count = std::ceil(exact);
  if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) {
    count = nearest;
  }
  return std::clamp<std::size_t>(static_cast<std::size_t>(count), 1, n);
}

std::vector<std::string> SelectTopFraction(
    std::span<const InstanceMetrics> metrics, double fraction) {
  std::vector<std::string> ranked = RankInstances(metrics);
  ranked.resize(SelectionCount(fraction, ranked.size()));
  return ranked;
}

std::vector<std::size_t> RandomOrder(std::span<const std::string> ids,
                                     std::uint64_t seed) {
  std::vector<std::uint64_t> keys(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    keys[i] = SplitMix64(seed ^ Fnv1a64(ids[i]));
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    if (ids[a] != ids[b]) return ids[a] < ids[b];
    return a < b;
  });
  return order;
}

std::vector<std::string> SampleRandomFraction(std::span<const std::string> ids,
                                              double fraction,
                                              std::uint64_t seed) {
  const std::size_t count = SelectionCount(fraction, ids.size());
  const std::vector<std::size_t> order = RandomOrder(ids, seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(ids[order[i]]);
  return out;
}

}  // namespace t2tfaith
