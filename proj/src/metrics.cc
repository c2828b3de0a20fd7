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

#include "t2tfaith/metrics.h"

#include <algorithm>
#include <numeric>

#include "t2tfaith/errors.h"

namespace t2tfaith {

void CorpusAccumulator::Add(const InstanceMetrics &m) {
  ++count_;
  total_hallu_ += m.n_hallu;
  total_tokens_ += m.length;
  total_sentences_ += m.sentence_count;
  total_covered_ += m.covered;
  total_records_ += m.records;
  covered_by_k_[m.records] += m.covered;
}

void CorpusAccumulator::Merge(const CorpusAccumulator &other) {
  count_ += other.count_;
  total_hallu_ += other.total_hallu_;
  total_tokens_ += other.total_tokens_;
  total_sentences_ += other.total_sentences_;
  total_covered_ += other.total_covered_;
  total_records_ += other.total_records_;
  for (const auto &[k, covered] : other.covered_by_k_) {
    covered_by_k_[k] += covered;
  }
}

double CorpusAccumulator::CoverageSum() const {
  long double sum = 0;
  for (const auto &[k, covered] : covered_by_k_) {
    sum += static_cast<long double>(covered) / static_cast<long double>(k);
  }
  return static_cast<double>(sum);
}

InstanceMetrics ComputeInstanceMetrics(const Instance &instance,
                                       const Alignment &alignment) {
  if (instance.tokens().empty()) {
    throw DegenerateInstance("instance '" + instance.id() +
                             "' has no tokens");
  }
  InstanceMetrics m;
  m.id = instance.id();
  m.covered = alignment.CoveredCount();
  m.records = instance.table().size();
  m.n_hallu = alignment.HallucinatedCount();
  m.entities = instance.entities().size();
  m.length = instance.tokens().size();
  m.sentence_count = instance.sentences().size();
  return m;
}

CorpusMetrics Finalize(const CorpusAccumulator &acc) {
  if (acc.count() == 0) throw EmptyCorpus("no instances to aggregate");
  const auto n = static_cast<double>(acc.count());
  CorpusMetrics c;
  c.n = acc.count();
  c.p_cover = acc.CoverageSum() / n;
  c.r_hallu = acc.total_tokens() == 0
                  ? 0.0
                  : static_cast<double>(acc.total_hallu()) /
                        static_cast<double>(acc.total_tokens());
  c.mean_length = static_cast<double>(acc.total_tokens()) / n;
  c.mean_sentences = static_cast<double>(acc.total_sentences()) / n;
  c.total_hallu = acc.total_hallu();
  c.total_tokens = acc.total_tokens();
  return c;
}

CorpusMetrics ComputeCorpusMetrics(std::span<const InstanceMetrics> metrics) {
  CorpusAccumulator acc;
  for (const InstanceMetrics &m : metrics) acc.Add(m);
  return Finalize(acc);
}

Ratio HallucinationRatio(const InstanceMetrics &m) { return m.r_hallu(); }

bool RanksBefore(const InstanceMetrics &a, const InstanceMetrics &b) {
  const Ratio ra = a.r_hallu(), rb = b.r_hallu();
  if (ra < rb) return true;
  if (rb < ra) return false;
  if (a.n_hallu != b.n_hallu) return a.n_hallu < b.n_hallu;
  const Ratio ca = a.p_cover(), cb = b.p_cover();
  if (cb < ca) return true;
  if (ca < cb) return false;
  return a.id < b.id;
}

std::vector<std::string> RankInstances(
    std::span<const InstanceMetrics> metrics) {
  std::vector<std::size_t> order(metrics.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return RanksBefore(metrics[a], metrics[b]);
  });
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(metrics[i].id);
  return ids;
}

}  // namespace t2tfaith
