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

#ifndef T2TFAITH_ALIGNMENT_H_
#define T2TFAITH_ALIGNMENT_H_

// Heuristic alignment between table records and the entities/spans of a text.
//
// A record is covered when its normalized value occurs verbatim as a token
// span of the text (exact match) or when an eligible entity, after stop-word
// filtering, is an order-preserving subsequence of the filtered value.
// Entities that neither overlap an exact-match span nor subsequence-match a
// record are hallucinated.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "t2tfaith/corpus.h"
#include "t2tfaith/jsonl.h"

namespace t2tfaith {

// Half-open token index range plus the character span it covers.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  Span chars;

  bool operator==(const TokenSpan &other) const = default;
};

class Alignment {
 public:
  Alignment() = default;
  Alignment(std::vector<std::vector<TokenSpan>> record_spans,
            std::vector<std::vector<std::size_t>> record_entities,
            std::vector<std::vector<std::size_t>> entity_records);

  std::size_t record_count() const { return record_spans_.size(); }
  std::size_t entity_count() const { return entity_records_.size(); }

  // Exact-match witnesses of record k.
  const std::vector<TokenSpan> &spans(std::size_t k) const {
    return record_spans_[k];
  }
  // Entities aligned to record k (by either rule), ascending.
  const std::vector<std::size_t> &record_entities(std::size_t k) const {
    return record_entities_[k];
  }
  // Records entity i is aligned to, ascending. Empty for hallucinations.
  const std::vector<std::size_t> &entity_records(std::size_t i) const {
    return entity_records_[i];
  }

  bool IsCovered(std::size_t k) const {
    return !record_spans_[k].empty() || !record_entities_[k].empty();
  }
  bool IsAligned(std::size_t i) const { return !entity_records_[i].empty(); }

  std::vector<std::size_t> CoveredRecords() const;
  std::vector<std::size_t> AlignedEntities() const;
  std::vector<std::size_t> HallucinatedEntities() const;
  std::size_t CoveredCount() const;
  std::size_t HallucinatedCount() const;

  bool operator==(const Alignment &other) const = default;

 private:
  std::vector<std::vector<TokenSpan>> record_spans_;
  std::vector<std::vector<std::size_t>> record_entities_;
  std::vector<std::vector<std::size_t>> entity_records_;
};

// The embedded stop-word list, in documentation order.
const std::vector<std::string> &StopWordList();
bool IsStopWord(std::string_view normalized_token);

// Normalized tokens of `text` with stop words removed.
std::vector<std::string> FilteredTokens(std::string_view text);

// True iff `needle` is an order-preserving, not necessarily contiguous,
// subsequence of `haystack`.
bool IsSubsequence(const std::vector<std::string> &needle,
                   const std::vector<std::string> &haystack);

// Exact-match spans per record index. A span matches when its normalized
// tokens equal the record value's normalized tokens (both non-empty). Matches
// are maximal, non-overlapping per record, found left to right, and never
// cross a sentence boundary.
std::vector<std::vector<TokenSpan>> ExactMatchSpans(const Instance &instance);

bool FilteredSubsequenceMatch(const EntityMention &entity,
                              const Record &record);

Alignment AlignInstance(const Instance &instance);

// Aligns the instance's text and entities against an arbitrary record list
// instead of its own table.
Alignment AlignRecords(const Instance &instance, const Table &records);

// One JSON object per instance for the audit sidecar.
Json AlignmentToJson(const Instance &instance, const Alignment &alignment);

}  // namespace t2tfaith

#endif  // T2TFAITH_ALIGNMENT_H_
