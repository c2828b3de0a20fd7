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

#include "t2tfaith/alignment.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace t2tfaith {

Alignment::Alignment(std::vector<std::vector<TokenSpan>> record_spans,
                     std::vector<std::vector<std::size_t>> record_entities,
                     std::vector<std::vector<std::size_t>> entity_records)
    : record_spans_(std::move(record_spans)),
      record_entities_(std::move(record_entities)),
      entity_records_(std::move(entity_records)) {}

std::vector<std::size_t> Alignment::CoveredRecords() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < record_count(); ++k) {
    if (IsCovered(k)) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> Alignment::AlignedEntities() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entity_count(); ++i) {
    if (IsAligned(i)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Alignment::HallucinatedEntities() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entity_count(); ++i) {
    if (!IsAligned(i)) out.push_back(i);
  }
  return out;
}

std::size_t Alignment::CoveredCount() const { return CoveredRecords().size(); }

std::size_t Alignment::HallucinatedCount() const {
  return HallucinatedEntities().size();
}

const std::vector<std::string> &StopWordList() {
  static const std::vector<std::string> kList = {
      "a", "about", "above", "across", "after", "again", "against", "all",
      "along", "also", "am", "among", "an", "and", "any", "are", "around",
      "as", "at", "be", "because", "been", "before", "behind", "being",
      "below", "beside", "besides", "between", "beyond", "both", "but", "by",
      "can", "could", "despite", "did", "do", "does", "doing", "down",
      "during", "each", "few", "for", "from", "further", "had", "has", "have",
      "having", "he", "her", "here", "hers", "herself", "him", "himself",
      "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
      "just", "may", "me", "might", "more", "most", "must", "my", "myself",
      "no", "nor", "not", "now", "of", "off", "on", "once", "only", "onto",
      "or", "other", "our", "ours", "ourselves", "out", "over", "own", "per",
      "same", "shall", "she", "should", "so", "some", "such", "than", "that",
      "the", "their", "theirs", "them", "themselves", "then", "there", "these",
      "they", "this", "those", "through", "to", "too", "toward", "towards",
      "under", "until", "up", "upon", "very", "via", "was", "we", "were",
      "what", "when", "where", "which", "while", "who", "whom", "whose", "why",
      "will", "with", "within", "without", "would", "yet", "you", "your",
      "yours", "yourself", "yourselves", "'s", "’s",
  };
  return kList;
}

bool IsStopWord(std::string_view normalized_token) {
  static const std::unordered_set<std::string_view> kSet(
      StopWordList().begin(), StopWordList().end());
  return kSet.count(normalized_token) > 0;
}

std::vector<std::string> FilteredTokens(std::string_view text) {
  std::vector<std::string> out;
  for (std::string &t : NormalizeForMatch(Tokenize(text))) {
    if (!IsStopWord(t)) out.push_back(std::move(t));
  }
  return out;
}

bool IsSubsequence(const std::vector<std::string> &needle,
                   const std::vector<std::string> &haystack) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < haystack.size() && j < needle.size(); ++i) {
    if (haystack[i] == needle[j]) ++j;
  }
  return j == needle.size();
}

bool FilteredSubsequenceMatch(const EntityMention &entity,
                              const Record &record) {
  if (!IsSubsequenceEligible(entity.label)) return false;
  const auto needle = FilteredTokens(entity.text);
  return !needle.empty() && IsSubsequence(needle, FilteredTokens(record.value));
}

namespace {

// Per-instance token interning so the matching loops compare integers.
class Vocabulary {
 public:
  int Id(const std::string &token) {
    auto [it, inserted] = ids_.emplace(token, static_cast<int>(ids_.size()));
    return it->second;
  }
  // -1 for tokens never seen in the text.
  int Find(const std::string &token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? -1 : it->second;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

struct TextIndex {
  std::vector<int> ids;                 // interned normalized text tokens
  std::vector<std::size_t> token_index;  // original token of each entry
  std::vector<std::size_t> sentence;     // sentence of each entry
};

TextIndex IndexText(const Instance &instance, Vocabulary *vocab) {
  TextIndex index;
  const auto &tokens = instance.tokens();
  for (const NormalizedToken &n : NormalizeWithIndex(tokens)) {
    index.ids.push_back(vocab->Id(n.text));
    index.token_index.push_back(n.token_index);
    index.sentence.push_back(
        instance.SentenceOf(tokens[n.token_index].span.begin));
  }
  return index;
}

std::vector<TokenSpan> MatchValue(const Instance &instance,
                                  const TextIndex &index,
                                  const Vocabulary &vocab,
                                  const std::string &value) {
  std::vector<TokenSpan> spans;
  std::vector<int> pattern;
  for (const std::string &t : NormalizeForMatch(Tokenize(value))) {
    const int id = vocab.Find(t);
    if (id < 0) return spans;
    pattern.push_back(id);
  }
  const std::size_t m = pattern.size();
  const std::size_t n = index.ids.size();
  if (m == 0 || m > n) return spans;
  const auto &tokens = instance.tokens();
  std::size_t i = 0;
  while (i + m <= n) {
    bool match = index.sentence[i] == index.sentence[i + m - 1];
    for (std::size_t j = 0; match && j < m; ++j) {
      match = index.ids[i + j] == pattern[j];
    }
    if (!match) {
      ++i;
      continue;
    }
    const std::size_t first = index.token_index[i];
    const std::size_t last = index.token_index[i + m - 1];
    spans.push_back(TokenSpan{
        first, last + 1, Span{tokens[first].span.begin, tokens[last].span.end}});
    i += m;
  }
  return spans;
}

std::vector<std::vector<TokenSpan>> ExactSpansFor(const Instance &instance,
                                                  const Table &records) {
  Vocabulary vocab;
  const TextIndex index = IndexText(instance, &vocab);
  std::vector<std::vector<TokenSpan>> out;
  out.reserve(records.size());
  for (const Record &r : records) {
    out.push_back(MatchValue(instance, index, vocab, r.value));
  }
  return out;
}

}  // namespace

std::vector<std::vector<TokenSpan>> ExactMatchSpans(const Instance &instance) {
  return ExactSpansFor(instance, instance.table());
}

Alignment AlignInstance(const Instance &instance) {
  return AlignRecords(instance, instance.table());
}

Alignment AlignRecords(const Instance &instance, const Table &records) {
  const std::size_t record_count = records.size();
  const auto &entities = instance.entities();
  std::vector<std::vector<TokenSpan>> record_spans =
      ExactSpansFor(instance, records);

  std::vector<std::vector<std::string>> filtered_values(record_count);
  bool any_eligible = false;
  for (const EntityMention &e : entities) {
    any_eligible = any_eligible || IsSubsequenceEligible(e.label);
  }
  if (any_eligible) {
    for (std::size_t k = 0; k < record_count; ++k) {
      filtered_values[k] = FilteredTokens(records[k].value);
    }
  }

  std::vector<std::vector<std::size_t>> record_entities(record_count);
  std::vector<std::vector<std::size_t>> entity_records(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const EntityMention &e = entities[i];
    std::vector<std::string> needle;
    if (IsSubsequenceEligible(e.label)) needle = FilteredTokens(e.text);
    for (std::size_t k = 0; k < record_count; ++k) {
      bool aligned = std::any_of(
          record_spans[k].begin(), record_spans[k].end(),
          [&](const TokenSpan &s) { return s.chars.Overlaps(e.span); });
      if (!aligned && !needle.empty()) {
        aligned = IsSubsequence(needle, filtered_values[k]);
      }
      if (aligned) {
        entity_records[i].push_back(k);
        record_entities[k].push_back(i);
      }
    }
  }
  return Alignment(std::move(record_spans), std::move(record_entities),
                   std::move(entity_records));
}

Json AlignmentToJson(const Instance &instance, const Alignment &alignment) {
  Json out = Json::object();
  out["id"] = instance.id();
  out["covered_records"] = alignment.CoveredRecords();
  Json records = Json::array();
  for (std::size_t k = 0; k < alignment.record_count(); ++k) {
    Json spans = Json::array();
    for (const TokenSpan &s : alignment.spans(k)) {
      spans.push_back(Json{{"tokens", {s.begin, s.end}},
                           {"chars", {s.chars.begin, s.chars.end}}});
    }
    records.push_back(Json{{"index", k},
                           {"covered", alignment.IsCovered(k)},
                           {"spans", std::move(spans)},
                           {"entities", alignment.record_entities(k)}});
  }
  out["records"] = std::move(records);
  Json entities = Json::array();
  for (std::size_t i = 0; i < alignment.entity_count(); ++i) {
    const EntityMention &e = instance.entities()[i];
    entities.push_back(
        Json{{"index", i},
             {"text", e.text},
             {"label", std::string(LabelName(e.label))},
             {"status", alignment.IsAligned(i) ? "aligned" : "hallucinated"},
             {"records", alignment.entity_records(i)}});
  }
  out["entities"] = std::move(entities);
  out["crossing_entities"] = instance.CrossingEntities();
  return out;
}

}  // namespace t2tfaith
