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

#ifndef T2TFAITH_CORPUS_H_
#define T2TFAITH_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2tfaith/text.h"

namespace t2tfaith {

// One (attribute, value) pair of a table. Both fields are stored trimmed.
struct Record {
  std::string attribute;
  std::string value;

  bool operator==(const Record &other) const = default;
};

// Records in input order; duplicates are preserved.
using Table = std::vector<Record>;

// OntoNotes-style NER categories. Labels outside the list map to kOther.
enum class EntityLabel {
  kPerson,
  kNorp,
  kFac,
  kOrg,
  kGpe,
  kLoc,
  kProduct,
  kEvent,
  kWorkOfArt,
  kDate,
  kTime,
  kCardinal,
  kOrdinal,
  kQuantity,
  kPercent,
  kMoney,
  kLanguage,
  kLaw,
  kOther,
};

std::string_view LabelName(EntityLabel label);
EntityLabel LabelFromName(std::string_view name);

// Labels for which filtered sub-sequence matching applies (the non-numeric
// ones: PERSON, NORP, FAC, ORG, GPE, LOC, PRODUCT, EVENT, WORK_OF_ART).
bool IsSubsequenceEligible(EntityLabel label);

struct EntityMention {
  std::string text;
  EntityLabel label = EntityLabel::kOther;
  Span span;  // code point offsets into the instance text

  bool operator==(const EntityMention &other) const = default;
};

// A validated (table, text, entities) triple. Immutable once built; the
// tokenization and code point view of the text are computed at construction.
class Instance {
 public:
  // Validates and builds an instance. Entities are sorted by start offset
  // (stable). When `sentences` is empty the splitter derives them.
  // Throws ValidationError on any invariant violation.
  static Instance Create(std::string id, Table table, std::string text,
                         std::vector<EntityMention> entities,
                         std::optional<std::vector<Span>> sentences = {});

  const std::string &id() const { return id_; }
  const Table &table() const { return table_; }
  const std::string &text() const { return text_; }
  const std::u32string &chars() const { return chars_; }
  const std::vector<EntityMention> &entities() const { return entities_; }
  const std::vector<Span> &sentences() const { return sentences_; }
  const std::vector<Token> &tokens() const { return tokens_; }

  // Index of the sentence that contains `offset`. Offsets falling between
  // sentences map to the preceding sentence, offsets before the first
  // sentence to sentence 0.
  std::size_t SentenceOf(std::size_t offset) const;

  // Entities whose span is not contained in a single sentence span. These
  // are flagged, never repaired; planning assigns them by start offset.
  std::vector<std::size_t> CrossingEntities() const;

  bool operator==(const Instance &other) const;

 private:
  Instance() = default;

  std::string id_;
  Table table_;
  std::string text_;
  std::u32string chars_;
  std::vector<EntityMention> entities_;
  std::vector<Span> sentences_;
  std::vector<Token> tokens_;
};

// Strips leading and trailing Unicode whitespace.
std::string Trim(std::string_view text);

}  // namespace t2tfaith

#endif  // T2TFAITH_CORPUS_H_
