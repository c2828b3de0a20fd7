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

#ifndef T2TFAITH_PLANNING_H_
#define T2TFAITH_PLANNING_H_

// Serialized content plans and the model input serializations.
//
// A plan is a sequence of sentence-plans; each sentence-plan lists, in
// order, the table records (and, for augmented plans, the unaligned entity
// mentions) the sentence realizes. The textual plan body is
//   item item ... SEP item ... SEP ...
// where a record renders as its attribute with whitespace replaced by '_',
// optionally followed by " : value", and an entity literal renders as
// "<ent> mention </ent>".

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "t2tfaith/alignment.h"
#include "t2tfaith/corpus.h"
#include "t2tfaith/jsonl.h"

namespace t2tfaith {

inline constexpr std::string_view kSep = "SEP";
inline constexpr std::string_view kPlanMarker = "<plan>";
inline constexpr std::string_view kEntOpen = "<ent>";
inline constexpr std::string_view kEntClose = "</ent>";
inline constexpr std::string_view kSubjectAttribute = "Name_ID";

class PlanItem {
 public:
  enum class Kind { kRecord, kEntity };

  static PlanItem RecordRef(std::size_t index) {
    return PlanItem(Kind::kRecord, index, {});
  }
  static PlanItem EntityLiteral(std::string mention) {
    return PlanItem(Kind::kEntity, 0, std::move(mention));
  }

  Kind kind() const { return kind_; }
  bool is_record() const { return kind_ == Kind::kRecord; }
  std::size_t record() const { return record_; }
  const std::string &mention() const { return mention_; }

  bool operator==(const PlanItem &other) const = default;

 private:
  PlanItem(Kind kind, std::size_t record, std::string mention)
      : kind_(kind), record_(record), mention_(std::move(mention)) {}

  Kind kind_;
  std::size_t record_;
  std::string mention_;
};

using SentencePlan = std::vector<PlanItem>;

struct Plan {
  std::vector<SentencePlan> sentences;

  bool operator==(const Plan &other) const = default;
};

enum class RenderMode { kRecords, kRecordsPlan, kRecordsAugPlan, kEntities,
                        kValues };

// CLI names: r, rp, rep, e, val.
RenderMode ParseRenderMode(std::string_view name);
std::string_view RenderModeName(RenderMode mode);

// "date of birth" -> "date_of_birth".
std::string UnderscoredAttribute(std::string_view attribute);

// One sentence-plan per sentence. Within a sentence, every record with a
// witness (exact span or aligned entity) starting there, ordered by its
// first witness start. Empty sentence-plans and repeats are kept.
Plan ExtractGoldPlan(const Instance &instance, const Alignment &alignment);

// Inserts each hallucinated entity as an EntityLiteral into the sentence
// that contains its start, in start-offset order. `plan` must be the gold
// plan of the same instance.
Plan AugmentPlan(const Plan &plan, const Instance &instance,
                 const Alignment &alignment);

// Post-edits a learned plan given as plan-vocabulary tokens: unknown tokens
// are dropped, each record is used at most once (Name_ID records may repeat
// and cycle in table order), empty sentence-plans are removed, and an empty
// result falls back to a single sentence in table order.
Plan PostEditPlan(std::span<const std::string> raw, const Table &table);
Plan PostEditPlan(std::string_view raw, const Table &table);

// Plan body text. RecordRefs render attribute-only unless attach_values.
std::string RenderPlan(const Plan &plan, const Table &table,
                       bool attach_values);

// Model input for `mode`. Plan modes require `plan` (UsageError otherwise);
// R_AUGPLAN always attaches values.
std::string RenderInput(const Instance &instance, RenderMode mode,
                        const Plan *plan = nullptr, bool attach_values = false);

// Inverse of RenderPlan for attribute-only or value-attached bodies. Tokens
// outside the plan vocabulary follow post-edit semantics. Throws ParseError
// for unbalanced <ent> markup.
Plan ParsePlan(std::string_view text, const Table &table);

// First violation of the post-edited plan grammar, if any: no empty
// sentence-plan, no repeated record except Name_ID, indices in bounds.
std::optional<std::string> CheckPlanGrammar(const Plan &plan,
                                            const Table &table);

// JSON form: [[0, 2, {"ent": "Glasgow"}], [1]]. PlanFromJson also accepts
// a plan body string.
Json PlanToJson(const Plan &plan);
Plan PlanFromJson(const Json &value, const Table &table);

}  // namespace t2tfaith

#endif  // T2TFAITH_PLANNING_H_
