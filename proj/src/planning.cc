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

#include "t2tfaith/planning.h"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "t2tfaith/errors.h"

namespace t2tfaith {
namespace {

constexpr std::size_t kNoOffset = std::numeric_limits<std::size_t>::max();

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  const std::u32string chars = DecodeUtf8(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    while (i < chars.size() && IsSpace(chars[i])) ++i;
    std::size_t j = i;
    while (j < chars.size() && !IsSpace(chars[j])) ++j;
    if (j > i) {
      out.push_back(EncodeUtf8(std::u32string_view(chars).substr(i, j - i)));
    }
    i = j;
  }
  return out;
}

std::string Join(const std::vector<std::string> &parts,
                 std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

// first_start[s][k]: earliest witness start of record k in sentence s.
std::vector<std::vector<std::size_t>> FirstWitnessStarts(
    const Instance &instance, const Alignment &alignment) {
  const std::size_t record_count = alignment.record_count();
  std::vector<std::vector<std::size_t>> first(
      std::max<std::size_t>(instance.sentences().size(), 1),
      std::vector<std::size_t>(record_count, kNoOffset));
  auto note = [&](std::size_t k, std::size_t start) {
    std::size_t &slot = first[instance.SentenceOf(start)][k];
    slot = std::min(slot, start);
  };
  for (std::size_t k = 0; k < record_count; ++k) {
    for (const TokenSpan &s : alignment.spans(k)) note(k, s.chars.begin);
    for (std::size_t i : alignment.record_entities(k)) {
      note(k, instance.entities()[i].span.begin);
    }
  }
  return first;
}

// A parsed plan token stream before post-editing.
struct RawItem {
  enum class Kind { kSep, kAttribute, kEntity } kind = Kind::kSep;
  std::string attribute;               // underscored
  std::optional<std::size_t> pinned;   // record fixed by an attached value
  std::string mention;
};

class AttributeIndex {
 public:
  explicit AttributeIndex(const Table &table) {
    for (std::size_t k = 0; k < table.size(); ++k) {
      records_[UnderscoredAttribute(table[k].attribute)].push_back(k);
    }
  }
  const std::vector<std::size_t> *Find(const std::string &name) const {
    auto it = records_.find(name);
    return it == records_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, std::vector<std::size_t>, std::less<>> records_;
};

Plan PostEditItems(const std::vector<RawItem> &items, const Table &table) {
  const AttributeIndex index(table);
  std::vector<bool> used(table.size(), false);
  std::map<std::string, std::size_t> subject_cursor;

  Plan plan;
  SentencePlan current;
  auto close_sentence = [&] {
    if (!current.empty()) plan.sentences.push_back(std::move(current));
    current.clear();
  };

  for (const RawItem &item : items) {
    switch (item.kind) {
      case RawItem::Kind::kSep:
        close_sentence();
        break;
      case RawItem::Kind::kEntity:
        current.push_back(PlanItem::EntityLiteral(item.mention));
        break;
      case RawItem::Kind::kAttribute: {
        const std::vector<std::size_t> *records = index.Find(item.attribute);
        if (records == nullptr) break;
        if (item.attribute == kSubjectAttribute) {
          std::size_t &cursor = subject_cursor[item.attribute];
          std::size_t k = (*records)[cursor % records->size()];
          if (item.pinned) {
            k = *item.pinned;
          } else {
            ++cursor;
          }
          current.push_back(PlanItem::RecordRef(k));
          break;
        }
        std::optional<std::size_t> chosen;
        if (item.pinned && !used[*item.pinned]) {
          chosen = item.pinned;
        } else {
          for (std::size_t k : *records) {
            if (!used[k]) {
              chosen = k;
              break;
            }
          }
        }
        if (chosen) {
          used[*chosen] = true;
          current.push_back(PlanItem::RecordRef(*chosen));
        }
        break;
      }
    }
  }
  close_sentence();

  if (plan.sentences.empty()) {
    SentencePlan all;
    for (std::size_t k = 0; k < table.size(); ++k) {
      all.push_back(PlanItem::RecordRef(k));
    }
    plan.sentences.push_back(std::move(all));
  }
  return plan;
}

void CheckRenderable(const Table &table) {
  for (const Record &r : table) {
    if (r.attribute.find(" | ") != std::string::npos ||
        r.attribute.find(kPlanMarker) != std::string::npos) {
      throw ValidationError("attribute '" + r.attribute +
                            "' contains a reserved delimiter");
    }
  }
}

std::string RenderRecords(const Table &table) {
  std::vector<std::string> parts;
  parts.reserve(table.size());
  for (const Record &r : table) parts.push_back(r.attribute + " : " + r.value);
  return Join(parts, " | ");
}

}  // namespace

RenderMode ParseRenderMode(std::string_view name) {
  if (name == "r") return RenderMode::kRecords;
  if (name == "rp") return RenderMode::kRecordsPlan;
  if (name == "rep") return RenderMode::kRecordsAugPlan;
  if (name == "e") return RenderMode::kEntities;
  if (name == "val") return RenderMode::kValues;
  throw UsageError("unknown render mode '" + std::string(name) + "'");
}

std::string_view RenderModeName(RenderMode mode) {
  switch (mode) {
    case RenderMode::kRecords:
      return "r";
    case RenderMode::kRecordsPlan:
      return "rp";
    case RenderMode::kRecordsAugPlan:
      return "rep";
    case RenderMode::kEntities:
      return "e";
    case RenderMode::kValues:
      return "val";
  }
  return "r";
}

std::string UnderscoredAttribute(std::string_view attribute) {
  return Join(SplitWhitespace(attribute), "_");
}

Plan ExtractGoldPlan(const Instance &instance, const Alignment &alignment) {
  const auto first = FirstWitnessStarts(instance, alignment);
  Plan plan;
  const std::size_t sentence_count =
      std::max<std::size_t>(instance.sentences().size(), 1);
  for (std::size_t s = 0; s < sentence_count; ++s) {
    std::vector<std::pair<std::size_t, std::size_t>> keyed;
    for (std::size_t k = 0; k < alignment.record_count(); ++k) {
      if (first[s][k] != kNoOffset) keyed.emplace_back(first[s][k], k);
    }
    std::sort(keyed.begin(), keyed.end());
    SentencePlan sentence;
    for (const auto &[start, k] : keyed) {
      sentence.push_back(PlanItem::RecordRef(k));
    }
    plan.sentences.push_back(std::move(sentence));
  }
  return plan;
}

Plan AugmentPlan(const Plan &plan, const Instance &instance,
                 const Alignment &alignment) {
  const auto first = FirstWitnessStarts(instance, alignment);
  if (plan.sentences.size() != first.size()) {
    throw UsageError("plan has " + std::to_string(plan.sentences.size()) +
                     " sentence-plans but the instance has " +
                     std::to_string(first.size()) + " sentences");
  }
  std::vector<std::vector<std::size_t>> hallucinated(first.size());
  for (std::size_t i : alignment.HallucinatedEntities()) {
    hallucinated[instance.SentenceOf(instance.entities()[i].span.begin)]
        .push_back(i);
  }

  Plan out;
  for (std::size_t s = 0; s < plan.sentences.size(); ++s) {
    SentencePlan merged;
    const auto &pending = hallucinated[s];
    std::size_t next = 0;
    std::size_t key = 0;
    for (const PlanItem &item : plan.sentences[s]) {
      if (item.is_record() && item.record() < first[s].size() &&
          first[s][item.record()] != kNoOffset) {
        key = first[s][item.record()];
      }
      while (next < pending.size() &&
             instance.entities()[pending[next]].span.begin < key) {
        merged.push_back(
            PlanItem::EntityLiteral(instance.entities()[pending[next]].text));
        ++next;
      }
      merged.push_back(item);
    }
    for (; next < pending.size(); ++next) {
      merged.push_back(
          PlanItem::EntityLiteral(instance.entities()[pending[next]].text));
    }
    out.sentences.push_back(std::move(merged));
  }
  return out;
}

Plan PostEditPlan(std::span<const std::string> raw, const Table &table) {
  std::vector<RawItem> items;
  items.reserve(raw.size());
  for (const std::string &token : raw) {
    RawItem item;
    if (token == kSep) {
      item.kind = RawItem::Kind::kSep;
    } else {
      item.kind = RawItem::Kind::kAttribute;
      item.attribute = token;
    }
    items.push_back(std::move(item));
  }
  return PostEditItems(items, table);
}

Plan PostEditPlan(std::string_view raw, const Table &table) {
  const std::vector<std::string> tokens = SplitWhitespace(raw);
  return PostEditPlan(std::span<const std::string>(tokens), table);
}

std::string RenderPlan(const Plan &plan, const Table &table,
                       bool attach_values) {
  std::vector<std::string> parts;
  for (std::size_t s = 0; s < plan.sentences.size(); ++s) {
    if (s > 0) parts.emplace_back(kSep);
    for (const PlanItem &item : plan.sentences[s]) {
      if (item.is_record()) {
        if (item.record() >= table.size()) {
          throw ValidationError("plan references record " +
                                std::to_string(item.record()) +
                                " outside the table");
        }
        const Record &r = table[item.record()];
        std::string name = UnderscoredAttribute(r.attribute);
        if (name == kSep) {
          throw ValidationError("attribute 'SEP' collides with the delimiter");
        }
        parts.push_back(attach_values ? name + " : " + r.value : name);
      } else {
        if (item.mention().find(kEntOpen) != std::string::npos ||
            item.mention().find(kEntClose) != std::string::npos) {
          throw ValidationError("entity literal '" + item.mention() +
                                "' contains entity markup");
        }
        parts.push_back(std::string(kEntOpen) + " " + item.mention() + " " +
                        std::string(kEntClose));
      }
    }
  }
  return Join(parts, " ");
}

std::string RenderInput(const Instance &instance, RenderMode mode,
                        const Plan *plan, bool attach_values) {
  const Table &table = instance.table();
  switch (mode) {
    case RenderMode::kRecords:
      CheckRenderable(table);
      return RenderRecords(table);
    case RenderMode::kRecordsPlan:
    case RenderMode::kRecordsAugPlan: {
      if (plan == nullptr) {
        throw UsageError("render mode '" + std::string(RenderModeName(mode)) +
                         "' requires a plan");
      }
      CheckRenderable(table);
      const bool values = mode == RenderMode::kRecordsAugPlan || attach_values;
      return RenderRecords(table) + " " + std::string(kPlanMarker) + " " +
             RenderPlan(*plan, table, values);
    }
    case RenderMode::kEntities: {
      std::vector<std::string> parts;
      for (const EntityMention &e : instance.entities()) {
        parts.push_back(e.text);
      }
      return Join(parts, " | ");
    }
    case RenderMode::kValues: {
      std::vector<std::string> parts;
      for (const Record &r : table) parts.push_back(r.value);
      return Join(parts, " | ");
    }
  }
  throw UsageError("unknown render mode");
}

Plan ParsePlan(std::string_view text, const Table &table) {
  const std::vector<std::string> tokens = SplitWhitespace(text);
  const AttributeIndex index(table);
  std::vector<std::vector<std::string>> value_tokens;
  value_tokens.reserve(table.size());
  for (const Record &r : table) value_tokens.push_back(SplitWhitespace(r.value));

  std::vector<bool> pinned_once(table.size(), false);
  std::vector<RawItem> items;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string &token = tokens[i];
    if (token == kEntOpen) {
      std::size_t j = i + 1;
      while (j < tokens.size() && tokens[j] != kEntClose &&
             tokens[j] != kEntOpen) {
        ++j;
      }
      if (j >= tokens.size() || tokens[j] != kEntClose) {
        throw ParseError("unbalanced <ent> at plan token " + std::to_string(i));
      }
      if (j == i + 1) {
        throw ParseError("empty entity literal at plan token " +
                         std::to_string(i));
      }
      RawItem item;
      item.kind = RawItem::Kind::kEntity;
      item.mention = Join(
          std::vector<std::string>(tokens.begin() + i + 1, tokens.begin() + j),
          " ");
      items.push_back(std::move(item));
      i = j + 1;
      continue;
    }
    if (token == kEntClose) {
      throw ParseError("unbalanced </ent> at plan token " + std::to_string(i));
    }
    if (token == kSep) {
      items.push_back(RawItem{});
      ++i;
      continue;
    }
    const std::vector<std::size_t> *records = index.Find(token);
    if (records == nullptr) {
      ++i;
      continue;
    }
    RawItem item;
    item.kind = RawItem::Kind::kAttribute;
    item.attribute = token;
    ++i;
    if (i < tokens.size() && tokens[i] == ":") {
      ++i;
      // Longest matching value among the attribute's records; among equal
      // values prefer a record not pinned yet.
      std::optional<std::size_t> best;
      std::size_t best_len = 0;
      for (std::size_t k : *records) {
        const auto &value = value_tokens[k];
        if (i + value.size() > tokens.size() ||
            !std::equal(value.begin(), value.end(), tokens.begin() + i)) {
          continue;
        }
        if (!best || value.size() > best_len ||
            (value.size() == best_len && pinned_once[*best] &&
             !pinned_once[k])) {
          best = k;
          best_len = value.size();
        }
      }
      if (best) {
        item.pinned = best;
        pinned_once[*best] = true;
        i += best_len;
      } else {
        while (i < tokens.size() && tokens[i] != kSep &&
               tokens[i] != kEntOpen && tokens[i] != kEntClose &&
               index.Find(tokens[i]) == nullptr) {
          ++i;
        }
      }
    }
    items.push_back(std::move(item));
  }
  return PostEditItems(items, table);
}

std::optional<std::string> CheckPlanGrammar(const Plan &plan,
                                            const Table &table) {
  if (plan.sentences.empty()) return "plan has no sentence-plans";
  std::vector<bool> seen(table.size(), false);
  for (std::size_t s = 0; s < plan.sentences.size(); ++s) {
    if (plan.sentences[s].empty()) {
      return "sentence-plan " + std::to_string(s) + " is empty";
    }
    for (const PlanItem &item : plan.sentences[s]) {
      if (!item.is_record()) continue;
      const std::size_t k = item.record();
      if (k >= table.size()) {
        return "record " + std::to_string(k) + " is outside the table";
      }
      if (UnderscoredAttribute(table[k].attribute) == kSubjectAttribute) {
        continue;
      }
      if (seen[k]) return "record " + std::to_string(k) + " is repeated";
      seen[k] = true;
    }
  }
  return std::nullopt;
}

Json PlanToJson(const Plan &plan) {
  Json out = Json::array();
  for (const SentencePlan &sentence : plan.sentences) {
    Json items = Json::array();
    for (const PlanItem &item : sentence) {
      if (item.is_record()) {
        items.push_back(item.record());
      } else {
        items.push_back(Json{{"ent", item.mention()}});
      }
    }
    out.push_back(std::move(items));
  }
  return out;
}

Plan PlanFromJson(const Json &value, const Table &table) {
  if (value.is_string()) return ParsePlan(value.get<std::string>(), table);
  if (!value.is_array()) throw ParseError("plan must be an array or a string");
  Plan plan;
  for (const Json &sentence : value) {
    if (!sentence.is_array()) throw ParseError("sentence-plan must be an array");
    SentencePlan items;
    for (const Json &item : sentence) {
      if (item.is_number_unsigned()) {
        const auto k = item.get<std::size_t>();
        if (k >= table.size()) {
          throw ValidationError("plan references record " + std::to_string(k) +
                                " outside the table");
        }
        items.push_back(PlanItem::RecordRef(k));
      } else if (item.is_object() && item.contains("ent") &&
                 item["ent"].is_string()) {
        items.push_back(PlanItem::EntityLiteral(item["ent"].get<std::string>()));
      } else {
        throw ParseError("plan item must be a record index or {\"ent\": str}");
      }
    }
    plan.sentences.push_back(std::move(items));
  }
  if (plan.sentences.empty()) throw ValidationError("plan has no sentences");
  return plan;
}

}  // namespace t2tfaith
