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

#include "t2tfaith/corpus.h"

#include <algorithm>
#include <array>
#include <utility>

#include "t2tfaith/errors.h"

namespace t2tfaith {
namespace {

constexpr std::array<std::pair<EntityLabel, std::string_view>, 19> kLabels = {{
    {EntityLabel::kPerson, "PERSON"},
    {EntityLabel::kNorp, "NORP"},
    {EntityLabel::kFac, "FAC"},
    {EntityLabel::kOrg, "ORG"},
    {EntityLabel::kGpe, "GPE"},
    {EntityLabel::kLoc, "LOC"},
    {EntityLabel::kProduct, "PRODUCT"},
    {EntityLabel::kEvent, "EVENT"},
    {EntityLabel::kWorkOfArt, "WORK_OF_ART"},
    {EntityLabel::kDate, "DATE"},
    {EntityLabel::kTime, "TIME"},
    {EntityLabel::kCardinal, "CARDINAL"},
    {EntityLabel::kOrdinal, "ORDINAL"},
    {EntityLabel::kQuantity, "QUANTITY"},
    {EntityLabel::kPercent, "PERCENT"},
    {EntityLabel::kMoney, "MONEY"},
    {EntityLabel::kLanguage, "LANGUAGE"},
    {EntityLabel::kLaw, "LAW"},
    {EntityLabel::kOther, "OTHER"},
}};

}  // namespace

std::string_view LabelName(EntityLabel label) {
  for (const auto &[value, name] : kLabels) {
    if (value == label) return name;
  }
  return "OTHER";
}

EntityLabel LabelFromName(std::string_view name) {
  for (const auto &[value, label_name] : kLabels) {
    if (label_name == name) return value;
  }
  return EntityLabel::kOther;
}

bool IsSubsequenceEligible(EntityLabel label) {
  switch (label) {
    case EntityLabel::kPerson:
    case EntityLabel::kNorp:
    case EntityLabel::kFac:
    case EntityLabel::kOrg:
    case EntityLabel::kGpe:
    case EntityLabel::kLoc:
    case EntityLabel::kProduct:
    case EntityLabel::kEvent:
    case EntityLabel::kWorkOfArt:
      return true;
    default:
      return false;
  }
}

std::string Trim(std::string_view text) {
  const std::u32string chars = DecodeUtf8(text);
  std::size_t begin = 0;
  std::size_t end = chars.size();
  while (begin < end && IsSpace(chars[begin])) ++begin;
  while (end > begin && IsSpace(chars[end - 1])) --end;
  return EncodeUtf8(std::u32string_view(chars).substr(begin, end - begin));
}

Instance Instance::Create(std::string id, Table table, std::string text,
                          std::vector<EntityMention> entities,
                          std::optional<std::vector<Span>> sentences) {
  Instance inst;
  if (id.empty()) throw ValidationError("instance id is empty");
  DecodeUtf8(id);
  inst.id_ = std::move(id);
  const std::string where = " (instance '" + inst.id_ + "')";

  if (table.empty()) throw ValidationError("empty table" + where);
  for (std::size_t k = 0; k < table.size(); ++k) {
    Record &r = table[k];
    r.attribute = Trim(r.attribute);
    r.value = Trim(r.value);
    if (r.attribute.empty() || r.value.empty()) {
      throw ValidationError("record " + std::to_string(k) +
                            " has an empty attribute or value" + where);
    }
  }
  inst.table_ = std::move(table);

  if (text.empty()) throw ValidationError("empty text" + where);
  inst.chars_ = DecodeUtf8(text);
  inst.text_ = std::move(text);
  const std::size_t length = inst.chars_.size();
  const std::u32string_view chars(inst.chars_);

  std::stable_sort(entities.begin(), entities.end(),
                   [](const EntityMention &a, const EntityMention &b) {
                     return a.span.begin < b.span.begin;
                   });
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const EntityMention &e = entities[i];
    const std::string name =
        "entity " + std::to_string(i) + " '" + e.text + "' [" +
        std::to_string(e.span.begin) + "," + std::to_string(e.span.end) + ")";
    if (e.span.begin >= e.span.end || e.span.end > length) {
      throw ValidationError(name + " is out of bounds" + where);
    }
    if (EncodeUtf8(chars.substr(e.span.begin, e.span.size())) != e.text) {
      throw ValidationError(name + " does not match the text" + where);
    }
  }
  inst.entities_ = std::move(entities);

  if (sentences && !sentences->empty()) {
    std::size_t prev_end = 0;
    for (std::size_t s = 0; s < sentences->size(); ++s) {
      const Span &span = (*sentences)[s];
      if (span.begin >= span.end || span.end > length ||
          span.begin < prev_end) {
        throw ValidationError("sentence " + std::to_string(s) +
                              " is empty, out of bounds or out of order" +
                              where);
      }
      for (std::size_t c = prev_end; c < span.begin; ++c) {
        if (!IsSpace(chars[c])) {
          throw ValidationError("sentence spans leave non-whitespace at " +
                                std::to_string(c) + " uncovered" + where);
        }
      }
      prev_end = span.end;
    }
    for (std::size_t c = prev_end; c < length; ++c) {
      if (!IsSpace(chars[c])) {
        throw ValidationError("sentence spans leave non-whitespace at " +
                              std::to_string(c) + " uncovered" + where);
      }
    }
    inst.sentences_ = std::move(*sentences);
  } else {
    inst.sentences_ = SegmentSentences(chars);
  }

  inst.tokens_ = Tokenize(chars);
  return inst;
}

std::size_t Instance::SentenceOf(std::size_t offset) const {
  auto it = std::upper_bound(
      sentences_.begin(), sentences_.end(), offset,
      [](std::size_t pos, const Span &s) { return pos < s.begin; });
  if (it == sentences_.begin()) return 0;
  return static_cast<std::size_t>(it - sentences_.begin()) - 1;
}

std::vector<std::size_t> Instance::CrossingEntities() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    const Span &e = entities_[i].span;
    const std::size_t s = SentenceOf(e.begin);
    if (sentences_.empty() || !sentences_[s].Contains(e.begin) ||
        e.end > sentences_[s].end) {
      out.push_back(i);
    }
  }
  return out;
}

bool Instance::operator==(const Instance &other) const {
  return id_ == other.id_ && table_ == other.table_ && text_ == other.text_ &&
         entities_ == other.entities_ && sentences_ == other.sentences_;
}

}  // namespace t2tfaith
