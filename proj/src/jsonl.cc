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

#include "t2tfaith/jsonl.h"

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "t2tfaith/errors.h"

namespace t2tfaith {
namespace {

const Json &Require(const Json &object, const char *key, const char *where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string("missing field '") + key + "' in " + where);
  }
  return *it;
}

std::string RequireString(const Json &object, const char *key,
                          const char *where) {
  const Json &v = Require(object, key, where);
  if (!v.is_string()) {
    throw ParseError(std::string("field '") + key + "' in " + where +
                     " must be a string");
  }
  return v.get<std::string>();
}

std::size_t RequireOffset(const Json &object, const char *key,
                          const char *where) {
  const Json &v = Require(object, key, where);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) {
    throw ValidationError(std::string("negative offset '") + key + "' in " +
                          where);
  }
  throw ParseError(std::string("field '") + key + "' in " + where +
                   " must be an integer");
}

const Json &RequireArray(const Json &object, const char *key,
                         const char *where) {
  const Json &v = Require(object, key, where);
  if (!v.is_array()) {
    throw ParseError(std::string("field '") + key + "' in " + where +
                     " must be an array");
  }
  return v;
}

}  // namespace

bool IsCoreField(std::string_view key) {
  static constexpr std::array<std::string_view, 5> kCore = {
      "id", "table", "text", "entities", "sentences"};
  for (auto k : kCore) {
    if (k == key) return true;
  }
  return false;
}

Instance InstanceFromJson(const Json &object) {
  if (!object.is_object()) throw ParseError("instance must be a JSON object");
  std::string id = RequireString(object, "id", "instance");

  Table table;
  for (const Json &r : RequireArray(object, "table", "instance")) {
    if (!r.is_object()) throw ParseError("table record must be an object");
    table.push_back(Record{RequireString(r, "attribute", "record"),
                           RequireString(r, "value", "record")});
  }

  std::string text = RequireString(object, "text", "instance");

  std::vector<EntityMention> entities;
  if (auto it = object.find("entities"); it != object.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("'entities' must be an array");
    for (const Json &e : *it) {
      if (!e.is_object()) throw ParseError("entity must be an object");
      EntityMention m;
      m.text = RequireString(e, "text", "entity");
      m.label = LabelFromName(RequireString(e, "label", "entity"));
      m.span.begin = RequireOffset(e, "start", "entity");
      m.span.end = RequireOffset(e, "end", "entity");
      entities.push_back(std::move(m));
    }
  }

  std::optional<std::vector<Span>> sentences;
  if (auto it = object.find("sentences");
      it != object.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("'sentences' must be an array");
    sentences.emplace();
    for (const Json &s : *it) {
      if (!s.is_object()) throw ParseError("sentence must be an object");
      sentences->push_back(Span{RequireOffset(s, "start", "sentence"),
                                RequireOffset(s, "end", "sentence")});
    }
  }

  return Instance::Create(std::move(id), std::move(table), std::move(text),
                          std::move(entities), std::move(sentences));
}

Instance ParseInstance(std::string_view line) {
  Json object;
  try {
    object = Json::parse(line);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(e.what());
  }
  return InstanceFromJson(object);
}

Json InstanceToJson(const Instance &instance) {
  Json out = Json::object();
  out["id"] = instance.id();
  Json table = Json::array();
  for (const Record &r : instance.table()) {
    table.push_back(Json{{"attribute", r.attribute}, {"value", r.value}});
  }
  out["table"] = std::move(table);
  out["text"] = instance.text();
  Json entities = Json::array();
  for (const EntityMention &e : instance.entities()) {
    entities.push_back(Json{{"text", e.text},
                            {"label", std::string(LabelName(e.label))},
                            {"start", e.span.begin},
                            {"end", e.span.end}});
  }
  out["entities"] = std::move(entities);
  Json sentences = Json::array();
  for (const Span &s : instance.sentences()) {
    sentences.push_back(Json{{"start", s.begin}, {"end", s.end}});
  }
  out["sentences"] = std::move(sentences);
  return out;
}

std::string SerializeInstance(const Instance &instance) {
  return InstanceToJson(instance).dump();
}

}  // namespace t2tfaith
