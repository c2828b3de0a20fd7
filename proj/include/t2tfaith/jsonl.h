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

#ifndef T2TFAITH_JSONL_H_
#define T2TFAITH_JSONL_H_

// JSON Lines ingestion and serialization of instances.
//
// One object per line:
//   {"id": str, "table": [{"attribute": str, "value": str}, ...],
//    "text": str,
//    "entities": [{"text": str, "label": str, "start": int, "end": int}],
//    "sentences": [{"start": int, "end": int}]}
// "entities" and "sentences" are optional. Offsets count code points.

#include <string>
#include <string_view>

#include "json.hpp"
#include "t2tfaith/corpus.h"

namespace t2tfaith {

using Json = nlohmann::ordered_json;

// Field names owned by the instance schema. Other fields of an input object
// are carried through by the pipeline untouched.
bool IsCoreField(std::string_view key);

// Throws ParseError for malformed JSON or missing/mistyped fields and
// ValidationError for domain violations.
Instance ParseInstance(std::string_view line);
Instance InstanceFromJson(const Json &object);

Json InstanceToJson(const Instance &instance);

// Compact single-line serialization without the trailing newline. Sentence
// spans are always written, so parsing the result reproduces the instance.
std::string SerializeInstance(const Instance &instance);

}  // namespace t2tfaith

#endif  // T2TFAITH_JSONL_H_
