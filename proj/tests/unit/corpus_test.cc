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

#include <string>

#include "common/synthetic.h"
#include "doctest.h"
#include "t2tfaith/corpus.h"
#include "t2tfaith/errors.h"
#include "t2tfaith/jsonl.h"

namespace t2tfaith {
namespace {

TEST_CASE("parse_instance builds a validated instance") {
  const Instance inst = ParseInstance(
      R"({"id":"a","table":[{"attribute":"Name_ID","value":"Mary Reid Macarthur"}],)"
      R"("text":"Mary Reid Macarthur.","entities":[]})");
  CHECK(inst.id() == "a");
  CHECK(inst.table().size() == 1);
  CHECK(inst.sentences() == std::vector<Span>{{0, 20}});
  CHECK(inst.tokens().size() == 4);
}

TEST_CASE("parse_instance rejects an empty table") {
  CHECK_THROWS_AS(ParseInstance(R"({"id":"b","table":[],"text":"x"})"),
                  ValidationError);
}

TEST_CASE("parse_instance rejects inverted entity spans") {
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"c","table":[{"attribute":"a","value":"b"}],)"
                    R"("text":"hello world","entities":[)"
                    R"({"text":"x","label":"GPE","start":5,"end":3}]})"),
      ValidationError);
}

TEST_CASE("parse_instance validation errors name the entity") {
  try {
    ParseInstance(R"({"id":"c","table":[{"attribute":"a","value":"b"}],)"
                  R"("text":"hello world","entities":[)"
                  R"({"text":"wurld","label":"GPE","start":6,"end":11}]})");
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(std::string(e.what()).find("'wurld'") != std::string::npos);
  }
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"c","table":[{"attribute":"a","value":"b"}],)"
                    R"("text":"hi","entities":[)"
                    R"({"text":"hi!","label":"GPE","start":0,"end":3}]})"),
      ValidationError);
}

TEST_CASE("parse_instance syntax and schema errors") {
  CHECK_THROWS_AS(ParseInstance("{\"id\": "), ParseError);
  CHECK_THROWS_AS(ParseInstance(R"({"id":"x","text":"t"})"), ParseError);
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"x","table":[{"attribute":"a","value":1}],"text":"t"})"),
      ParseError);
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"x","table":[{"attribute":"a","value":"v"}],"text":""})"),
      ValidationError);
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"x","table":[{"attribute":" ","value":"v"}],"text":"t"})"),
      ValidationError);
  CHECK_THROWS_AS(
      ParseInstance(R"({"id":"x","table":[{"attribute":"a","value":"v"}],"text":"t",)"
                    R"("entities":[{"text":"t","label":"GPE","start":-1,"end":1}]})"),
      ValidationError);
}

TEST_CASE("entities are re-sorted and unknown labels map to OTHER") {
  const Instance inst = ParseInstance(
      R"({"id":"s","table":[{"attribute":"a","value":"b"}],"text":"Ann met Bob",)"
      R"("entities":[{"text":"Bob","label":"PERSON","start":8,"end":11},)"
      R"({"text":"Ann","label":"MISC","start":0,"end":3}]})");
  REQUIRE(inst.entities().size() == 2);
  CHECK(inst.entities()[0].text == "Ann");
  CHECK(inst.entities()[0].label == EntityLabel::kOther);
  CHECK(inst.entities()[1].label == EntityLabel::kPerson);
}

TEST_CASE("ingested sentences are validated") {
  const std::string head =
      R"({"id":"s","table":[{"attribute":"a","value":"b"}],"text":"A b. C d.",)";
  const Instance ok =
      ParseInstance(head + R"("sentences":[{"start":0,"end":4},{"start":5,"end":9}]})");
  CHECK(ok.sentences().size() == 2);
  // Overlapping.
  CHECK_THROWS_AS(
      ParseInstance(head + R"("sentences":[{"start":0,"end":6},{"start":5,"end":9}]})"),
      ValidationError);
  // Leaves "C" uncovered.
  CHECK_THROWS_AS(
      ParseInstance(head + R"("sentences":[{"start":0,"end":4},{"start":7,"end":9}]})"),
      ValidationError);
}

TEST_CASE("entities crossing a sentence boundary are flagged") {
  const Instance inst = ParseInstance(
      R"({"id":"x","table":[{"attribute":"a","value":"b"}],"text":"He left. Then came.",)"
      R"("entities":[{"text":"left. Then","label":"EVENT","start":3,"end":13},)"
      R"({"text":"came","label":"EVENT","start":14,"end":18}]})");
  CHECK(inst.CrossingEntities() == std::vector<std::size_t>{0});
  CHECK(inst.SentenceOf(3) == 0);
  CHECK(inst.SentenceOf(8) == 0);
  CHECK(inst.SentenceOf(9) == 1);
}

TEST_CASE("serialize/parse round trip") {
  testing::Generator gen(11);
  for (int i = 0; i < 200; ++i) {
    const Instance inst = gen.RandomInstance("rt-" + std::to_string(i));
    const Instance back = ParseInstance(SerializeInstance(inst));
    CHECK(back == inst);
    CHECK(SerializeInstance(back) == SerializeInstance(inst));
  }
}

TEST_CASE("records are trimmed and duplicates preserved") {
  const Instance inst = ParseInstance(
      R"({"id":"d","table":[{"attribute":" occupation ","value":"poet "},)"
      R"({"attribute":"occupation","value":"poet"}],"text":"A poet."})");
  REQUIRE(inst.table().size() == 2);
  CHECK(inst.table()[0] == Record{"occupation", "poet"});
  CHECK(inst.table()[1] == Record{"occupation", "poet"});
}

}  // namespace
}  // namespace t2tfaith
