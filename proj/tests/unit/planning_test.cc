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
#include <vector>

#include "common/plans.h"
#include "common/synthetic.h"
#include "doctest.h"
#include "t2tfaith/errors.h"
#include "t2tfaith/planning.h"

namespace t2tfaith {
namespace {

Instance Fixture(const std::string &name) {
  return testing::ReadFixture(std::string(T2TFAITH_FIXTURES) + "/" + name)
      .at(0);
}

PlanItem R(std::size_t k) { return PlanItem::RecordRef(k); }
PlanItem Ent(const std::string &m) { return PlanItem::EntityLiteral(m); }

const char *const kFixtureAR =
    "Name_ID : Mary Reid Macarthur | date of birth : 1880 | occupation : "
    "trade unionist";

TEST_CASE("gold plan of Fixture C") {
  const Instance inst = Fixture("fixture_c.jsonl");
  const Plan plan = ExtractGoldPlan(inst, AlignInstance(inst));
  CHECK(plan == Plan{{{R(0), R(1)}, {R(2)}}});
  CHECK(PlanToJson(plan).dump() == "[[0,1],[2]]");
}

TEST_CASE("gold plan keeps empty sentence-plans") {
  const Instance inst = Instance::Create(
      "g", {{"Name_ID", "Ann Lee"}, {"occupation", "poet"}},
      "Rain fell. Ann Lee was a poet. Nothing else.", {});
  const Plan plan = ExtractGoldPlan(inst, AlignInstance(inst));
  CHECK(plan == Plan{{{}, {R(0), R(1)}, {}}});

  const Instance none = Instance::Create("n", {{"a", "zzz"}}, "Rain. Snow.", {});
  CHECK(ExtractGoldPlan(none, AlignInstance(none)) == Plan{{{}, {}}});
}

TEST_CASE("gold plan repeats records witnessed in several sentences") {
  const Instance inst = Instance::Create(
      "g", {{"Name_ID", "Ann Lee"}, {"occupation", "poet"}},
      "Ann Lee was a poet. Later Ann Lee wrote.", {});
  CHECK(ExtractGoldPlan(inst, AlignInstance(inst)) ==
        Plan{{{R(0), R(1)}, {R(0)}}});
}

TEST_CASE("augmented plan of Fixture A") {
  const Instance inst = Fixture("fixture_a.jsonl");
  const Alignment a = AlignInstance(inst);
  const Plan gold = ExtractGoldPlan(inst, a);
  CHECK(gold == Plan{{{R(0), R(1), R(2)}}});
  const Plan aug = AugmentPlan(gold, inst, a);
  CHECK(aug == Plan{{{R(0), R(1), R(2), Ent("Glasgow")}}});
  CHECK(PlanToJson(aug).dump() == R"([[0,1,2,{"ent":"Glasgow"}]])");

  const Instance c = Fixture("fixture_c.jsonl");
  const Alignment ac = AlignInstance(c);
  const Plan gc = ExtractGoldPlan(c, ac);
  CHECK(AugmentPlan(gc, c, ac) == gc);
}

TEST_CASE("augmented entities merge by start offset") {
  const std::string text = "Oslo and Rome met Ann Lee.";
  const Instance inst = Instance::Create(
      "m", {{"Name_ID", "Ann Lee"}}, text,
      {EntityMention{"Oslo", EntityLabel::kGpe, Span{0, 4}},
       EntityMention{"Rome", EntityLabel::kGpe, Span{9, 13}}});
  const Alignment a = AlignInstance(inst);
  CHECK(AugmentPlan(ExtractGoldPlan(inst, a), inst, a) ==
        Plan{{{Ent("Oslo"), Ent("Rome"), R(0)}}});
}

TEST_CASE("post-edit examples") {
  const Table table = {{"Name_ID", "Mary"}, {"occupation", "poet"}};
  CHECK(PostEditPlan("Name_ID SEP SEP occupation occupation", table) ==
        Plan{{{R(0)}, {R(1)}}});
  CHECK(PostEditPlan("Name_ID bogus_attr SEP Name_ID", table) ==
        Plan{{{R(0)}, {R(0)}}});
  CHECK(PostEditPlan("SEP SEP", table) == Plan{{{R(0), R(1)}}});
  CHECK(PostEditPlan("", table) == Plan{{{R(0), R(1)}}});
  CHECK(PostEditPlan("occupation SEP occupation SEP Name_ID", table) ==
        Plan{{{R(1)}, {R(0)}}});
}

TEST_CASE("post-edit resolves duplicate attributes in table order") {
  const Table table = {{"Name_ID", "Ann"},
                       {"award received", "Medal"},
                       {"Name_ID", "Annie"},
                       {"award received", "Prize"}};
  CHECK(PostEditPlan("award_received Name_ID award_received award_received "
                     "SEP Name_ID Name_ID",
                     table) == Plan{{{R(1), R(0), R(3)}, {R(2), R(0)}}});
}

TEST_CASE("render modes on Fixture A") {
  const Instance inst = Fixture("fixture_a.jsonl");
  const Alignment a = AlignInstance(inst);
  const Plan gold = ExtractGoldPlan(inst, a);
  const Plan aug = AugmentPlan(gold, inst, a);

  CHECK(RenderInput(inst, RenderMode::kRecords) == kFixtureAR);
  CHECK(RenderInput(inst, RenderMode::kEntities) ==
        "Mary Reid Macarthur | 1880 | Glasgow");
  CHECK(RenderInput(inst, RenderMode::kValues) ==
        "Mary Reid Macarthur | 1880 | trade unionist");
  CHECK(RenderInput(inst, RenderMode::kRecordsAugPlan, &aug) ==
        std::string(kFixtureAR) +
            " <plan> Name_ID : Mary Reid Macarthur date_of_birth : 1880 "
            "occupation : trade unionist <ent> Glasgow </ent>");
  CHECK(RenderInput(inst, RenderMode::kRecordsPlan, &gold) ==
        std::string(kFixtureAR) + " <plan> Name_ID date_of_birth occupation");
  CHECK(RenderInput(inst, RenderMode::kRecordsPlan, &gold, true) ==
        std::string(kFixtureAR) +
            " <plan> Name_ID : Mary Reid Macarthur date_of_birth : 1880 "
            "occupation : trade unionist");

  const Instance c = Fixture("fixture_c.jsonl");
  const Plan gc = ExtractGoldPlan(c, AlignInstance(c));
  CHECK(RenderPlan(gc, c.table(), false) ==
        "Name_ID date_of_birth SEP occupation");
}

TEST_CASE("render errors") {
  const Instance inst = Fixture("fixture_a.jsonl");
  CHECK_THROWS_AS(RenderInput(inst, RenderMode::kRecordsPlan), UsageError);
  CHECK_THROWS_AS(RenderInput(inst, RenderMode::kRecordsAugPlan), UsageError);

  const Instance bad = Instance::Create(
      "b", {{"x | y", "1"}}, "One.", {});
  CHECK_THROWS_AS(RenderInput(bad, RenderMode::kRecords), ValidationError);
  const Instance bad2 = Instance::Create(
      "b", {{"see <plan>", "1"}}, "One.", {});
  CHECK_THROWS_AS(RenderInput(bad2, RenderMode::kRecords), ValidationError);

  CHECK_THROWS_AS(RenderPlan(Plan{{{R(5)}}}, inst.table(), false),
                  ValidationError);
}

TEST_CASE("render mode names") {
  for (const char *name : {"r", "rp", "rep", "e", "val"}) {
    CHECK(RenderModeName(ParseRenderMode(name)) == name);
  }
  CHECK_THROWS_AS(ParseRenderMode("x"), UsageError);
  CHECK(UnderscoredAttribute("date of  birth") == "date_of_birth");
}

TEST_CASE("parse examples") {
  const Table table = {{"Name_ID", "Mary"}, {"occupation", "poet"}};
  CHECK(ParsePlan("Name_ID SEP occupation", table) == Plan{{{R(0)}, {R(1)}}});
  CHECK_THROWS_AS(ParsePlan("<ent> Glasgow", table), ParseError);
  CHECK_THROWS_AS(ParsePlan("Glasgow </ent>", table), ParseError);
  CHECK_THROWS_AS(ParsePlan("<ent> </ent>", table), ParseError);
  CHECK(ParsePlan("Name_ID : Mary <ent> Glasgow Green </ent> SEP occupation : poet",
                  table) ==
        Plan{{{R(0), Ent("Glasgow Green")}, {R(1)}}});
}

TEST_CASE("parse pins duplicate attributes by value") {
  const Table table = {{"Name_ID", "Ann"},
                       {"award received", "Medal"},
                       {"award received", "Gold Medal"}};
  const Plan p{{{R(2), R(0)}, {R(1)}}};
  const std::string body = RenderPlan(p, table, true);
  CHECK(body == "award_received : Gold Medal Name_ID : Ann SEP "
                "award_received : Medal");
  CHECK(ParsePlan(body, table) == p);
}

TEST_CASE("plan JSON round trip") {
  const Instance inst = Fixture("fixture_a.jsonl");
  const Plan p{{{R(0), Ent("Glasgow")}, {R(2)}}};
  CHECK(PlanFromJson(PlanToJson(p), inst.table()) == p);
  CHECK(PlanFromJson(Json("Name_ID SEP occupation"), inst.table()) ==
        Plan{{{R(0)}, {R(2)}}});
  CHECK_THROWS(PlanFromJson(Json::parse("[[7]]"), inst.table()));
}

TEST_CASE("grammar validator") {
  const Table table = {{"Name_ID", "Mary"}, {"occupation", "poet"}};
  CHECK_FALSE(CheckPlanGrammar(Plan{{{R(0)}, {R(0), R(1)}}}, table));
  CHECK(CheckPlanGrammar(Plan{{{R(0)}, {}}}, table));
  CHECK(CheckPlanGrammar(Plan{{{R(1)}, {R(1)}}}, table));
  CHECK(CheckPlanGrammar(Plan{{{R(2)}}}, table));
  CHECK(CheckPlanGrammar(Plan{}, table));
}

TEST_CASE("post-edited random plans obey the grammar and round trip") {
  testing::Generator gen(7);
  for (int i = 0; i < 2000; ++i) {
    const Table table = gen.RandomTable();
    const std::vector<std::string> raw = testing::RandomRawPlan(gen, table);
    const Plan p = PostEditPlan(std::span<const std::string>(raw), table);
    INFO(i);
    CHECK_FALSE(CheckPlanGrammar(p, table));
    CHECK(ParsePlan(RenderPlan(p, table, false), table) == p);
    CHECK(ParsePlan(RenderPlan(p, table, true), table) == p);
  }
}

TEST_CASE("augmented pseudo corpus has no hallucinated entities") {
  testing::Generator gen(11);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = gen.RandomInstance("z" + std::to_string(i));
    const Alignment a = AlignInstance(inst);
    const Plan gold = ExtractGoldPlan(inst, a);
    const Plan aug = AugmentPlan(gold, inst, a);

    for (std::size_t k : a.CoveredRecords()) {
      bool found = false;
      for (const auto &s : gold.sentences) {
        for (const auto &item : s) found |= item.is_record() && item.record() == k;
      }
      CHECK(found);
    }
    std::size_t literals = 0;
    for (const auto &s : aug.sentences) {
      for (const auto &item : s) literals += !item.is_record();
    }
    CHECK(literals == a.HallucinatedCount());

    const Alignment virt =
        AlignRecords(inst, testing::VirtualTable(inst, aug));
    CHECK(virt.HallucinatedCount() == 0);
  }
}

}  // namespace
}  // namespace t2tfaith
