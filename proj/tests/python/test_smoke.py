# Copyright 2026 The t2tfaith Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import pathlib

import pytest

import t2tfaith

FIXTURES = pathlib.Path(
    os.environ.get("T2TFAITH_FIXTURES",
                   pathlib.Path(__file__).resolve().parents[1] / "fixtures"))


def fixture(name):
    return list(t2tfaith.read_jsonl(FIXTURES / name))


def test_instance_round_trip():
    (a,) = fixture("fixture_a.jsonl")
    assert a.id == "fixture-a"
    assert a.table[1] == ("date of birth", "1880")
    assert a.sentences == [(0, 66)]
    assert t2tfaith.Instance(a.to_json()) == a
    assert t2tfaith.Instance(a.to_dict()) == a


def test_fixture_a_metrics():
    (a,) = fixture("fixture_a.jsonl")
    m = t2tfaith.instance_metrics(a)
    assert (m["p_cover"], m["n_hallu"], m["length"]) == (1.0, 1, 14)
    alignment = t2tfaith.align(a)
    assert alignment["covered_records"] == [0, 1, 2]
    assert [e["status"] for e in alignment["entities"]][-1] == "hallucinated"


def test_corpus_metrics():
    c = t2tfaith.corpus_metrics(fixture("corpus_two.jsonl"))
    assert c["P_cover"] == pytest.approx(0.75)
    assert c["R_hallu"] == pytest.approx(0.1)
    with pytest.raises(t2tfaith.EmptyCorpus):
        t2tfaith.corpus_metrics([])


def test_transforms():
    (b,) = fixture("fixture_b.jsonl")
    assert t2tfaith.filter_records(b, 0.0, seed=42) == b
    kept = t2tfaith.filter_records(b, 0.5, seed=42)
    assert [attr for attr, _ in kept.table][-1] == "spouse"
    assert t2tfaith.record_draw(42, "fixture-b", "religion", "Presbyterian",
                                4) == 0.15995082250738368
    (c,) = fixture("fixture_c.jsonl")
    assert t2tfaith.truncate(c, 1).text == "Mary Reid Macarthur was born in 1880."
    with pytest.raises(t2tfaith.UsageError):
        t2tfaith.truncate(c, 0)


def test_selection():
    corpus = fixture("corpus_three.jsonl")
    ranked = t2tfaith.select_top_fraction(corpus, 1.0)
    assert sorted(ranked) == sorted(i.id for i in corpus)
    ids = ["inst-%02d" % i for i in range(20)]
    assert t2tfaith.sample_random_fraction(ids, 1.0, 1)[:5] == [
        "inst-12", "inst-03", "inst-14", "inst-19", "inst-17"]


def test_plans():
    (a,) = fixture("fixture_a.jsonl")
    (c,) = fixture("fixture_c.jsonl")
    assert t2tfaith.gold_plan(c) == [[0, 1], [2]]
    aug = t2tfaith.augmented_plan(a)
    assert aug == [[0, 1, 2, {"ent": "Glasgow"}]]
    assert t2tfaith.render_input(a, "rep", aug).endswith(
        "<plan> Name_ID : Mary Reid Macarthur date_of_birth : 1880 "
        "occupation : trade unionist <ent> Glasgow </ent>")
    assert t2tfaith.render_input(a, "e") == "Mary Reid Macarthur | 1880 | Glasgow"
    plan = t2tfaith.postedit_plan("Name_ID SEP SEP occupation occupation", a)
    assert plan == [[0], [2]]
    assert t2tfaith.check_plan_grammar(plan, a) is None
    assert t2tfaith.parse_plan(t2tfaith.render_plan(plan, a, True), a) == plan
    with pytest.raises(t2tfaith.ParseError):
        t2tfaith.parse_plan("<ent> Glasgow", a)
    with pytest.raises(t2tfaith.UsageError):
        t2tfaith.render_input(a, "rp")


def test_errors_are_typed():
    with pytest.raises(t2tfaith.ParseError):
        t2tfaith.Instance("{not json")
    with pytest.raises(t2tfaith.ValidationError):
        t2tfaith.Instance({"id": "x", "table": [], "text": "a", "entities": []})
    assert issubclass(t2tfaith.ParseError, t2tfaith.Error)
    assert issubclass(t2tfaith.Error, ValueError)


def test_run_pipeline(tmp_path):
    out = tmp_path / "metrics.tsv"
    report = t2tfaith.run("metrics", FIXTURES / "corpus_three.jsonl", out,
                          summary_only=True, workers=2)
    assert report["exit_code"] == 0
    assert report["read"] == 3
    assert "R_hallu\t0.100000" in out.read_text()

    same = tmp_path / "same.jsonl"
    src = FIXTURES / "fixture_b.jsonl"
    t2tfaith.run("filter", src, same, lam=0.0)
    assert same.read_bytes() == src.read_bytes()

    bad = t2tfaith.run("select", src, tmp_path / "x", top_percent=0)
    assert bad["exit_code"] == 2
    with pytest.raises(t2tfaith.UsageError):
        t2tfaith.run("select", src, tmp_path / "x", bogus=1)


def test_serialized_lines_parse():
    (a,) = fixture("fixture_a.jsonl")
    assert json.loads(a.to_json())["sentences"] == [{"start": 0, "end": 66}]


def test_fixtures_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema_path = FIXTURES.parent.parent / "docs" / "instance.schema.json"
    schema = json.loads(schema_path.read_text())
    for path in FIXTURES.glob("*.jsonl"):
        for line in path.read_text().splitlines():
            if line.strip():
                jsonschema.validate(json.loads(line), schema)
                instance = t2tfaith.Instance(line)
                jsonschema.validate(instance.to_dict(), schema)
