import json
from pathlib import Path

import pytest

import parrot_advisor
from parrot_advisor import Advisor, ParrotError

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"


@pytest.fixture(scope="module")
def advisor():
    return Advisor(DATA / "kb", DATA / "rules.json")


def test_cloud_store_gets_use_of_dummies(advisor):
    report = advisor.annotate((DATA / "dfds" / "health_care.json").read_text())
    cloud = next(a for a in report["annotations"] if a["node_id"] == "cloud")
    numbers = {e["pattern"]["number"] for e in cloud["entries"]}
    assert {8, 63} <= numbers
    assert [p["number"] for p in report["global_patterns"]] == [24]


def test_annotate_accepts_dict(advisor):
    report = advisor.annotate({"name": "x", "nodes": [{"id": "p", "kind": "Process"}]})
    assert report["annotations"] == []
    assert report["unmatched_nodes"] == ["p"]


def test_query_and_catalog(advisor):
    rows = advisor.query((DATA / "corpus" / "queries" / "CQ13.rq").read_text())["rows"]
    assert rows
    assert len(advisor.patterns()) == 74
    p2 = advisor.pattern(2)
    assert p2["name"] == "Location Granularity"
    assert p2["tags"] == ["Minimise"]


def test_errors_carry_codes(advisor):
    with pytest.raises(ParrotError) as err:
        advisor.annotate("{}")
    assert err.value.code == "schema_error"
    with pytest.raises(ParrotError) as err:
        advisor.pattern(999)
    assert err.value.code == "unknown_entity"
    with pytest.raises(ParrotError) as err:
        advisor.query("SELECT ?x WHERE { ?x ?p ?o } LIMIT 3")
    assert err.value.code == "unsupported_feature"
    with pytest.raises(ParrotError) as err:
        parrot_advisor.lint("@prefix")
    assert err.value.code == "parse_error"
    assert "line" in err.value.detail


def test_lint_fixture():
    text = (ROOT / "tests" / "fixtures" / "parrot_prefix.ttl").read_text()
    counts = {}
    for f in parrot_advisor.lint(text):
        counts[f["pitfall"]] = counts.get(f["pitfall"], 0) + 1
    assert counts["P19"] == 3
    assert counts["P08"] == 6


def test_cq_stats(advisor):
    stats = advisor.cq_stats(DATA / "corpus" / "corpus.jsonl")
    assert stats["total"] == 81
    assert stats["replay"]["answered"] == 45
    assert stats["regressions"] == []
