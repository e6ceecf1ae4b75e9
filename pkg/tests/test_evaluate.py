from __future__ import annotations

import json

import pytest

from specinfer.errors import DocParseError
from specinfer.evaluate import (
    compare_alias,
    compare_dataflow,
    load_alias_file,
    load_dataflow_file,
)


def _spec(store="put(T)", load="get()", pairs=(), target=0, cls="C"):
    return {
        "class": cls,
        "store": store,
        "load": load,
        "paramPairs": [list(p) for p in pairs],
        "target": target,
    }


def test_identical_sets_score_perfectly():
    specs = [_spec(), _spec(store="add(T,U)", target=1)]
    m = compare_alias(specs, specs)
    assert (m.tp, m.fp, m.fn) == (2, 0, 0)
    assert m.precision == m.recall == m.f1 == m.accuracy == 1.0


def test_missing_precondition_relaxed_vs_exact():
    pred = [_spec(pairs=())]
    truth = [_spec(pairs=((0, 0),), target=0)]
    exact = compare_alias(pred, truth, mode="exact")
    relaxed = compare_alias(pred, truth, mode="relaxed")
    assert exact.tp == 0 and exact.fp == 1 and exact.fn == 1
    assert relaxed.tp == 1 and relaxed.fp == 0 and relaxed.fn == 0


def test_empty_prediction_has_null_precision():
    truth = [_spec()]
    m = compare_alias([], truth)
    assert m.recall == 0.0
    assert m.precision is None
    assert m.f1 is None
    assert json.loads(json.dumps(m.to_json_dict()))["precision"] is None


def test_empty_both_sides_all_null():
    m = compare_alias([], [])
    assert (m.tp, m.fp, m.fn) == (0, 0, 0)
    assert m.precision is None and m.recall is None and m.accuracy is None


def test_counts_partition_the_sets():
    pred = [_spec(), _spec(store="a()"), _spec(store="b()")]
    truth = [_spec(), _spec(store="c()")]
    m = compare_alias(pred, truth)
    assert m.tp + m.fp == 3
    assert m.tp + m.fn == 2


def test_duplicates_deduplicated():
    pred = [_spec(), _spec()]
    m = compare_alias(pred, [_spec()])
    assert (m.tp, m.fp, m.fn) == (1, 0, 0)


def test_relaxed_never_scores_less():
    pred = [_spec(pairs=((0, 0),)), _spec(store="s(T)", pairs=((0, 1),), target=0)]
    truth = [_spec(pairs=()), _spec(store="s(T)", pairs=((0, 1),), target=0)]
    exact = compare_alias(pred, truth, mode="exact")
    relaxed = compare_alias(pred, truth, mode="relaxed")
    assert relaxed.tp >= exact.tp


def test_invalid_mode_rejected():
    with pytest.raises(ValueError):
        compare_alias([], [], mode="fuzzy")


def _summary(method="get()", flows=(), kills=(), ops=(), cls="C"):
    return {
        "class": cls,
        "method": method,
        "ops": list(ops),
        "flows": [{"from": a, "to": b} for a, b in flows],
        "kills": list(kills),
    }


def test_dataflow_identical():
    rows = [_summary(flows=[("receiver", "return")], ops=["R"])]
    m = compare_dataflow(rows, rows)
    assert m.f1 == 1.0


def test_dataflow_spurious_param_flow():
    truth = [_summary(flows=[("receiver", "return")])]
    pred = [_summary(flows=[("receiver", "return"), ("param:0", "receiver")])]
    m = compare_dataflow(pred, truth)
    assert m.fp == 1 and m.tp == 1 and m.fn == 0


def test_dataflow_missing_getter_flow():
    truth = [_summary(flows=[("receiver", "return")])]
    pred = [_summary(flows=[])]
    m = compare_dataflow(pred, truth)
    assert m.fn == 1 and m.tp == 0


def test_dataflow_kills_counted():
    truth = [_summary(method="pop()", kills=["receiver"])]
    m = compare_dataflow([_summary(method="pop()")], truth)
    assert m.fn == 1


def test_file_loading(tmp_path):
    alias_path = tmp_path / "a.json"
    alias_path.write_text(json.dumps({"specs": [_spec()]}))
    assert load_alias_file(alias_path)[0]["store"] == "put(T)"

    flow_path = tmp_path / "d.json"
    flow_path.write_text(json.dumps({"summaries": [_summary()]}))
    assert load_dataflow_file(flow_path)[0]["method"] == "get()"


def test_malformed_truth_rejected(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"specs": [{"class": "C"}]}')
    with pytest.raises(DocParseError):
        load_alias_file(bad)
    bad.write_text("not json")
    with pytest.raises(DocParseError):
        load_alias_file(bad)
