"""Scoring inferred specifications against ground-truth files.

Both sides use the same JSON schemas the inference writes.  Alias matching
is either exact (parameter-pair preconditions included) or relaxed (store,
load and target only); data-flow matching counts individual flow and kill
entries.  Ratios whose denominator is zero are reported as None (null in
JSON), never as 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DocParseError

__all__ = ["Metrics", "compare_alias", "compare_dataflow", "load_alias_file", "load_dataflow_file"]


@dataclass(frozen=True)
class Metrics:
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None
    accuracy: float | None

    def to_json_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
        }


def _metrics(tp: int, fp: int, fn: int) -> Metrics:
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    if precision is None or recall is None:
        f1 = None
    elif precision + recall == 0:
        f1 = 0.0
    else:
        f1 = 2 * precision * recall / (precision + recall)
    # Accuracy over set-valued predictions: the negative class is unbounded,
    # so use the Jaccard form tp / (tp + fp + fn).
    accuracy = tp / (tp + fp + fn) if tp + fp + fn else None
    return Metrics(tp, fp, fn, precision, recall, f1, accuracy)


def _score(pred: set, truth: set) -> Metrics:
    tp = len(pred & truth)
    return _metrics(tp, len(pred - truth), len(truth - pred))


def _load_json(path: str | Path) -> dict:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DocParseError(f"{path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise DocParseError(f"{path}: top level is not an object")
    return payload


def load_alias_file(path: str | Path) -> list[dict]:
    payload = _load_json(path)
    specs = payload.get("specs")
    if not isinstance(specs, list):
        raise DocParseError(f'{path}: missing "specs" list')
    for i, s in enumerate(specs):
        if not isinstance(s, dict) or not {"class", "store", "load", "paramPairs", "target"} <= set(s):
            raise DocParseError(f"{path}: spec entry {i} is malformed")
    return specs


def load_dataflow_file(path: str | Path) -> list[dict]:
    payload = _load_json(path)
    summaries = payload.get("summaries")
    if not isinstance(summaries, list):
        raise DocParseError(f'{path}: missing "summaries" list')
    for i, s in enumerate(summaries):
        if not isinstance(s, dict) or not {"class", "method"} <= set(s):
            raise DocParseError(f"{path}: summary entry {i} is malformed")
    return summaries


def _alias_key(spec: dict, mode: str):
    base = (spec["class"], spec["store"], spec["load"], spec["target"])
    if mode == "relaxed":
        return base
    pairs = frozenset((int(a), int(b)) for a, b in spec["paramPairs"])
    return base + (pairs,)


def compare_alias(pred: list[dict], truth: list[dict], mode: str = "exact") -> Metrics:
    """Score predicted alias specifications against the ground truth.

    ``exact`` matches the full tuple including parameter-pair preconditions;
    ``relaxed`` ignores the preconditions, crediting a prediction that found
    the right store/load/target but not the constraints.
    """
    if mode not in ("exact", "relaxed"):
        raise ValueError(f"mode must be 'exact' or 'relaxed', got {mode!r}")
    return _score(
        {_alias_key(s, mode) for s in pred},
        {_alias_key(s, mode) for s in truth},
    )


def _flow_items(summaries: list[dict]) -> set:
    items = set()
    for s in summaries:
        who = (s["class"], s["method"])
        for f in s.get("flows", []):
            items.add(who + ("flow", f["from"], f["to"]))
        for k in s.get("kills", []):
            items.add(who + ("kill", k))
    return items


def compare_dataflow(pred: list[dict], truth: list[dict]) -> Metrics:
    """Score per-method flow and kill entries individually."""
    return _score(_flow_items(pred), _flow_items(truth))
