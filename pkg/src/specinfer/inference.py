"""Staged per-pair inference of aliasing specifications and data-flow summaries.

For every ordered method pair of a class the engine runs four stages, each
cheaper than the next one it guards:

1. type      -- candidate edges from type consistency; a pair with no
                param->return candidate can never produce a specification,
                so the NLP stages are skipped entirely.
2. units     -- candidate edges filtered by noun-unit agreement of names;
                again, no surviving param->return edge means stop.
3. memop     -- the two descriptions are classified into memory operations;
                the store side must insert (or write without deleting) and
                the load side must read.
4. solved    -- an exact maximum edge selection is converted into the
                aliasing specification (parameter pairs + target index).

Per-method data-flow summaries are derived from whatever memory operations
the staged run computed; the eager mode (``lazy=False``) classifies every
description, which fills the summaries completely but never changes the
emitted specifications.
"""

from __future__ import annotations

import enum
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .docmodel import DocumentationModel, MethodDoc, MethodId
from .graph import ApiValueGraph, CandidateEdge, EdgeKind, build_graph
from .matching import solve_matching
from .memop import ClassifierConfig, MemoryOp, OP_ORDER, SimilarityBackend, abstract_description
from .names import Tagger, edge_unit_ok
from .sentences import SentenceAnalyzer

__all__ = [
    "AliasSpecification",
    "DataFlowSummary",
    "Flow",
    "PairVerdict",
    "Stage",
    "Stats",
    "ClassInferenceResult",
    "InferenceEngine",
    "convert",
    "emit_dataflow",
    "store_side_ok",
    "load_side_ok",
]

RECEIVER = "receiver"
RETURN = "return"


def param_endpoint(index: int) -> str:
    return f"param:{index}"


@dataclass(frozen=True)
class AliasSpecification:
    """Calling ``load`` after ``store`` on one object returns a value aliased
    with ``store``'s target parameter, provided the parameter pairs alias."""

    class_name: str
    store: MethodId
    load: MethodId
    param_pairs: tuple[tuple[int, int], ...]  # sorted ascending by store index
    target: int

    def __post_init__(self):
        n1 = len(self.store.param_types)
        n2 = len(self.load.param_types)
        used1 = [i1 for i1, _ in self.param_pairs] + [self.target]
        used2 = [i2 for _, i2 in self.param_pairs]
        if not 0 <= self.target < n1:
            raise ValueError(f"target {self.target} out of range for {self.store}")
        if any(not (0 <= i1 < n1) for i1 in used1) or any(not (0 <= i2 < n2) for i2 in used2):
            raise ValueError(f"parameter pair out of range in {self.store} -> {self.load}")
        if len(set(used1)) != len(used1) or len(set(used2)) != len(used2):
            raise ValueError(f"repeated parameter index in {self.store} -> {self.load}")
        if list(self.param_pairs) != sorted(self.param_pairs):
            raise ValueError("param_pairs must be sorted by store index")

    def sort_key(self) -> tuple[str, str, str]:
        return (self.class_name, self.store.signature, self.load.signature)


@dataclass(frozen=True)
class Flow:
    src: str
    dst: str


@dataclass(frozen=True)
class DataFlowSummary:
    method: MethodId
    ops: frozenset[MemoryOp]
    flows: tuple[Flow, ...]
    kills: tuple[str, ...]


class Stage(enum.Enum):
    TYPE = "type"
    UNITS = "units"
    MEMOP = "memop"
    SOLVED = "solved"


@dataclass
class PairVerdict:
    m1: MethodId
    m2: MethodId
    stage_reached: Stage
    edges_selected: list[CandidateEdge] = field(default_factory=list)
    spec: AliasSpecification | None = None


@dataclass
class Stats:
    """Cost and pruning counters for one inference run."""

    tagging_invocations: int = 0
    backend_items: int = 0  # (sentence, descriptor) scorings that reached the backend
    pairs_total: int = 0
    pairs_pruned_type: int = 0
    pairs_pruned_units: int = 0
    pairs_pruned_memop: int = 0
    specs_emitted: int = 0
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "taggingInvocations": self.tagging_invocations,
            "backendItems": self.backend_items,
            "pairsTotal": self.pairs_total,
            "prunedType": self.pairs_pruned_type,
            "prunedUnits": self.pairs_pruned_units,
            "prunedMemop": self.pairs_pruned_memop,
            "specs": self.specs_emitted,
            "wallTimeSec": self.wall_time,
        }


@dataclass
class ClassInferenceResult:
    class_name: str
    specs: list[AliasSpecification]
    summaries: list[DataFlowSummary]
    stats: Stats
    errors: list[str] = field(default_factory=list)


def store_side_ok(ops: frozenset[MemoryOp]) -> bool:
    """The store-side gate: inserts, or writes without also deleting."""
    return MemoryOp.INSERT in ops or (MemoryOp.WRITE in ops and MemoryOp.DELETE not in ops)


def load_side_ok(ops: frozenset[MemoryOp]) -> bool:
    return MemoryOp.READ in ops


def convert(verdict: PairVerdict) -> AliasSpecification | None:
    """Turn a solved pair's selected edges into a specification."""
    if verdict.stage_reached is not Stage.SOLVED or not verdict.edges_selected:
        return None
    anchors = [e for e in verdict.edges_selected if e.kind is EdgeKind.PARAM_RETURN]
    pairs = sorted(e.index_pair for e in verdict.edges_selected if e.kind is EdgeKind.PARAM_PARAM)
    if len(anchors) != 1:
        raise ValueError("a solved pair must select exactly one param->return edge")
    return AliasSpecification(
        class_name=anchors[0].src.class_name,
        store=verdict.m1,
        load=verdict.m2,
        param_pairs=tuple(pairs),
        target=anchors[0].src.index,
    )


def emit_dataflow(method: MethodDoc, ops: frozenset[MemoryOp]) -> DataFlowSummary:
    """Fixed mapping from memory operations to gen/kill flows.

    Inserting or writing sends every parameter into the receiver (which
    parameter actually flows is not recoverable from the operations, so this
    over-approximates); reading sends the receiver to a non-void return;
    deleting kills the receiver state.
    """
    flows: list[Flow] = []
    kills: list[str] = []
    if MemoryOp.INSERT in ops or MemoryOp.WRITE in ops:
        flows.extend(Flow(param_endpoint(i), RECEIVER) for i in range(method.arity))
    if MemoryOp.READ in ops and not method.return_type.is_void:
        flows.append(Flow(RECEIVER, RETURN))
    if MemoryOp.DELETE in ops:
        kills.append(RECEIVER)
    return DataFlowSummary(method=method.id, ops=ops, flows=tuple(flows), kills=tuple(kills))


class InferenceEngine:
    """Runs the staged pipeline for one documentation model.

    The tagger, backend, and per-description memo are shared across classes
    and workers; everything else is immutable, so pairs can be processed
    concurrently and sorted afterwards.
    """

    def __init__(
        self,
        model: DocumentationModel,
        tagger: Tagger,
        backend: SimilarityBackend,
        cfg: ClassifierConfig,
        *,
        include_self_pairs: bool = False,
        lazy: bool = True,
        box_primitives: bool = False,
    ):
        self.model = model
        self.tagger = tagger
        self.backend = backend
        self.cfg = cfg
        self.analyzer = SentenceAnalyzer(tagger)
        self.include_self_pairs = include_self_pairs
        self.lazy = lazy
        self.box_primitives = box_primitives
        self._ops_memo: dict[str, frozenset[MemoryOp]] = {}
        self._ops_lock = threading.Lock()

    # -- memory operations -------------------------------------------------

    def method_ops(self, method: MethodDoc) -> frozenset[MemoryOp]:
        """Classify a method's description, memoized per description text."""
        desc = method.description
        with self._ops_lock:
            if desc in self._ops_memo:
                return self._ops_memo[desc]
        ops = abstract_description(self.backend, self.cfg, self.analyzer, desc)
        with self._ops_lock:
            return self._ops_memo.setdefault(desc, ops)

    def known_ops(self, method: MethodDoc) -> frozenset[MemoryOp]:
        """Operations already computed for the method; empty if never needed."""
        with self._ops_lock:
            return self._ops_memo.get(method.description, frozenset())

    # -- per-pair staging ----------------------------------------------------

    def infer_pair(self, graph: ApiValueGraph, m1: MethodId, m2: MethodId) -> PairVerdict:
        doc1 = graph.method(m1)
        doc2 = graph.method(m2)
        if not self.lazy:
            # Eager mode exercises both NLP stages for every pair; the gates
            # below still decide the verdict, so output never changes.
            for doc in (doc1, doc2):
                self.tagger.noun_units(doc.id.method_name)
                for name in doc.param_names:
                    self.tagger.noun_units(name)
            self.method_ops(doc1)
            self.method_ops(doc2)

        candidates = graph.candidate_edges(m1, m2)
        if not any(e.kind is EdgeKind.PARAM_RETURN for e in candidates):
            return PairVerdict(m1, m2, Stage.TYPE)

        surviving = [e for e in candidates if edge_unit_ok(self.tagger, e, m1.method_name)]
        if not any(e.kind is EdgeKind.PARAM_RETURN for e in surviving):
            return PairVerdict(m1, m2, Stage.UNITS)

        ops1 = self.method_ops(doc1)
        ops2 = self.method_ops(doc2)
        if not (store_side_ok(ops1) and load_side_ok(ops2)):
            return PairVerdict(m1, m2, Stage.MEMOP)

        selected = solve_matching(surviving)
        verdict = PairVerdict(m1, m2, Stage.SOLVED, edges_selected=selected)
        verdict.spec = convert(verdict)
        return verdict

    # -- per-class driver ------------------------------------------------------

    def infer_class(self, class_name: str, *, jobs: int = 1) -> ClassInferenceResult:
        started = time.monotonic()
        tagging_before = self.tagger.invocations
        backend_before = getattr(self.backend, "misses", 0)

        graph = build_graph(self.model, class_name, box_primitives=self.box_primitives)
        methods = sorted(graph.universe, key=lambda m: m.id.signature)
        pairs = [
            (a.id, b.id)
            for a in methods
            for b in methods
            if self.include_self_pairs or a.id != b.id
        ]

        stats = Stats(pairs_total=len(pairs))
        errors: list[str] = []
        verdicts: list[PairVerdict] = []

        def run_pair(pair: tuple[MethodId, MethodId]) -> PairVerdict | Exception:
            try:
                return self.infer_pair(graph, *pair)
            except Exception as exc:  # noqa: BLE001 - reported per pair
                return exc

        if jobs > 1 and len(pairs) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(run_pair, pairs))
        else:
            outcomes = [run_pair(p) for p in pairs]

        for pair, outcome in zip(pairs, outcomes):
            if isinstance(outcome, Exception):
                errors.append(f"{pair[0]} -> {pair[1]}: {outcome}")
                continue
            verdicts.append(outcome)
            if outcome.stage_reached is Stage.TYPE:
                stats.pairs_pruned_type += 1
            elif outcome.stage_reached is Stage.UNITS:
                stats.pairs_pruned_units += 1
            elif outcome.stage_reached is Stage.MEMOP:
                stats.pairs_pruned_memop += 1

        specs = sorted(
            (v.spec for v in verdicts if v.spec is not None),
            key=AliasSpecification.sort_key,
        )
        summaries = [emit_dataflow(m, self.known_ops(m)) for m in methods]

        stats.specs_emitted = len(specs)
        stats.tagging_invocations = self.tagger.invocations - tagging_before
        stats.backend_items = getattr(self.backend, "misses", 0) - backend_before
        stats.wall_time = time.monotonic() - started
        return ClassInferenceResult(class_name, specs, summaries, stats, errors)


# -- output serialization ------------------------------------------------------


def specs_to_json_dict(specs: list[AliasSpecification]) -> dict:
    return {
        "specs": [
            {
                "class": s.class_name,
                "store": s.store.signature,
                "load": s.load.signature,
                "paramPairs": [[i1, i2] for i1, i2 in s.param_pairs],
                "target": s.target,
            }
            for s in specs
        ]
    }


def summaries_to_json_dict(summaries: list[DataFlowSummary]) -> dict:
    return {
        "summaries": [
            {
                "class": s.method.class_name,
                "method": s.method.signature,
                "ops": [op.value for op in OP_ORDER if op in s.ops],
                "flows": [{"from": f.src, "to": f.dst} for f in s.flows],
                "kills": list(s.kills),
            }
            for s in summaries
        ]
    }
