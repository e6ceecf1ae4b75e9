from __future__ import annotations

from pathlib import Path

import pytest

from specinfer.docmodel import DocumentationModel, MethodId, TypeName, load_canonical
from specinfer.graph import ApiValueNode, CandidateEdge
from specinfer.inference import InferenceEngine
from specinfer.memop import ClassifierConfig, LexiconBackend, MemoizedBackend, bundled_verb_table
from specinfer.names import Tagger, bundled_lexicon

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def figure1_path() -> Path:
    return FIXTURES / "figure1.json"


@pytest.fixture(scope="session")
def figure1_model(figure1_path) -> DocumentationModel:
    return load_canonical(figure1_path)


@pytest.fixture()
def tagger() -> Tagger:
    return Tagger(bundled_lexicon())


def make_engine(model: DocumentationModel, **kwargs) -> InferenceEngine:
    """Fresh engine over the bundled lexicon backend; counters start at zero."""
    tagger = Tagger(bundled_lexicon())
    backend = MemoizedBackend(LexiconBackend(bundled_verb_table(), tagger))
    cfg = kwargs.pop("cfg", ClassifierConfig())
    return InferenceEngine(model, tagger, backend, cfg, **kwargs)


@pytest.fixture()
def engine(figure1_model) -> InferenceEngine:
    return make_engine(figure1_model)


def method_by_name(model: DocumentationModel, class_name: str, method_name: str) -> MethodId:
    for m in model.classes[class_name].methods:
        if m.id.method_name == method_name:
            return m.id
    raise KeyError(method_name)


# -- synthetic matching instances ------------------------------------------------


def fake_edge(i1: int, i2: int, class_name: str = "C") -> CandidateEdge:
    """A candidate edge carrying only the indices the solver looks at."""
    m1 = MethodId(class_name, "store", tuple(TypeName("T") for _ in range(max(i1 + 1, 1))))
    m2 = MethodId(class_name, "load", tuple(TypeName("T") for _ in range(max(i2 + 1, 1))))
    src = ApiValueNode(class_name, m1, i1, TypeName("T"), f"a{i1}", "")
    dst = ApiValueNode(class_name, m2, i2, TypeName("T"), "load" if i2 == -1 else f"b{i2}", "")
    return CandidateEdge(src, dst)


def brute_force_best(edges: list[CandidateEdge]) -> int:
    """Exhaustive optimum of the per-pair selection problem.

    Enumerates every edge subset obeying the per-node degree limits and the
    validity rule (param-param edges demand a param-return edge); independent
    of the production solver by construction.
    """
    n = len(edges)
    best = 0

    def rec(i: int, used_out: frozenset, used_in: frozenset, pr: int, pp: int) -> None:
        nonlocal best
        if i == n:
            if pp == 0 or pr > 0:
                best = max(best, pr + pp)
            return
        rec(i + 1, used_out, used_in, pr, pp)
        e = edges[i]
        if e.src.index not in used_out and e.dst.index not in used_in:
            rec(
                i + 1,
                used_out | {e.src.index},
                used_in | {e.dst.index},
                pr + (e.dst.index == -1),
                pp + (e.dst.index != -1),
            )

    rec(0, frozenset(), frozenset(), 0, 0)
    return best


def random_instance(rng) -> list[CandidateEdge]:
    """A random per-pair instance with arities up to 4 and random edge filters."""
    n1 = rng.randint(0, 4)
    n2 = rng.randint(0, 4)
    has_return = rng.random() < 0.8
    density = rng.choice([0.2, 0.4, 0.6, 0.9])
    edges = [
        fake_edge(i1, i2)
        for i1 in range(n1)
        for i2 in range(n2)
        if rng.random() < density
    ]
    if has_return:
        edges.extend(fake_edge(i1, -1) for i1 in range(n1) if rng.random() < density)
    return edges
