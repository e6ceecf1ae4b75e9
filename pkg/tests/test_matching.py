from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from specinfer.matching import max_bipartite_matching, solve_matching

from .conftest import brute_force_best, fake_edge, random_instance


def test_pairs_with_anchor_selected():
    edges = [fake_edge(0, 0), fake_edge(1, -1)]
    selected = solve_matching(edges)
    assert {e.index_pair for e in selected} == {(0, 0), (1, -1)}


def test_empty_instance():
    assert solve_matching([]) == []


def test_param_param_only_is_invalid():
    # Without a param->return edge no aliasing spec exists; best set is empty.
    edges = [fake_edge(0, 0), fake_edge(1, 1)]
    assert solve_matching(edges) == []


def test_anchor_frees_conflicting_param():
    # Param 0 can either anchor the return or match param 0; anchoring plus
    # letting param 1 take the param-param edge is strictly larger.
    edges = [fake_edge(0, -1), fake_edge(0, 0), fake_edge(1, 0)]
    selected = solve_matching(edges)
    assert {e.index_pair for e in selected} == {(0, -1), (1, 0)}


def test_tie_breaks_smallest_anchor():
    edges = [fake_edge(1, -1), fake_edge(0, -1)]
    selected = solve_matching(edges)
    assert [e.index_pair for e in selected] == [(0, -1)]


def test_tie_breaks_lexicographic_pairs():
    # Anchor at 2; params 0 and 1 can each match either column: the (0,0),(1,1)
    # matching is the lexicographically smallest maximum.
    edges = [
        fake_edge(2, -1),
        fake_edge(0, 0), fake_edge(0, 1),
        fake_edge(1, 0), fake_edge(1, 1),
    ]
    selected = solve_matching(edges)
    assert sorted(e.index_pair for e in selected if e.dst.index != -1) == [(0, 0), (1, 1)]


def test_max_bipartite_matching_simple():
    assert max_bipartite_matching([(0, 0), (0, 1), (1, 0)]) == {0: 1, 1: 0}
    assert max_bipartite_matching([]) == {}


def test_max_bipartite_matching_augments():
    # Greedy would match (0,0) and strand 1; augmenting paths recover both.
    pairs = [(0, 0), (1, 0), (1, 1), (2, 1)]
    assert len(max_bipartite_matching(pairs)) == 2


def test_oracle_equivalence_randomized():
    rng = random.Random(20240901)
    for _ in range(150):
        edges = random_instance(rng)
        assert len(solve_matching(edges)) == brute_force_best(edges), [
            e.index_pair for e in edges
        ]


@st.composite
def _instances(draw):
    n1 = draw(st.integers(0, 4))
    n2 = draw(st.integers(0, 4))
    pp = draw(
        st.lists(
            st.tuples(st.integers(0, max(n1 - 1, 0)), st.integers(0, max(n2 - 1, 0))),
            max_size=10,
            unique=True,
        )
    ) if n1 and n2 else []
    pr = draw(st.lists(st.integers(0, max(n1 - 1, 0)), max_size=4, unique=True)) if n1 else []
    return [fake_edge(i1, i2) for i1, i2 in pp] + [fake_edge(i1, -1) for i1 in pr]


@settings(max_examples=120, deadline=None)
@given(edges=_instances())
def test_oracle_equivalence_property(edges):
    selected = solve_matching(edges)
    assert len(selected) == brute_force_best(edges)
    # Selected set itself satisfies the constraints it optimizes.
    outs = [e.src.index for e in selected]
    ins = [e.dst.index for e in selected]
    assert len(set(outs)) == len(outs)
    assert len(set(ins)) == len(ins)
    if any(e.dst.index != -1 for e in selected):
        assert any(e.dst.index == -1 for e in selected)


def test_deterministic():
    rng = random.Random(7)
    for _ in range(25):
        edges = random_instance(rng)
        first = [e.index_pair for e in solve_matching(edges)]
        second = [e.index_pair for e in solve_matching(list(reversed(edges)))]
        assert first == second
