"""Exact solver for the per-pair edge selection problem.

Given the surviving candidate edges of one ordered method pair, pick the
largest edge set in which every value appears at most once per direction and
at least one edge reaches the return value (otherwise no aliasing
specification exists and the empty set wins).  Because at most one edge may
enter the return node, the optimum decomposes: fix one param->return anchor,
then take a maximum bipartite matching over the param->param edges that
avoid the anchor's source.

Instances are tiny (method arities), so a plain augmenting-path matching is
plenty; determinism is the requirement here, not speed.  Ties break toward
the smallest anchor source index, then the lexicographically smallest list
of matched index pairs.
"""

from __future__ import annotations

from .graph import CandidateEdge, EdgeKind

__all__ = ["max_bipartite_matching", "solve_matching"]


def max_bipartite_matching(pairs: list[tuple[int, int]]) -> dict[int, int]:
    """Maximum matching over (left, right) index pairs, Kuhn's algorithm.

    Deterministic: left nodes and adjacency are processed in sorted order.
    Returns {left: right} for the matched pairs.
    """
    adj: dict[int, list[int]] = {}
    for left, right in pairs:
        adj.setdefault(left, []).append(right)
    for neighbors in adj.values():
        neighbors.sort()
    match_right: dict[int, int] = {}

    def try_augment(left: int, visited: set[int]) -> bool:
        for right in adj[left]:
            if right in visited:
                continue
            visited.add(right)
            if right not in match_right or try_augment(match_right[right], visited):
                match_right[right] = left
                return True
        return False

    for left in sorted(adj):
        try_augment(left, set())
    return {left: right for right, left in match_right.items()}


def _lex_smallest_max_matching(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """The lexicographically smallest maximum matching over the pairs."""
    remaining = sorted(set(pairs))
    target = len(max_bipartite_matching(remaining))
    chosen: list[tuple[int, int]] = []
    while target > 0:
        for cand in remaining:
            rest = [p for p in remaining if p != cand and p[0] != cand[0] and p[1] != cand[1]]
            if len(max_bipartite_matching(rest)) >= target - 1:
                chosen.append(cand)
                remaining = rest
                target -= 1
                break
        else:  # pragma: no cover - cannot happen: some edge always extends
            break
    return chosen


def solve_matching(edges: list[CandidateEdge]) -> list[CandidateEdge]:
    """Largest valid edge set for one ordered pair; empty if no anchor exists."""
    anchors = sorted(
        (e for e in edges if e.kind is EdgeKind.PARAM_RETURN),
        key=lambda e: e.src.index,
    )
    if not anchors:
        return []
    pp_edges = [e for e in edges if e.kind is EdgeKind.PARAM_PARAM]
    by_pair = {e.index_pair: e for e in pp_edges}

    best_key: tuple[int, int, tuple[tuple[int, int], ...]] | None = None
    best: list[CandidateEdge] = []
    for anchor in anchors:
        available = [e.index_pair for e in pp_edges if e.src.index != anchor.src.index]
        matched = _lex_smallest_max_matching(available)
        key = (-(1 + len(matched)), anchor.src.index, tuple(sorted(matched)))
        if best_key is None or key < best_key:
            best_key = key
            best = [anchor] + [by_pair[p] for p in sorted(matched)]
    return best
