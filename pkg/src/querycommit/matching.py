"""Deterministic matching algorithms on general (non-bipartite) graphs.

The heavy lifting is the blossom kernel in ``_blossom``; this module maps
graph-level types onto it and adds the deterministic tie-breaking and the
exhaustive expectation helpers the estimators and exact solver rely on.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

import numpy as np

from ._blossom import build_adjacency, max_weight_mate, mate_to_edges
from .graph import Matching, ResidualView, Scenario, WeightedGraph, make_matching


class _GraphArrays:
    """Contiguous-index arrays for a graph, built once and cached."""

    __slots__ = ("n", "eu", "ev", "p", "adjacency", "node_of", "index_of")

    def __init__(self, g: WeightedGraph):
        self.node_of = list(g.nodes)
        self.index_of = {u: i for i, u in enumerate(self.node_of)}
        self.n = len(self.node_of)
        self.eu = np.array([self.index_of[u] for u, _, _ in g.edges], dtype=np.int32)
        self.ev = np.array([self.index_of[v] for _, v, _ in g.edges], dtype=np.int32)
        self.p = g.probabilities()
        self.adjacency = build_adjacency(self.n, self.eu, self.ev)


_ARRAY_CACHE: dict[int, tuple[WeightedGraph, _GraphArrays]] = {}


def graph_arrays(g: WeightedGraph) -> _GraphArrays:
    hit = _ARRAY_CACHE.get(id(g))
    if hit is not None and hit[0] is g:
        return hit[1]
    arrays = _GraphArrays(g)
    if len(_ARRAY_CACHE) > 256:
        _ARRAY_CACHE.clear()
    _ARRAY_CACHE[id(g)] = (g, arrays)
    return arrays


def _alive_array(r: ResidualView) -> np.ndarray:
    alive = np.zeros(r.base.num_edges, dtype=np.uint8)
    for e in r.alive:
        alive[e] = 1
    return alive


def _kernel_matching(r: ResidualView, weights: np.ndarray) -> list[int]:
    arr = graph_arrays(r.base)
    mate = max_weight_mate(
        arr.n, arr.eu, arr.ev, weights, alive=_alive_array(r), adjacency=arr.adjacency
    )
    return [k for k in mate_to_edges(arr.eu, arr.ev, mate) if k in r.alive]


def max_cardinality_matching(r: ResidualView) -> Matching:
    """A maximum-cardinality matching of the alive subgraph."""
    m = r.base.num_edges
    if not r.alive:
        return Matching(frozenset())
    eids = _kernel_matching(r, np.ones(m, dtype=np.float64))
    return make_matching(r.base, eids)


def max_weight_matching(
    r: ResidualView, weights: Mapping[int, float] | np.ndarray
) -> Matching:
    """Maximum-weight matching; ties go to the lexicographically smallest
    edge-index set.

    Weights must be finite and nonnegative.  Not required to have maximum
    cardinality: zero-weight edges are matched only if the tie-break wants
    them.
    """
    m = r.base.num_edges
    warr = np.zeros(m, dtype=np.float64)
    if isinstance(weights, np.ndarray):
        warr[: len(weights)] = weights
    else:
        for e, w in weights.items():
            warr[e] = w
    for e in r.alive:
        w = warr[e]
        if not math.isfinite(w) or w < 0.0:
            raise ValueError(f"weight {w} for edge {e} is not finite and >= 0")

    base_eids = _kernel_matching(r, warr)
    best = math.fsum(warr[e] for e in base_eids)

    # Lexicographic refinement: grow the smallest index sequence that still
    # reaches the optimal weight.  The cursor only moves forward, so this
    # costs O(m) kernel calls.
    arr = graph_arrays(r.base)
    chosen: list[int] = []
    used_nodes: set[int] = set()
    cursor = 0
    alive_sorted = sorted(r.alive)
    while True:
        prefix_weight = math.fsum(warr[e] for e in chosen)
        if prefix_weight == best:
            break
        progressed = False
        for e in alive_sorted:
            if e < cursor:
                continue
            u, v, _ = r.base.edges[e]
            if u in used_nodes or v in used_nodes:
                continue
            sub_alive = np.zeros(m, dtype=np.uint8)
            for f in r.alive:
                if f > e:
                    fu, fv, _ = r.base.edges[f]
                    if (
                        fu not in used_nodes
                        and fv not in used_nodes
                        and fu != u
                        and fv != v
                        and fu != v
                        and fv != u
                    ):
                        sub_alive[f] = 1
            mate = max_weight_mate(
                arr.n, arr.eu, arr.ev, warr, alive=sub_alive, adjacency=arr.adjacency
            )
            rest = [k for k in mate_to_edges(arr.eu, arr.ev, mate) if sub_alive[k]]
            total = math.fsum([prefix_weight, warr[e]] + [warr[f] for f in rest])
            if total == best:
                chosen.append(e)
                used_nodes.add(u)
                used_nodes.add(v)
                cursor = e + 1
                progressed = True
                break
        if not progressed:
            # float noise in the kernel optimum; fall back to its matching
            return make_matching(r.base, base_eids)
    return make_matching(r.base, chosen)


def is_maximal_in(m: Matching, s: Scenario, g: WeightedGraph) -> bool:
    """True iff no scenario edge can extend the matching."""
    used: set[int] = set()
    for e in m.edges:
        u, v = g.endpoints(e)
        used.add(u)
        used.add(v)
    for e in s.present:
        if e in m.edges:
            continue
        u, v = g.endpoints(e)
        if u not in used and v not in used:
            return False
    return True


def mu_of_mask(g: WeightedGraph) -> Callable[[int], int]:
    """Memoized maximum-matching size over edge-subset bitmasks."""
    edges = g.edges
    touching = []
    for u, v, _ in edges:
        mask = 0
        for j, (a, b, _) in enumerate(edges):
            if a in (u, v) or b in (u, v):
                mask |= 1 << j
        touching.append(mask)
    memo: dict[int, int] = {0: 0}

    def mu(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        e = (mask & -mask).bit_length() - 1
        value = max(mu(mask & ~(1 << e)), 1 + mu(mask & ~touching[e]))
        memo[mask] = value
        return value

    return mu


def expected_max_matching_exact(g: WeightedGraph, max_edges: int = 20) -> float:
    """E[mu(sigma)] by exhaustive scenario enumeration (small graphs only)."""
    m = g.num_edges
    if m > max_edges:
        raise ValueError(f"{m} edges exceeds the exhaustive cap of {max_edges}")
    if m == 0:
        return 0.0
    p = [g.probability(e) for e in range(m)]
    mu = mu_of_mask(g)
    total = 0.0
    terms = []
    for mask in range(1 << m):
        prob = 1.0
        for e in range(m):
            prob *= p[e] if (mask >> e) & 1 else 1.0 - p[e]
        terms.append(prob * mu(mask))
    total = math.fsum(terms)
    return total


def mu_value(g: WeightedGraph) -> int:
    """mu(G): maximum-matching size of the full graph."""
    return len(max_cardinality_matching(g.residual()))
