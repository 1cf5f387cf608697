"""Weighted-graph model for query-commit matching.

A graph carries edges with existence probabilities in (0, 1].  Edge indices
are dense (0..m-1), assigned in construction order, and stay stable across
residual views, so they double as bitmask positions for memoization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np


class GraphFormatError(ValueError):
    """Raised when an instance file violates the qc-graph format."""


@dataclass(frozen=True, slots=True)
class Scenario:
    """One realization of a graph: the set of edge indices that exist."""

    present: frozenset[int]

    def __contains__(self, eid: int) -> bool:
        return eid in self.present

    def __len__(self) -> int:
        return len(self.present)


@dataclass(frozen=True, slots=True)
class Matching:
    """A set of edge indices, no two sharing an endpoint."""

    edges: frozenset[int]

    def __contains__(self, eid: int) -> bool:
        return eid in self.edges

    def __len__(self) -> int:
        return len(self.edges)


class WeightedGraph:
    """Immutable graph with per-edge existence probabilities.

    Construction rejects self-loops, duplicate endpoint pairs and
    probabilities outside (0, 1].  Isolated nodes are ignored: the node set
    is derived from the edges.
    """

    __slots__ = ("edges", "nodes", "labels", "_incident", "_edge_index")

    def __init__(
        self,
        edges: Iterable[tuple[int, int, float]],
        labels: Mapping[int, str] | None = None,
    ):
        normalized: list[tuple[int, int, float]] = []
        seen: set[tuple[int, int]] = set()
        incident: dict[int, list[int]] = {}
        for u, v, p in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not 0.0 < p <= 1.0:
                raise ValueError(f"edge probability {p} outside (0, 1]")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise ValueError(f"duplicate edge {a}-{b}")
            seen.add((a, b))
            eid = len(normalized)
            normalized.append((a, b, float(p)))
            incident.setdefault(a, []).append(eid)
            incident.setdefault(b, []).append(eid)
        self.edges: tuple[tuple[int, int, float], ...] = tuple(normalized)
        self.nodes: tuple[int, ...] = tuple(sorted(incident))
        node_labels = {}
        if labels:
            node_labels = {u: labels[u] for u in self.nodes if u in labels}
        self.labels: dict[int, str] = node_labels
        self._incident: dict[int, tuple[int, ...]] = {
            u: tuple(eids) for u, eids in incident.items()
        }
        self._edge_index: dict[tuple[int, int], int] = {
            (a, b): i for i, (a, b, _) in enumerate(self.edges)
        }

    # -- basic accessors ----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def endpoints(self, eid: int) -> tuple[int, int]:
        u, v, _ = self.edges[eid]
        return u, v

    def probability(self, eid: int) -> float:
        return self.edges[eid][2]

    def probabilities(self) -> np.ndarray:
        return np.array([p for _, _, p in self.edges], dtype=np.float64)

    def edge_id(self, u: int, v: int) -> int:
        a, b = (u, v) if u < v else (v, u)
        return self._edge_index[(a, b)]

    def incident(self, node: int) -> tuple[int, ...]:
        return self._incident.get(node, ())

    def residual(self) -> "ResidualView":
        return ResidualView(self, frozenset(range(self.num_edges)))

    @property
    def full_mask(self) -> int:
        return (1 << self.num_edges) - 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"WeightedGraph(v={self.num_nodes}, e={self.num_edges})"


class ResidualView:
    """A persistent view of the alive edges over a shared base graph.

    A node is alive iff it has at least one alive incident edge; removal
    operations return new views and never mutate.
    """

    __slots__ = ("base", "alive", "_nodes_cache")

    def __init__(self, base: WeightedGraph, alive: frozenset[int]):
        self.base = base
        self.alive = alive
        self._nodes_cache: frozenset[int] | None = None

    # -- structure ----------------------------------------------------------

    @property
    def mask(self) -> int:
        m = 0
        for e in self.alive:
            m |= 1 << e
        return m

    def is_alive(self, eid: int) -> bool:
        return eid in self.alive

    def alive_nodes(self) -> frozenset[int]:
        if self._nodes_cache is None:
            nodes = set()
            for e in self.alive:
                u, v = self.base.endpoints(e)
                nodes.add(u)
                nodes.add(v)
            self._nodes_cache = frozenset(nodes)
        return self._nodes_cache

    def degree(self, node: int) -> int:
        return sum(1 for e in self.base.incident(node) if e in self.alive)

    def incident_alive(self, node: int) -> Iterator[int]:
        return (e for e in self.base.incident(node) if e in self.alive)

    def num_edges(self) -> int:
        return len(self.alive)

    def num_nodes(self) -> int:
        return len(self.alive_nodes())

    # -- removal algebra ----------------------------------------------------

    def remove_edge(self, eid: int) -> "ResidualView":
        """Residual after an unsuccessful query: drop the edge only."""
        if eid not in self.alive:
            raise ValueError(f"edge {eid} is not alive")
        return ResidualView(self.base, self.alive - {eid})

    def remove_neighborhood(self, eid: int) -> "ResidualView":
        """Residual after a successful query: both endpoints leave the pool.

        The edge neighborhood includes the edge itself.
        """
        if eid not in self.alive:
            raise ValueError(f"edge {eid} is not alive")
        u, v = self.base.endpoints(eid)
        dead = set(self.base.incident(u))
        dead.update(self.base.incident(v))
        return ResidualView(self.base, self.alive - dead)

    def restrict(self, eids: Iterable[int]) -> "ResidualView":
        return ResidualView(self.base, self.alive & frozenset(eids))

    # -- structural queries ---------------------------------------------------

    def pendant_edges(self) -> tuple[int, ...]:
        """Alive edges with a degree-1 endpoint, in edge-index order."""
        out = []
        for e in sorted(self.alive):
            u, v = self.base.endpoints(e)
            if self.degree(u) == 1 or self.degree(v) == 1:
                out.append(e)
        return tuple(out)

    def connected_components(self) -> tuple[frozenset[int], ...]:
        """Partition of the alive edges, ordered by smallest edge index."""
        remaining = set(self.alive)
        comps = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            frontier = [seed]
            while frontier:
                e = frontier.pop()
                u, v = self.base.endpoints(e)
                for node in (u, v):
                    for f in self.base.incident(node):
                        if f in remaining and f not in comp:
                            comp.add(f)
                            frontier.append(f)
            remaining -= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def sparsity_excess(self) -> int:
        """e(G) - v(G) of the alive subgraph."""
        return self.num_edges() - self.num_nodes()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ResidualView)
            and self.base is other.base
            and self.alive == other.alive
        )

    def __hash__(self) -> int:
        return hash((id(self.base), self.alive))

    def __repr__(self) -> str:
        return f"ResidualView(alive={sorted(self.alive)})"


def sparsity_excess(g: WeightedGraph | ResidualView) -> int:
    if isinstance(g, WeightedGraph):
        return g.num_edges - g.num_nodes
    return g.sparsity_excess()


def sample_scenario(g: WeightedGraph, rng: np.random.Generator) -> Scenario:
    """Include each edge independently with its probability."""
    m = g.num_edges
    if m == 0:
        return Scenario(frozenset())
    u = rng.random(m)
    present = frozenset(int(i) for i in np.flatnonzero(u < g.probabilities()))
    return Scenario(present)


def make_matching(g: WeightedGraph, eids: Iterable[int]) -> Matching:
    """Build a matching, rejecting edge sets that share endpoints."""
    used: set[int] = set()
    edges = frozenset(eids)
    for e in edges:
        u, v = g.endpoints(e)
        if u in used or v in used:
            raise ValueError(f"edges share endpoint at edge {e}")
        used.add(u)
        used.add(v)
    return Matching(edges)


# -- qc-graph text format ------------------------------------------------------


def parse_instance(text: str) -> WeightedGraph:
    """Parse the line-oriented qc-graph format.

    Rejects duplicate edges, self-loops, probabilities outside (0, 1] and
    references to nodes outside 0..n-1.  Trailing ``#`` comments and blank
    lines are allowed.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0].split() != ["qc-graph", "1"]:
        raise GraphFormatError("missing 'qc-graph 1' header")
    if len(lines) < 2 or not lines[1].startswith("nodes "):
        raise GraphFormatError("missing 'nodes <n>' line")
    try:
        n = int(lines[1].split()[1])
    except (IndexError, ValueError) as exc:
        raise GraphFormatError("malformed nodes line") from exc
    if n < 0:
        raise GraphFormatError("negative node count")
    edges: list[tuple[int, int, float]] = []
    labels: dict[int, str] = {}
    for lineno, line in enumerate(lines[2:], start=3):
        parts = line.split()
        if parts[0] == "edge" and len(parts) == 4:
            try:
                u, v, p = int(parts[1]), int(parts[2]), float(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: malformed edge") from exc
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: node out of range")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop")
            if not 0.0 < p <= 1.0:
                raise GraphFormatError(f"line {lineno}: probability {p} outside (0, 1]")
            edges.append((u, v, p))
        elif parts[0] == "label" and len(parts) == 3:
            try:
                node = int(parts[1])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: malformed label") from exc
            if not 0 <= node < n:
                raise GraphFormatError(f"line {lineno}: node out of range")
            labels[node] = parts[2]
        else:
            raise GraphFormatError(f"line {lineno}: unrecognized directive {parts[0]!r}")
    try:
        return WeightedGraph(edges, labels=labels)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_instance(g: WeightedGraph, declared_nodes: int | None = None) -> str:
    """Serialize to the qc-graph format (edges in index order)."""
    n = declared_nodes
    if n is None:
        n = max(g.nodes) + 1 if g.nodes else 0
    out = ["qc-graph 1", f"nodes {n}"]
    for u, v, p in g.edges:
        out.append(f"edge {u} {v} {p!r}")
    for node in g.nodes:
        if node in g.labels:
            out.append(f"label {node} {g.labels[node]}")
    return "\n".join(out) + "\n"


def make_rng(*seed_parts: int) -> np.random.Generator:
    """Deterministic generator from a tuple of seed integers.

    Sub-streams for (seed, instance, sample, ...) tuples are independent,
    which keeps parallel sampling reproducible regardless of scheduling.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed_parts)))
