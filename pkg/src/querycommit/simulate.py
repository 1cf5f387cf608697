"""Strategy interface, run engine, and the querying-strategy catalog.

A strategy names the next permissible edge to query, or stops.  The engine
owns the query-commit dynamics: a successful query commits both endpoints
(the whole edge neighborhood leaves the residual graph), a failed query
removes just the edge.

This is the readable reference tier; ``_fastsim`` reimplements the catalog
over flat arrays for Monte-Carlo scale and is property-tested to produce
identical runs.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from .graph import (
    Matching,
    ResidualView,
    Scenario,
    WeightedGraph,
    make_matching,
)
from .matching import _kernel_matching, graph_arrays

ABO_ORDER = ("O", "A", "B", "AB")

HEURISTIC_NAMES = (
    "maxP",
    "minP",
    "minDeg",
    "minAvgDeg",
    "batchSM",
    "batchWSM",
    "SWMq",
    "SWMp",
)


class StrategyError(ValueError):
    """A strategy violated its contract (dead or repeated edge)."""


@dataclass(frozen=True)
class RunResult:
    matching: Matching
    history: tuple[tuple[int, bool], ...]
    scenario: Scenario | None


class Strategy:
    """Base interface.  Implementations may keep per-run mutable state; the
    engine calls reset() at the start of every run."""

    def reset(self, residual: ResidualView) -> None:
        pass

    def next_query(self, residual: ResidualView, history) -> int | None:
        raise NotImplementedError

    def clone(self) -> "Strategy":
        return copy.deepcopy(self)


def run(g: WeightedGraph, s: Strategy, scenario: Scenario) -> RunResult:
    """Execute a strategy against a pre-sampled scenario."""
    if not scenario.present <= frozenset(range(g.num_edges)):
        raise ValueError("scenario contains unknown edges")
    residual = g.residual()
    s.reset(residual)
    history: list[tuple[int, bool]] = []
    matched: list[int] = []
    while residual.alive:
        e = s.next_query(residual, history)
        if e is None:
            break
        if e not in residual.alive:
            raise StrategyError(f"strategy returned dead or repeated edge {e}")
        if e in scenario.present:
            matched.append(e)
            history.append((e, True))
            residual = residual.remove_neighborhood(e)
        else:
            history.append((e, False))
            residual = residual.remove_edge(e)
    return RunResult(make_matching(g, matched), tuple(history), scenario)


def run_lazy(g: WeightedGraph, s: Strategy, rng: np.random.Generator) -> RunResult:
    """Sample edge existence at first query; unqueried edges are never drawn.

    Distributionally identical to run() on a freshly sampled scenario, by
    edge independence.
    """
    residual = g.residual()
    s.reset(residual)
    history: list[tuple[int, bool]] = []
    matched: list[int] = []
    while residual.alive:
        e = s.next_query(residual, history)
        if e is None:
            break
        if e not in residual.alive:
            raise StrategyError(f"strategy returned dead or repeated edge {e}")
        if rng.random() < g.probability(e):
            matched.append(e)
            history.append((e, True))
            residual = residual.remove_neighborhood(e)
        else:
            history.append((e, False))
            residual = residual.remove_edge(e)
    return RunResult(make_matching(g, matched), tuple(history), None)


# -- pendant-first wrapper ----------------------------------------------------


class PendantFirst(Strategy):
    """Query the lowest-index pendant edge whenever one exists, else defer.

    Safe by the structural property that some optimal strategy starts with
    any pendant edge; all catalog heuristics are wrapped in it.
    """

    def __init__(self, inner: Strategy):
        self.inner = inner

    def reset(self, residual: ResidualView) -> None:
        self.inner.reset(residual)

    def next_query(self, residual, history):
        pend = residual.pendant_edges()
        if pend:
            return pend[0]
        return self.inner.next_query(residual, history)


def pendant_first(inner: Strategy) -> Strategy:
    return PendantFirst(inner)


# -- greedy cores ---------------------------------------------------------------


class _StaticProbability(Strategy):
    """maxP / minP core: pick the alive edge with extreme probability."""

    def __init__(self, descending: bool):
        self.descending = descending

    def next_query(self, residual, history):
        base = residual.base
        best = None
        best_key = None
        for e in sorted(residual.alive):
            p = base.probability(e)
            key = -p if self.descending else p
            if best_key is None or key < best_key:
                best_key = key
                best = e
        return best


class _MinDegree(Strategy):
    """Edge degree = sum of endpoint degrees in the residual graph."""

    def next_query(self, residual, history):
        deg: dict[int, int] = {}
        base = residual.base
        for e in residual.alive:
            u, v = base.endpoints(e)
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        best = None
        best_key = None
        for e in sorted(residual.alive):
            u, v = base.endpoints(e)
            key = deg[u] + deg[v]
            if best_key is None or key < best_key:
                best_key = key
                best = e
        return best


class _MinWeightedDegree(Strategy):
    """Average degree of (u, v): total incident probability mass at u plus v.

    Weighted degrees are accumulated in static incident-list order so the
    flat-array engine reproduces bit-identical float keys.
    """

    def next_query(self, residual, history):
        base = residual.base
        wdeg: dict[int, float] = {}
        for node in residual.alive_nodes():
            acc = 0.0
            for e in base.incident(node):
                if e in residual.alive:
                    acc += base.probability(e)
            wdeg[node] = acc
        best = None
        best_key = None
        for e in sorted(residual.alive):
            u, v = base.endpoints(e)
            key = wdeg[u] + wdeg[v]
            if best_key is None or key < best_key:
                best_key = key
                best = e
        return best


def _strategy_weights(g: WeightedGraph, mode: str) -> np.ndarray:
    p = g.probabilities()
    if mode == "unit":
        return np.ones(g.num_edges, dtype=np.float64)
    if mode == "one_minus_p":
        return 1.0 - p
    if mode == "p":
        return p.copy()
    raise ValueError(mode)


class _BatchMatching(Strategy):
    """Compute a matching, query all its edges, recompute when exhausted.

    Queue entries that died since the batch was computed are skipped.  If the
    matching comes back empty while edges remain (possible with zero weights),
    fall back to the lowest-index alive edge so the strategy never stops
    early.
    """

    def __init__(self, weight_mode: str):
        self.weight_mode = weight_mode
        self.queue: list[int] = []

    def reset(self, residual: ResidualView) -> None:
        self.queue = []

    def next_query(self, residual, history):
        while self.queue:
            e = self.queue.pop(0)
            if e in residual.alive:
                return e
        weights = _strategy_weights(residual.base, self.weight_mode)
        batch = sorted(_kernel_matching(residual, weights))
        if not batch:
            return min(residual.alive)
        self.queue = batch[1:]
        return batch[0]


class _StepwiseMatching(Strategy):
    """Recompute the weighted matching every step; query its lowest edge."""

    def __init__(self, weight_mode: str):
        self.weight_mode = weight_mode

    def next_query(self, residual, history):
        weights = _strategy_weights(residual.base, self.weight_mode)
        batch = _kernel_matching(residual, weights)
        if not batch:
            return min(residual.alive)
        return min(batch)


def heuristic(name: str) -> Strategy:
    """Construct one of the catalog heuristics (pendant-first wrapped)."""
    cores = {
        "maxP": lambda: _StaticProbability(descending=True),
        "minP": lambda: _StaticProbability(descending=False),
        "minDeg": _MinDegree,
        "minAvgDeg": _MinWeightedDegree,
        "batchSM": lambda: _BatchMatching("unit"),
        "batchWSM": lambda: _BatchMatching("one_minus_p"),
        "SWMq": lambda: _StepwiseMatching("one_minus_p"),
        "SWMp": lambda: _StepwiseMatching("p"),
    }
    if name not in cores:
        raise ValueError(f"unknown strategy {name!r}; valid: {', '.join(HEURISTIC_NAMES)}")
    return PendantFirst(cores[name]())


# -- fixed-order strategies -----------------------------------------------------


class StaticOrder(Strategy):
    """Query a fixed edge sequence, skipping dead edges; stop at the end."""

    def __init__(self, sequence):
        self.sequence = tuple(sequence)
        self.pos = 0

    def reset(self, residual: ResidualView) -> None:
        self.pos = 0

    def next_query(self, residual, history):
        while self.pos < len(self.sequence):
            e = self.sequence[self.pos]
            self.pos += 1
            if e in residual.alive:
                return e
        return None


def _bipartite_order(g: WeightedGraph, u_class, v_class) -> list[int]:
    """Edges of each U node in turn, last U node first, V ascending."""
    order = []
    for u in reversed(list(u_class)):
        for v in sorted(v_class):
            order.append(g.edge_id(u, v))
    return order


def bipartite_sequential(g: WeightedGraph, order) -> Strategy:
    """The sequential strategy for a complete bipartite graph.

    ``order`` lists one vertex class (U); the strategy queries the surviving
    edges of the last U node, then the next-to-last, and so on.  Rejects
    graphs that are not complete bipartite over (U, rest).
    """
    u_class = list(order)
    u_set = set(u_class)
    if len(u_set) != len(u_class):
        raise ValueError("duplicate nodes in order")
    v_class = sorted(set(g.nodes) - u_set)
    for u, v, _ in g.edges:
        if (u in u_set) == (v in u_set):
            raise ValueError("graph is not bipartite over the given classes")
    for u in u_class:
        for v in v_class:
            try:
                g.edge_id(u, v)
            except KeyError:
                raise ValueError(f"missing edge {u}-{v}: graph not complete bipartite")
    return StaticOrder(_bipartite_order(g, u_class, v_class))


def clique_strategy(g: WeightedGraph) -> Strategy:
    """Strategy for a complete graph: split the nodes into two equal classes
    (by node index, dropping the odd node out) and play the bipartite
    sequential strategy on the induced complete bipartite subgraph."""
    nodes = list(g.nodes)
    k = len(nodes)
    for i, u in enumerate(nodes):
        for v in nodes[i + 1 :]:
            try:
                g.edge_id(u, v)
            except KeyError:
                raise ValueError(f"missing edge {u}-{v}: graph not complete")
    half = k // 2
    u_class = nodes[:half]
    v_class = nodes[half : 2 * half]
    return StaticOrder(_bipartite_order(g, u_class, v_class))


def _parse_label(label: str) -> tuple[str, str]:
    parts = label.split("/")
    if len(parts) != 2 or parts[0] not in ABO_ORDER or parts[1] not in ABO_ORDER:
        raise ValueError(f"bad blood-type label {label!r}")
    return parts[0], parts[1]


def blood_type_decomposition(g: WeightedGraph) -> Strategy:
    """Compose per-blood-type strategies over a labeled kidney instance.

    Nodes with patient/donor types i/j and j/i form a complete bipartite
    block; same-type i/i nodes form a clique.  The blocks are played
    sequentially in a fixed blood-type order; edges that cross blocks or
    touch trimmed surplus nodes are never queried.
    """
    groups: dict[tuple[str, str], list[int]] = {}
    for node in g.nodes:
        if node not in g.labels:
            raise ValueError(f"node {node} has no blood-type label")
        groups.setdefault(_parse_label(g.labels[node]), []).append(node)

    def check_edge(u, v, what):
        try:
            g.edge_id(u, v)
        except KeyError:
            raise ValueError(f"missing edge {u}-{v} in {what}: model violation")

    sequence: list[int] = []
    for ia, a in enumerate(ABO_ORDER):
        for b in ABO_ORDER[ia:]:
            if a == b:
                members = sorted(groups.get((a, a), ()))
                if len(members) < 2:
                    continue
                for i, u in enumerate(members):
                    for v in members[i + 1 :]:
                        check_edge(u, v, f"clique {a}/{a}")
                half = len(members) // 2
                sequence.extend(
                    _bipartite_order(g, members[:half], members[half : 2 * half])
                )
            else:
                left = sorted(groups.get((a, b), ()))
                right = sorted(groups.get((b, a), ()))
                size = min(len(left), len(right))
                if size == 0:
                    continue
                left, right = left[:size], right[:size]
                for u in left:
                    for v in right:
                        check_edge(u, v, f"block {a}/{b}")
                sequence.extend(_bipartite_order(g, left, right))
    return StaticOrder(sequence)


def strategy_by_name(name: str, g: WeightedGraph) -> Strategy:
    """Catalog lookup used by the CLI (includes bloodDecomp)."""
    if name == "bloodDecomp":
        return blood_type_decomposition(g)
    return heuristic(name)
