"""Exact policy machinery: decision trees, a brute-force optimum oracle, and
the polynomial-time optimal solver for d-sparse graphs.

The solver pipeline: query pendant edges while any exist (safe: some optimal
strategy starts with any pendant edge), then split the pendant-free residual
into components; a pure cycle is solved by maximizing over first edges, and
anything else through its degree->=3 decomposition, where the only root moves
worth considering are single queries of edges incident to V>=3 and path-sweep
strategies S(H, e).  Sweep continuations are pendant queries, so one pendant
rule drives the whole policy at run time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import ResidualView, WeightedGraph
from .simulate import StaticOrder, Strategy

DEFAULT_OPT_EDGE_CAP = 18
DEFAULT_MEMO_LIMIT = 4__000_000


class MemoLimitError(RuntimeError):
    """The exact evaluator exceeded its configured residual-cache budget."""


class CycleGraphError(ValueError):
    """The graph is a single cycle; the V>=3 decomposition does not apply."""


# -- decision trees -------------------------------------------------------------


@dataclass(frozen=True)
class DecisionTree:
    """Binary policy: query `edge`; go `yes` on success, `no` on failure."""

    edge: int | None
    yes: "DecisionTree | None" = None
    no: "DecisionTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.edge is None


LEAF = DecisionTree(None)


def _kill_masks(g: WeightedGraph) -> list[int]:
    masks = []
    for u, v, _ in g.edges:
        mask = 0
        for e in g.incident(u):
            mask |= 1 << e
        for e in g.incident(v):
            mask |= 1 << e
        masks.append(mask)
    return masks


def evaluate_tree(t: DecisionTree, g: WeightedGraph) -> float:
    """Expected matching size of a decision tree:
    p_e (1 + E_yes) + (1 - p_e) E_no, recursively."""
    kill = _kill_masks(g)

    def rec(node: DecisionTree, mask: int) -> float:
        if node.is_leaf:
            return 0.0
        e = node.edge
        if not (mask >> e) & 1:
            raise ValueError(f"tree queries edge {e} outside its residual graph")
        if node.yes is None or node.no is None:
            raise ValueError("internal node missing children")
        p = g.probability(e)
        return p * (1.0 + rec(node.yes, mask & ~kill[e])) + (1.0 - p) * rec(
            node.no, mask & ~(1 << e)
        )

    return rec(t, g.full_mask)


def format_tree(t: DecisionTree, g: WeightedGraph) -> str:
    """Indented text dump (yes: / no: children)."""
    lines: list[str] = []

    def rec(node: DecisionTree, prefix: str, indent: int):
        pad = "  " * indent
        if node.is_leaf:
            lines.append(f"{pad}{prefix}stop")
            return
        u, v = g.endpoints(node.edge)
        p = g.probability(node.edge)
        lines.append(f"{pad}{prefix}query {u}-{v} p={p:g}")
        rec(node.yes, "yes: ", indent + 1)
        rec(node.no, "no: ", indent + 1)

    rec(t, "", 0)
    return "\n".join(lines) + "\n"


# -- brute-force optimum --------------------------------------------------------


class _OptOracle:
    def __init__(self, g: WeightedGraph, memo_limit: int):
        self.g = g
        self.kill = _kill_masks(g)
        self.memo: dict[int, float] = {0: 0.0}
        self.memo_limit = memo_limit

    def value(self, mask: int) -> float:
        got = self.memo.get(mask)
        if got is not None:
            return got
        if len(self.memo) >= self.memo_limit:
            raise MemoLimitError(f"residual cache exceeded {self.memo_limit} entries")
        best = 0.0
        rest = mask
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            p = self.g.probability(e)
            val = p * (1.0 + self.value(mask & ~self.kill[e])) + (1.0 - p) * self.value(
                mask & ~(1 << e)
            )
            if val > best:
                best = val
        self.memo[mask] = best
        return best

    def tree(self, mask: int) -> DecisionTree:
        if mask == 0:
            return LEAF
        target = self.value(mask)
        rest = mask
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            p = self.g.probability(e)
            yes_mask = mask & ~self.kill[e]
            no_mask = mask & ~(1 << e)
            val = p * (1.0 + self.value(yes_mask)) + (1.0 - p) * self.value(no_mask)
            if val == target:
                return DecisionTree(e, self.tree(yes_mask), self.tree(no_mask))
        raise AssertionError("no edge reproduces the memoized optimum")


def _check_cap(g: WeightedGraph, max_edges: int):
    if g.num_edges > max_edges:
        raise ValueError(
            f"{g.num_edges} edges exceeds the brute-force cap of {max_edges}"
        )


def opt_value(
    g: WeightedGraph,
    max_edges: int = DEFAULT_OPT_EDGE_CAP,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> float:
    """OPT(G) by memoized Bellman recursion over alive-edge bitmasks."""
    _check_cap(g, max_edges)
    return _OptOracle(g, memo_limit).value(g.full_mask)


def opt_strategy(
    g: WeightedGraph,
    max_edges: int = DEFAULT_OPT_EDGE_CAP,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> DecisionTree:
    """An optimal decision tree (lowest-index tie-breaking)."""
    _check_cap(g, max_edges)
    return _OptOracle(g, memo_limit).tree(g.full_mask)


# -- strategy -> decision tree ----------------------------------------------------


def strategy_tree(g: WeightedGraph, s: Strategy, max_nodes: int = 200_000) -> DecisionTree:
    """The decision tree a strategy induces on g (replayed over all branches)."""
    budget = [max_nodes]

    def rec(state: Strategy, residual: ResidualView, history: tuple) -> DecisionTree:
        if not residual.alive:
            return LEAF
        e = state.next_query(residual, list(history))
        if e is None:
            return LEAF
        if e not in residual.alive:
            raise ValueError(f"strategy returned dead edge {e}")
        budget[0] -= 1
        if budget[0] < 0:
            raise MemoLimitError("induced decision tree exceeds the node budget")
        yes_state = state.clone()
        yes = rec(yes_state, residual.remove_neighborhood(e), history + ((e, True),))
        no = rec(state, residual.remove_edge(e), history + ((e, False),))
        return DecisionTree(e, yes, no)

    root = s.clone()
    root.reset(g.residual())
    return rec(root, g.residual(), ())


def strategy_value_exact(g: WeightedGraph, s: Strategy) -> float:
    """Exact expected matching size of a strategy via its induced tree."""
    return evaluate_tree(strategy_tree(g, s), g)


# -- sparse decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class PathInfo:
    """An oriented path component of G minus V>=3: nodes u_1..u_{q+1}."""

    nodes: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class SparseDecomposition:
    v_ge3: frozenset[int]
    paths: tuple[PathInfo, ...]
    incident_edges: frozenset[int]
    d: int


def _as_view(g: WeightedGraph | ResidualView) -> ResidualView:
    return g.residual() if isinstance(g, WeightedGraph) else g


def decompose(g: WeightedGraph | ResidualView, d: int) -> SparseDecomposition:
    """V>=3 / path decomposition of a connected pendant-free graph.

    Rejects graphs with pendant edges or sparsity excess above d.  A pure
    cycle (V>=3 empty) raises CycleGraphError; callers treat it separately.
    """
    view = _as_view(g)
    if len(view.connected_components()) != 1:
        raise ValueError("decompose expects a connected graph")
    if view.pendant_edges():
        raise ValueError("decompose expects a pendant-free graph")
    excess = view.sparsity_excess()
    if excess > d:
        raise ValueError(f"sparsity excess {excess} exceeds d={d}")
    base = view.base
    degrees = {u: view.degree(u) for u in view.alive_nodes()}
    v_ge3 = frozenset(u for u, deg in degrees.items() if deg >= 3)
    if not v_ge3:
        raise CycleGraphError("graph is a single cycle; no degree->=3 nodes")

    incident = frozenset(
        e for e in view.alive if set(base.endpoints(e)) & v_ge3
    )
    # components of the graph induced on V \ V>=3
    rest_nodes = set(degrees) - v_ge3
    rest_adj: dict[int, list[tuple[int, int]]] = {u: [] for u in rest_nodes}
    for e in sorted(view.alive):
        u, v = base.endpoints(e)
        if u in rest_nodes and v in rest_nodes:
            rest_adj[u].append((v, e))
            rest_adj[v].append((u, e))
    paths: list[PathInfo] = []
    seen: set[int] = set()
    for start in sorted(rest_nodes):
        if start in seen:
            continue
        comp_nodes = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y, _ in rest_adj[x]:
                if y not in comp_nodes:
                    comp_nodes.add(y)
                    frontier.append(y)
        seen |= comp_nodes
        ends = sorted(u for u in comp_nodes if len(rest_adj[u]) <= 1)
        if not ends:
            raise RuntimeError("cycle component off V>=3; input cannot be pendant-free")
        head = ends[0]
        nodes = [head]
        edges: list[int] = []
        prev = -1
        cur = head
        while True:
            nxt = [(y, e) for y, e in rest_adj[cur] if y != prev]
            if not nxt:
                break
            y, e = nxt[0]
            nodes.append(y)
            edges.append(e)
            prev, cur = cur, y
        if len(nodes) != len(comp_nodes):
            raise RuntimeError("non-path component off V>=3")
        paths.append(PathInfo(tuple(nodes), tuple(edges)))

    dec = SparseDecomposition(v_ge3, tuple(paths), incident, excess)
    if len(v_ge3) > 2 * d or len(incident) > 6 * d or len(paths) > 3 * d:
        raise RuntimeError("decomposition cardinality bounds violated")
    return dec


# -- path sweep strategy and its dynamic program -----------------------------------


def path_sweep_order(path: PathInfo, eid: int) -> list[int]:
    """Query order of S(H, e_a): e_a, e_{a-1}, .., e_1 then e_{a+1}, .., e_q."""
    a = path.edges.index(eid)
    return list(path.edges[a::-1]) + list(path.edges[a + 1 :])


def path_sweep_strategy(h: ResidualView, path: PathInfo, eid: int) -> Strategy:
    """S(H, e): probe e, then sweep outward along its path, skipping edges
    absent from H (and anything that has died since)."""
    if eid not in path.edges:
        raise ValueError(f"edge {eid} is not on the path")
    if eid not in h.alive:
        raise ValueError(f"edge {eid} is not alive in the residual graph")
    return StaticOrder([e for e in path_sweep_order(path, eid) if e in h.alive])


@dataclass(frozen=True)
class PathDPResult:
    expected_size: float
    pr_u1: float
    pr_uq1: float
    pr_both: float


def path_dp(h: ResidualView, path: PathInfo, eid: int) -> PathDPResult:
    """E|M|, Pr(u_1 matched), Pr(u_{q+1} matched) and Pr(both) for the sweep
    M = M(S(H, e), H).

    Dynamic program over the one-sided sweeps S_b^1 / S_b^q with edges absent
    from H carrying probability zero (querying an absent edge is a no-op, and
    a probability-zero edge behaves identically in the recursion).
    """
    if eid not in path.edges:
        raise ValueError(f"edge {eid} is not on the path")
    if eid not in h.alive:
        raise ValueError(f"edge {eid} is not alive in the residual graph")
    q = len(path.edges)
    base = h.base
    # pt[1..q]: effective probabilities; index 0 unused
    pt = [0.0] * (q + 1)
    for j in range(1, q + 1):
        e = path.edges[j - 1]
        pt[j] = base.probability(e) if e in h.alive else 0.0

    # left sweeps S_b^1: LE[b] = E|M_b^1|, LP[b] = Pr(e_1 in M_b^1); b=0 empty
    LE = [0.0] * (q + 3)
    LP = [0.0] * (q + 3)
    for b in range(1, q + 1):
        if b == 1:
            LE[b] = pt[1]
            LP[b] = pt[1]
        else:
            LE[b] = pt[b] * (1.0 + LE[b - 2]) + (1.0 - pt[b]) * LE[b - 1]
            LP[b] = pt[b] * LP[b - 2] + (1.0 - pt[b]) * LP[b - 1]

    # right sweeps S_b^q: RE[b] = E|M_b^q|, RP[b] = Pr(e_q in M_b^q); b>q empty
    RE = [0.0] * (q + 3)
    RP = [0.0] * (q + 3)
    for b in range(q, 0, -1):
        if b == q:
            RE[b] = pt[q]
            RP[b] = pt[q]
        else:
            RE[b] = pt[b] * (1.0 + RE[b + 2]) + (1.0 - pt[b]) * RE[b + 1]
            RP[b] = pt[b] * RP[b + 2] + (1.0 - pt[b]) * RP[b + 1]

    def le(b):
        return LE[b] if b >= 1 else 0.0

    def lp(b):
        return LP[b] if b >= 1 else 0.0

    def re_(b):
        return RE[b] if b <= q else 0.0

    def rp(b):
        return RP[b] if b <= q else 0.0

    a = path.edges.index(eid) + 1
    pa = pt[a]
    if q == 1:
        return PathDPResult(pa, pa, pa, pa)
    if a == 1:
        e_size = pa * (1.0 + re_(3)) + (1.0 - pa) * re_(2)
        pr_u1 = pa
        pr_uq1 = pa * rp(3) + (1.0 - pa) * rp(2)
        pr_both = pa * rp(3)
    elif a == q:
        e_size = pa * (1.0 + le(q - 2)) + (1.0 - pa) * le(q - 1)
        pr_uq1 = pa
        pr_u1 = pa * lp(q - 2) + (1.0 - pa) * lp(q - 1)
        pr_both = pa * lp(q - 2)
    else:
        e_size = pa * (1.0 + le(a - 2) + re_(a + 2)) + (1.0 - pa) * (
            le(a - 1) + re_(a + 1)
        )
        pr_u1 = pa * lp(a - 2) + (1.0 - pa) * lp(a - 1)
        pr_uq1 = pa * rp(a + 2) + (1.0 - pa) * rp(a + 1)
        # the two sweep arms act on disjoint edges, hence independently
        pr_both = pa * lp(a - 2) * rp(a + 2) + (1.0 - pa) * lp(a - 1) * rp(a + 1)
    return PathDPResult(e_size, pr_u1, pr_uq1, pr_both)


# -- contracted decision trees and the family F ------------------------------------

EdgeMove = tuple  # ("edge", eid) | ("path", path_index, eid)


@dataclass(frozen=True)
class CDT:
    """Contracted decision tree node: a residual mask, the sub-strategy played
    there (None for a leaf), and one subtree per reachable residual."""

    mask: int
    move: EdgeMove | None
    children: tuple["CDT", ...] = ()


def _bits(eids: Iterable[int]) -> int:
    mask = 0
    for e in eids:
        mask |= 1 << e
    return mask


class _ComponentContext:
    """Move generation and evaluation for one pendant-free component."""

    def __init__(self, g: WeightedGraph, dec: SparseDecomposition):
        self.g = g
        self.dec = dec
        self.kill = _kill_masks(g)
        self.path_edge_bits = [_bits(p.edges) for p in dec.paths]
        self.node_kill = {}
        for p in dec.paths:
            for u in p.nodes:
                self.node_kill[u] = _bits(g.incident(u))

    def moves(self, mask: int) -> list[EdgeMove]:
        out: list[EdgeMove] = []
        for e in sorted(self.dec.incident_edges):
            if (mask >> e) & 1:
                out.append(("edge", e))
        for pi, p in enumerate(self.dec.paths):
            for e in p.edges:
                if (mask >> e) & 1:
                    out.append(("path", pi, e))
        return out

    def move_mean(self, mask: int, move: EdgeMove) -> float:
        if move[0] == "edge":
            return self.g.probability(move[1])
        _, pi, e = move
        view = ResidualView(self.g, frozenset(_eids_of(mask)))
        return path_dp(view, self.dec.paths[pi], e).expected_size

    def move_children(self, mask: int, move: EdgeMove) -> list[tuple[int, float]]:
        """Distinct reachable residual masks with positive probability."""
        if move[0] == "edge":
            e = move[1]
            p = self.g.probability(e)
            yes_mask = mask & ~self.kill[e]
            no_mask = mask & ~(1 << e)
            if yes_mask == no_mask:
                return [(yes_mask, 1.0)]
            out = [(yes_mask, p)]
            if p < 1.0:
                out.append((no_mask, 1.0 - p))
            return out
        _, pi, e = move
        path = self.dec.paths[pi]
        view = ResidualView(self.g, frozenset(_eids_of(mask)))
        dp = path_dp(view, path, e)
        inner = path.nodes[1:-1]
        u1, uq1 = path.nodes[0], path.nodes[-1]
        base_clear = self.path_edge_bits[pi] | _bits(
            itertools.chain.from_iterable(
                self.g.incident(u) for u in inner
            )
        )
        ku1 = self.node_kill[u1]
        kuq1 = self.node_kill[uq1]
        cases = [
            (mask & ~(base_clear | ku1 | kuq1), dp.pr_both),
            (mask & ~(base_clear | ku1), dp.pr_u1 - dp.pr_both),
            (mask & ~(base_clear | kuq1), dp.pr_uq1 - dp.pr_both),
            (mask & ~base_clear, 1.0 - dp.pr_u1 - dp.pr_uq1 + dp.pr_both),
        ]
        merged: dict[int, float] = {}
        for cmask, prob in cases:
            if prob > 1e-15:
                merged[cmask] = merged.get(cmask, 0.0) + prob
        return sorted(merged.items())


def _eids_of(mask: int) -> list[int]:
    out = []
    while mask:
        e = (mask & -mask).bit_length() - 1
        out.append(e)
        mask &= mask - 1
    return out


def _move_key(move: EdgeMove):
    # condition (iii): strategy identity is (kind, defining edge)
    return (move[0], move[-1])


def enumerate_family_F(
    g: WeightedGraph | ResidualView,
    decomposition: SparseDecomposition,
    d: int,
) -> Iterator[CDT]:
    """Stream the CDT family F: per node, either a single query of an edge
    incident to V>=3 or a path sweep S(H, e); height at most 9d+1; no strategy
    repeated along a root-leaf chain.  For each node choice the minimal tree
    (all children leaves) is yielded before deeper refinements."""
    view = _as_view(g)
    ctx = _ComponentContext(view.base, decomposition)
    height_cap = 9 * d + 1

    def lazy_product(factories, idx=0):
        if idx == len(factories):
            yield ()
            return
        for head in factories[idx]():
            for rest in lazy_product(factories, idx + 1):
                yield (head,) + rest

    def rec(mask: int, depth: int, used: frozenset) -> Iterator[CDT]:
        yield CDT(mask, None, ())
        if depth >= height_cap or mask == 0:
            return
        for move in ctx.moves(mask):
            key = _move_key(move)
            if key in used:
                continue
            children = ctx.move_children(mask, move)
            used2 = used | {key}
            factories = [
                (lambda cm=cm: rec(cm, depth + 1, used2)) for cm, _ in children
            ]
            for combo in lazy_product(factories):
                yield CDT(mask, move, combo)

    yield from rec(view.mask, 1, frozenset())


def evaluate_cdt(
    t: CDT,
    g: WeightedGraph,
    decomposition: SparseDecomposition,
) -> float:
    """Bottom-up expected matching size of a contracted decision tree."""
    ctx = _ComponentContext(g, decomposition)

    def rec(node: CDT) -> float:
        if node.move is None:
            return 0.0
        children = ctx.move_children(node.mask, node.move)
        by_mask = {child.mask: child for child in node.children}
        if set(by_mask) != {cm for cm, _ in children}:
            raise ValueError("CDT children do not match the reachable residuals")
        total = ctx.move_mean(node.mask, node.move)
        for cm, prob in children:
            total += prob * rec(by_mask[cm])
        return total

    return rec(t)


# -- the sparse solver -------------------------------------------------------------


class _SparseEvaluator:
    """Memoized optimal value over residual masks.

    value(mask): peel the lowest pendant edge if any; otherwise sum the
    optimal values of the connected components, each solved by maximizing
    over its restricted move set (or over first edges, for a pure cycle).
    """

    def __init__(self, g: WeightedGraph, d: int, memo_limit: int):
        self.g = g
        self.d = d
        self.kill = _kill_masks(g)
        self.memo_limit = memo_limit
        self.value_memo: dict[int, float] = {0: 0.0}
        self.comp_best: dict[int, tuple[float, EdgeMove | None]] = {}
        self.ctx_cache: dict[int, _ComponentContext | None] = {}

    def _charge(self):
        if len(self.value_memo) + len(self.comp_best) >= self.memo_limit:
            raise MemoLimitError(f"residual cache exceeded {self.memo_limit} entries")

    def _view(self, mask: int) -> ResidualView:
        return ResidualView(self.g, frozenset(_eids_of(mask)))

    def lowest_pendant(self, mask: int) -> int | None:
        view = self._view(mask)
        pend = view.pendant_edges()
        return pend[0] if pend else None

    def value(self, mask: int) -> float:
        got = self.value_memo.get(mask)
        if got is not None:
            return got
        self._charge()
        e = self.lowest_pendant(mask)
        if e is not None:
            p = self.g.probability(e)
            val = p * (1.0 + self.value(mask & ~self.kill[e])) + (1.0 - p) * self.value(
                mask & ~(1 << e)
            )
        else:
            val = 0.0
            for comp in self._view(mask).connected_components():
                val += self.component_value(_bits(comp))
        self.value_memo[mask] = val
        return val

    def _component_context(self, comp_mask: int) -> _ComponentContext | None:
        """Decomposition context for a pendant-free component (None = cycle)."""
        got = self.ctx_cache.get(comp_mask)
        if got is not None or comp_mask in self.ctx_cache:
            return got
        view = self._view(comp_mask)
        try:
            dec = decompose(view, self.d)
            ctx = _ComponentContext(self.g, dec)
        except CycleGraphError:
            ctx = None
        self.ctx_cache[comp_mask] = ctx
        return ctx

    def component_value(self, comp_mask: int) -> float:
        got = self.comp_best.get(comp_mask)
        if got is not None:
            return got[0]
        self._charge()
        ctx = self._component_context(comp_mask)
        if ctx is None:
            # pure cycle: maximize over the first queried edge
            best = 0.0
            best_move: EdgeMove | None = None
            for e in _eids_of(comp_mask):
                p = self.g.probability(e)
                val = p * (1.0 + self.value(comp_mask & ~self.kill[e])) + (
                    1.0 - p
                ) * self.value(comp_mask & ~(1 << e))
                if best_move is None or val > best:
                    best = val
                    best_move = ("edge", e)
        else:
            best = 0.0
            best_move = None
            for move in ctx.moves(comp_mask):
                val = ctx.move_mean(comp_mask, move)
                for cm, prob in ctx.move_children(comp_mask, move):
                    val += prob * self.value(cm)
                if best_move is None or val > best:
                    best = val
                    best_move = move
        self.comp_best[comp_mask] = (best, best_move)
        return best

    def best_component_move(self, comp_mask: int) -> EdgeMove | None:
        self.component_value(comp_mask)
        return self.comp_best[comp_mask][1]


class SparseOptimalStrategy(Strategy):
    """Replays the sparse solver's optimal policy.

    Pendant edges are queried first (lowest index); on a pendant-free
    residual the policy consults the memoized component solver and queries
    the defining edge of the best root move; sweep continuations re-enter
    through the pendant rule.
    """

    def __init__(self, evaluator: _SparseEvaluator):
        self.evaluator = evaluator

    def next_query(self, residual: ResidualView, history):
        if not residual.alive:
            return None
        mask = residual.mask
        ev = self.evaluator
        e = ev.lowest_pendant(mask)
        if e is not None:
            return e
        comps = residual.connected_components()
        comp_mask = _bits(min(comps, key=min))
        move = ev.best_component_move(comp_mask)
        if move is None:
            return None
        return move[-1]


def solve_sparse(
    g: WeightedGraph,
    d: int,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> tuple[Strategy, float]:
    """Optimal strategy and exact value for a d-sparse graph.

    Every connected component must have sparsity excess at most d.
    """
    view = g.residual()
    for comp in view.connected_components():
        sub = view.restrict(comp)
        excess = sub.sparsity_excess()
        if excess > d:
            raise ValueError(
                f"component with excess {excess} exceeds d={d}"
            )
    evaluator = _SparseEvaluator(g, d, memo_limit)
    value = evaluator.value(g.full_mask)
    return SparseOptimalStrategy(evaluator), value
