"""Independent brute-force oracles used to pin expected values.

Everything here works from first principles on plain edge lists so that the
library code under test shares no path with the oracle.
"""

from __future__ import annotations

import itertools
import math
import random


def all_matchings(edges):
    """Yield every matching (as a frozenset of edge indices)."""
    m = len(edges)

    def rec(idx, used, current):
        if idx == m:
            yield frozenset(current)
            return
        yield from rec(idx + 1, used, current)
        u, v = edges[idx][0], edges[idx][1]
        if u not in used and v not in used:
            yield from rec(idx + 1, used | {u, v}, current + [idx])

    yield from rec(0, frozenset(), [])


def brute_max_cardinality(edges) -> int:
    return max((len(mm) for mm in all_matchings(edges)), default=0)


def brute_max_weight(edges, weights):
    """(best weight, lexicographically smallest optimal edge-index set)."""
    best_w = None
    best_set = None
    for mm in all_matchings(edges):
        w = math.fsum(weights[k] for k in mm)
        key = tuple(sorted(mm))
        if best_w is None or w > best_w or (w == best_w and key < best_key):
            best_w = w
            best_set = mm
            best_key = key
    return best_w, best_set


def scenarios(m):
    """All subsets of m edges as (frozenset, tuple of bits)."""
    for mask in range(1 << m):
        yield frozenset(e for e in range(m) if (mask >> e) & 1)


def scenario_probability(present, probs):
    prob = 1.0
    for e, p in enumerate(probs):
        prob *= p if e in present else 1.0 - p
    return prob


def brute_mu(edges, present) -> int:
    sub = [edges[k] for k in sorted(present)]
    return brute_max_cardinality(sub)


def brute_expected_mu(edges, probs) -> float:
    terms = []
    for present in scenarios(len(edges)):
        terms.append(scenario_probability(present, probs) * brute_mu(edges, present))
    return math.fsum(terms)


def brute_opt_value(edges, probs) -> float:
    """Bellman recursion over alive-edge subsets, max over first queries."""
    m = len(edges)
    memo = {frozenset(): 0.0}

    def alive_after_kill(alive, e):
        u, v = edges[e][0], edges[e][1]
        return frozenset(
            f for f in alive if edges[f][0] not in (u, v) and edges[f][1] not in (u, v)
        )

    def opt(alive):
        got = memo.get(alive)
        if got is not None:
            return got
        best = 0.0
        for e in sorted(alive):
            p = probs[e]
            val = p * (1.0 + opt(alive_after_kill(alive, e))) + (1.0 - p) * opt(
                alive - {e}
            )
            if val > best:
                best = val
        memo[alive] = best
        return best

    return opt(frozenset(range(m)))


def sweep_matching(path_probs_present, order):
    """Run a fixed query order on a path scenario; return matched edge set.

    path_probs_present: dict edge_pos -> bool (exists in the scenario),
    covering the edges present in the residual subgraph; missing positions are
    treated as absent from the residual (never queried).
    order: sequence of edge positions to query.
    """
    matched = set()
    dead = set()
    for j in order:
        if j not in path_probs_present or j in dead:
            continue
        dead.add(j)
        if path_probs_present[j]:
            matched.add(j)
            dead.add(j - 1)
            dead.add(j + 1)
    return matched


def path_sweep_order(q, a):
    """S(H, e_a) query order on a q-edge path: a, a-1, .., 1 then a+1, .., q.

    Positions are 1-based to match the path node labeling u_1..u_{q+1}.
    """
    return list(range(a, 0, -1)) + list(range(a + 1, q + 1))


def brute_path_sweep_stats(q, a, probs, in_h):
    """Exhaustive E[|M|], Pr(u1 matched), Pr(u_{q+1} matched), Pr(both).

    probs[j] is the probability of path edge j (1-based positions 1..q);
    in_h[j] says whether the edge is present in the residual subgraph H.
    """
    order = path_sweep_order(q, a)
    positions = [j for j in range(1, q + 1) if in_h[j]]
    e_sum = 0.0
    pr_u1 = 0.0
    pr_uq1 = 0.0
    pr_both = 0.0
    for bits in itertools.product([False, True], repeat=len(positions)):
        prob = 1.0
        present = {}
        for j, b in zip(positions, bits):
            present[j] = b
            prob *= probs[j] if b else 1.0 - probs[j]
        matched = sweep_matching(present, order)
        e_sum += prob * len(matched)
        u1 = 1 in matched
        uq1 = q in matched
        if u1:
            pr_u1 += prob
        if uq1:
            pr_uq1 += prob
        if u1 and uq1:
            pr_both += prob
    return e_sum, pr_u1, pr_uq1, pr_both


def random_connected_graph(rng: random.Random, n_nodes, extra_edges, p_low=0.05, p_high=0.95):
    """Random connected graph: spanning tree plus `extra_edges` chords."""
    nodes = list(range(n_nodes))
    rng.shuffle(nodes)
    edges = []
    present = set()
    for i in range(1, n_nodes):
        j = rng.randrange(i)
        a, b = sorted((nodes[i], nodes[j]))
        edges.append((a, b))
        present.add((a, b))
    candidates = [
        (a, b) for a, b in itertools.combinations(range(n_nodes), 2) if (a, b) not in present
    ]
    rng.shuffle(candidates)
    edges.extend(candidates[:extra_edges])
    probs = [rng.uniform(p_low, p_high) for _ in edges]
    return edges, probs


def random_forest(rng: random.Random, n_nodes, keep=0.8):
    """Random forest by dropping edges from a random spanning tree."""
    edges, _ = random_connected_graph(rng, n_nodes, 0)
    edges = [e for e in edges if rng.random() < keep]
    probs = [rng.uniform(0.05, 0.95) for _ in edges]
    return edges, probs
