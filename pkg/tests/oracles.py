"""Independent brute-force oracles and random instance generators for the tests.

Nothing here calls the library's algorithms; only ``UncertainGraph`` is
used to carry edges around.
"""

import itertools
import math

import numpy as np

from uskyline import UncertainGraph

INF = math.inf


def random_graph(rng, n, m, prob_low=0.0, prob_high=1.0, weight_low=1.0, weight_high=10.0, integer_weights=False):
    """``m`` distinct random edges over ``n`` vertices (``m`` clipped to the complete graph)."""
    pairs = list(itertools.combinations(range(n), 2))
    m = min(m, len(pairs))
    chosen = rng.choice(len(pairs), size=m, replace=False) if m else []
    edges = []
    for idx in chosen:
        u, v = pairs[int(idx)]
        if rng.random() < 0.5:
            u, v = v, u
        if integer_weights:
            w = float(rng.integers(int(weight_low), int(weight_high) + 1))
        else:
            w = float(rng.uniform(weight_low, weight_high))
        p = float(prob_high - (prob_high - prob_low) * rng.random())
        edges.append((u, v, w, p))
    return UncertainGraph(n, edges)


def floyd_warshall(n, edges):
    """All-pairs shortest distances by matrix relaxation; ``edges`` are ``(u, v, w)``."""
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    for u, v, w in edges:
        if w < d[u, v]:
            d[u, v] = d[v, u] = w
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def all_pairs(graph, present=None):
    edges = [
        (u, v, w)
        for i, ((u, v), w) in enumerate(zip(graph.edges, graph.weights))
        if present is None or present[i]
    ]
    return floyd_warshall(graph.n, edges)


def reachability(graph):
    """Boolean transitive closure (Warshall)."""
    r = np.eye(graph.n, dtype=bool)
    for u, v in graph.edges:
        r[u, v] = r[v, u] = True
    for k in range(graph.n):
        r = r | (r[:, k : k + 1] & r[k : k + 1, :])
    return r


def worlds_by_product(graph):
    """Yield ``(present_tuple, probability)`` for every possible world via itertools.product."""
    for present in itertools.product((False, True), repeat=graph.m):
        prob = 1.0
        for keep, p in zip(present, graph.probs):
            prob *= p if keep else 1.0 - p
        yield present, prob


def exact_distance_distribution(graph, u, v):
    """Map distance -> probability mass of the shortest ``u``-``v`` distance."""
    masses = {}
    for present, prob in worlds_by_product(graph):
        d = float(all_pairs(graph, present)[u, v])
        masses[d] = masses.get(d, 0.0) + prob
    return masses


def argmax_smallest(masses, rtol=1e-12):
    best = max(masses.values())
    return min(d for d, m in masses.items() if m >= best - rtol * best)


def exact_reliability(graph, u, v):
    total = 0.0
    for present, prob in worlds_by_product(graph):
        if all_pairs(graph, present)[u, v] < INF:
            total += prob
    return total


def brute_force_paths(graph, u, v, max_hops):
    """Every simple ``u``-``v`` path with at most ``max_hops`` edges, as vertex tuples.

    Tries every ordered choice of distinct intermediate vertices and keeps the
    sequences whose consecutive pairs are all edges.
    """
    others = [x for x in range(graph.n) if x not in (u, v)]
    out = []
    for k in range(0, max_hops):
        for mid in itertools.permutations(others, k):
            seq = (u, *mid, v)
            if all(graph.has_edge(a, b) for a, b in zip(seq, seq[1:])):
                out.append(seq)
    return out


def path_weight_prob(graph, seq):
    w = 0.0
    p = 1.0
    for a, b in zip(seq, seq[1:]):
        e = graph.edge_index(a, b)
        w += graph.weights[e]
        p *= graph.probs[e]
    return w, p


def brute_expected_distance(graph, u, v, max_hops):
    paths = brute_force_paths(graph, u, v, max_hops)
    if not paths:
        return INF
    wp = [path_weight_prob(graph, s) for s in paths]
    norm = sum(p for _, p in wp)
    return sum(w * (p / norm) for w, p in wp)


def naive_skyline_rows(rows):
    """Indices of rows not dominated by any other row (pure-Python double loop)."""
    keep = []
    for i, r in enumerate(rows):
        dominated = False
        for j, s in enumerate(rows):
            if j != i and all(a <= b for a, b in zip(s, r)) and any(a < b for a, b in zip(s, r)):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep
