"""Distance semantics on uncertain graphs.

* deterministic weighted shortest paths (every edge present),
* majority distance: the most probable shortest-path distance over possible worlds,
* expected distance: probability-weighted mean length of the simple paths of at
  most ``max_hops`` edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heappop, heappush

import numpy as np

from .sampling import enumerate_worlds

INF = math.inf

WEIGHTING_MODES = ("paper_weighted", "frequency")
FORMULA_MODES = ("definition", "algorithm_literal")

# masses closer than this (relative) count as tied in the argmax
_TIE_RTOL = 1e-12


def dijkstra(graph, source, mask=None, target=None, cutoff=None):
    """Single-source distances as a list indexed by vertex.

    ``mask`` restricts the search to edges whose entry is true (one possible
    world). With ``target`` the search stops once it is settled; with
    ``cutoff`` no vertex farther than it is labelled. Unlabelled vertices are ``inf``.
    """
    adjacency = graph.adjacency
    weights = graph.weights
    dist = [INF] * graph.n
    dist[source] = 0.0
    done = [False] * graph.n
    heap = [(0.0, source)]
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if x == target:
            break
        for y, e in adjacency[x]:
            if done[y] or (mask is not None and not mask[e]):
                continue
            nd = d + weights[e]
            if cutoff is not None and nd > cutoff:
                continue
            if nd < dist[y]:
                dist[y] = nd
                heappush(heap, (nd, y))
    return dist


def shortest_distance(graph, source, target):
    source = graph.check_vertex(source)
    target = graph.check_vertex(target)
    if source == target:
        return 0.0
    return dijkstra(graph, source, target=target)[target]


def shortest_distances_from(graph, source):
    source = graph.check_vertex(source)
    return dict(enumerate(dijkstra(graph, source)))


# ---------------------------------------------------------------------------
# majority distance


@dataclass(frozen=True)
class MajorityDistanceConfig:
    """Settings for majority distance.

    ``weighting_mode="paper_weighted"`` adds each sampled world's generation
    probability to its distance bucket; ``"frequency"`` adds ``1/|R|`` and is the
    consistent Monte Carlo estimate of the shortest-distance distribution.
    """

    sample_count: int = 1000
    weighting_mode: str = "paper_weighted"
    tie_break: str = "smallest-distance"
    disconnected_policy: str = "bucket-as-infinity"

    def __post_init__(self):
        if int(self.sample_count) < 1:
            raise ValueError("sample_count must be >= 1")
        if self.weighting_mode not in WEIGHTING_MODES:
            raise ValueError(f"weighting_mode must be one of {WEIGHTING_MODES}")
        if self.tie_break != "smallest-distance":
            raise ValueError("only the smallest-distance tie break is supported")
        if self.disconnected_policy != "bucket-as-infinity":
            raise ValueError("only the bucket-as-infinity disconnected policy is supported")


def _bucket_key(d):
    return d if d == INF else round(d, 9)


@dataclass
class ShortestDistanceDistribution:
    """Probability mass per shortest-path distance; ``inf`` holds the disconnected worlds."""

    buckets: dict = field(default_factory=dict)
    _repr: dict = field(default_factory=dict, repr=False)

    def add(self, d, mass):
        key = _bucket_key(d)
        if key in self.buckets:
            self.buckets[key] += mass
        else:
            self.buckets[key] = mass
            self._repr[key] = d

    def total(self):
        return sum(self.buckets.values())

    def ranked(self):
        """``(distance, mass)`` pairs, heaviest first, smaller distance first on ties."""
        return sorted(((self._repr[k], m) for k, m in self.buckets.items()), key=lambda t: (-t[1], t[0]))

    def argmax(self):
        if not self.buckets:
            raise ValueError("empty distance distribution")
        best = max(self.buckets.values())
        floor = best - _TIE_RTOL * abs(best)
        winner = min(k for k, m in self.buckets.items() if m >= floor)
        return self._repr[winner]

    def top_two_gap(self):
        """Mass difference between the two heaviest buckets (the top mass if only one)."""
        masses = sorted(self.buckets.values(), reverse=True)
        if len(masses) == 1:
            return masses[0]
        return masses[0] - masses[1]


def _world_iter(samples, mode):
    masks, weights = samples.world_weights(mode)
    for mask, weight in zip(masks, weights.tolist()):
        # impossible worlds (a certain edge missing) carry no mass
        if weight > 0.0:
            yield mask.tolist(), weight


def distance_distribution(graph, samples, u, v, mode="frequency"):
    """Accumulated mass of each shortest ``u``-``v`` distance across the worlds in ``samples``."""
    u = graph.check_vertex(u)
    v = graph.check_vertex(v)
    if len(samples) == 0:
        raise ValueError("empty sample set")
    if samples.masks.shape[1] != graph.m:
        raise ValueError("samples were not drawn from this graph")
    dist = ShortestDistanceDistribution()
    for mask, weight in _world_iter(samples, mode):
        dist.add(dijkstra(graph, u, mask=mask, target=v)[v], weight)
    return dist


def majority_distance(graph, samples, u, v, config=None):
    config = config or MajorityDistanceConfig()
    if graph.check_vertex(u) == graph.check_vertex(v):
        raise ValueError("majority distance needs two distinct vertices")
    return distance_distribution(graph, samples, u, v, config.weighting_mode).argmax()


def exact_majority_distance(graph, u, v):
    """Majority distance from the full possible-world distribution (``m <= 20``)."""
    if graph.check_vertex(u) == graph.check_vertex(v):
        raise ValueError("majority distance needs two distinct vertices")
    worlds = enumerate_worlds(graph)
    return distance_distribution(graph, worlds, u, v, "frequency").argmax()


# ---------------------------------------------------------------------------
# expected distance


@dataclass(frozen=True)
class ExpectedDistanceConfig:
    max_hops: int = 4
    formula_mode: str = "definition"

    def __post_init__(self):
        if int(self.max_hops) < 1:
            raise ValueError("max_hops must be >= 1")
        if self.formula_mode not in FORMULA_MODES:
            raise ValueError(f"formula_mode must be one of {FORMULA_MODES}")


@dataclass(frozen=True)
class BoundedPath:
    vertices: tuple
    edges: tuple
    length: float
    prob: float

    @property
    def hops(self):
        return len(self.edges)


@dataclass(frozen=True)
class BoundedPathSet:
    source: int
    target: int
    max_hops: int
    paths: tuple

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    @property
    def lengths(self):
        return [p.length for p in self.paths]

    @property
    def probs(self):
        return [p.prob for p in self.paths]


def enumerate_paths(graph, u, v, max_hops):
    """All simple ``u``-``v`` paths of at most ``max_hops`` edges (depth-limited DFS)."""
    u = graph.check_vertex(u)
    v = graph.check_vertex(v)
    if u == v:
        raise ValueError("path enumeration needs two distinct vertices")
    if max_hops < 1:
        raise ValueError("max_hops must be >= 1")
    adjacency = graph.adjacency
    weights = graph.weights
    probs = graph.probs
    found = []
    on_path = [False] * graph.n
    on_path[u] = True
    vertices = [u]
    edges = []

    def extend(x):
        for y, e in adjacency[x]:
            if on_path[y]:
                continue
            vertices.append(y)
            edges.append(e)
            if y == v:
                found.append(
                    BoundedPath(
                        tuple(vertices),
                        tuple(edges),
                        sum(weights[i] for i in edges),
                        math.prod(probs[i] for i in edges),
                    )
                )
            elif len(edges) < max_hops:
                on_path[y] = True
                extend(y)
                on_path[y] = False
            vertices.pop()
            edges.pop()

    extend(u)
    return BoundedPathSet(u, v, max_hops, tuple(found))


def _combine_paths(paths, graph, formula_mode):
    if not paths:
        return INF
    if formula_mode == "definition":
        norm = sum(p.prob for p in paths)
        return sum(p.length * p.prob for p in paths) / norm
    # one term per path: sum of edge probabilities, sum of probability-scaled weights
    prob_total = 0.0
    dist_total = 0.0
    for p in paths:
        for e in p.edges:
            prob_total += graph.probs[e]
            dist_total += graph.probs[e] * graph.weights[e]
    return dist_total / prob_total


def expected_distance(graph, u, v, config=None):
    config = config or ExpectedDistanceConfig()
    paths = enumerate_paths(graph, u, v, config.max_hops)
    return _combine_paths(paths.paths, graph, config.formula_mode)


def expected_distances_from(graph, source, config=None):
    """Expected distance from ``source`` to every vertex, sharing one path DFS.

    Returns a list indexed by vertex; ``inf`` where no path within the hop
    bound exists (including ``source`` itself).
    """
    config = config or ExpectedDistanceConfig()
    source = graph.check_vertex(source)
    adjacency = graph.adjacency
    weights = graph.weights
    probs = graph.probs
    max_hops = config.max_hops
    literal = config.formula_mode == "algorithm_literal"
    num = [0.0] * graph.n
    den = [0.0] * graph.n
    on_path = [False] * graph.n
    on_path[source] = True

    # (prod, length) along the path for definition mode;
    # (sum of probs, sum of prob*weight) for the literal mode
    def extend(x, depth, a, b):
        for y, e in adjacency[x]:
            if on_path[y]:
                continue
            if literal:
                na, nb = a + probs[e], b + probs[e] * weights[e]
                den[y] += na
                num[y] += nb
            else:
                na, nb = a * probs[e], b + weights[e]
                den[y] += na
                num[y] += na * nb
            if depth + 1 < max_hops:
                on_path[y] = True
                extend(y, depth + 1, na, nb)
                on_path[y] = False

    extend(source, 0, 0.0 if literal else 1.0, 0.0)
    out = [num[t] / den[t] if den[t] > 0 else INF for t in range(graph.n)]
    out[source] = INF
    return out


# ---------------------------------------------------------------------------
# candidate x query matrix


@dataclass(frozen=True)
class Majority:
    samples: object
    config: MajorityDistanceConfig = MajorityDistanceConfig()

    name = "majority"


@dataclass(frozen=True)
class Expected:
    config: ExpectedDistanceConfig = ExpectedDistanceConfig()

    name = "expected"


@dataclass(frozen=True)
class DistanceMatrix:
    """Rows are candidate vertices, columns query vertices."""

    candidates: tuple
    queries: tuple
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(len(self.candidates), len(self.queries))
        if np.isnan(values).any():
            raise ValueError("distance matrix contains NaN")
        if (values < 0).any():
            raise ValueError("distance matrix contains negative entries")
        values.setflags(write=False)
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "queries", tuple(self.queries))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_rows(cls, rows, candidates=None, queries=None):
        rows = [tuple(float(x) for x in r) for r in rows]
        dim = len(rows[0]) if rows else (len(queries) if queries is not None else 0)
        if candidates is None:
            candidates = range(len(rows))
        if queries is None:
            queries = range(dim)
        return cls(tuple(candidates), tuple(queries), np.array(rows, dtype=float).reshape(len(rows), dim))

    def __len__(self):
        return len(self.candidates)

    def rows(self):
        return [tuple(r) for r in self.values.tolist()]

    def row_of(self, vertex):
        return tuple(self.values[self.candidates.index(vertex)].tolist())


def _vertex_list(graph, xs):
    xs = getattr(xs, "vertices", xs)
    return [graph.check_vertex(x) for x in xs]


def build_distance_matrix(graph, candidates, queries, semantics):
    """Distance from each candidate (row) to each query vertex (column)."""
    cands = _vertex_list(graph, candidates)
    qs = _vertex_list(graph, queries)
    if not qs:
        raise ValueError("query set is empty")
    overlap = set(cands) & set(qs)
    if overlap:
        raise ValueError(f"candidates and queries overlap: {sorted(overlap)}")
    values = np.empty((len(cands), len(qs)))
    if not cands:
        return DistanceMatrix(tuple(cands), tuple(qs), values)

    if isinstance(semantics, Expected):
        for j, q in enumerate(qs):
            col = expected_distances_from(graph, q, semantics.config)
            values[:, j] = [col[c] for c in cands]
    elif isinstance(semantics, Majority):
        samples = semantics.samples
        if len(samples) == 0:
            raise ValueError("empty sample set")
        if samples.masks.shape[1] != graph.m:
            raise ValueError("samples were not drawn from this graph")
        dists = [[ShortestDistanceDistribution() for _ in qs] for _ in cands]
        for mask, weight in _world_iter(samples, semantics.config.weighting_mode):
            for j, q in enumerate(qs):
                d = dijkstra(graph, q, mask=mask)
                for i, c in enumerate(cands):
                    dists[i][j].add(d[c], weight)
        for i in range(len(cands)):
            for j in range(len(qs)):
                values[i, j] = dists[i][j].argmax()
    else:
        raise TypeError(f"unsupported semantics {semantics!r}")
    return DistanceMatrix(tuple(cands), tuple(qs), values)
