"""Candidate pruning: reachability from every query vertex, then a distance threshold."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .distances import dijkstra
from .graph import hop_distances

DEFAULT_THRESHOLD = 400.0


@dataclass(frozen=True)
class QuerySet:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if not vs:
            raise ValueError("query set must not be empty")
        if len(set(vs)) != len(vs):
            raise ValueError(f"query vertices must be distinct: {vs}")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    @property
    def size(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CandidateSet:
    """Surviving data vertices in ascending order.

    ``reach_map`` maps every data vertex reached by at least one query vertex
    to the frozenset of query vertices that reach it.
    """

    vertices: tuple
    reach_map: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.vertices


@dataclass(frozen=True)
class PruneConfig:
    distance_threshold: float = DEFAULT_THRESHOLD
    skip_distance_pruning: bool = False

    def __post_init__(self):
        if not self.distance_threshold > 0:
            raise ValueError("distance_threshold must be > 0")


def as_query_set(graph, queries):
    if not isinstance(queries, QuerySet):
        queries = QuerySet(tuple(queries))
    for q in queries:
        if not (0 <= q < graph.n):
            raise ValueError(f"query vertex {q} is not in the graph")
    return queries


def bfs_prune(graph, queries):
    """Data vertices reachable from every query vertex when all edges are present."""
    queries = as_query_set(graph, queries)
    qset = set(queries)
    reach = {}
    for q in queries:
        for v in hop_distances(graph, q):
            if v in qset:
                continue
            reach.setdefault(v, set()).add(q)
    full = frozenset(queries)
    reach_map = {v: frozenset(s) for v, s in sorted(reach.items())}
    members = tuple(v for v, s in reach_map.items() if s == full)
    return CandidateSet(members, reach_map)


def distance_prune(graph, candidates, queries, config=None):
    """Drop candidates farther than the threshold from some query vertex.

    Distances are deterministic weighted shortest paths over the full graph,
    one threshold-bounded sweep per query vertex.
    """
    config = config or PruneConfig()
    queries = as_query_set(graph, queries)
    threshold = config.distance_threshold
    if math.isinf(threshold):
        return candidates
    keep = set(candidates.vertices)
    for q in queries:
        dist = dijkstra(graph, q, cutoff=threshold)
        keep = {v for v in keep if dist[v] <= threshold}
    members = tuple(v for v in candidates.vertices if v in keep)
    return CandidateSet(members, candidates.reach_map)


def prune(graph, queries, config=None):
    config = config or PruneConfig()
    queries = as_query_set(graph, queries)
    candidates = bfs_prune(graph, queries)
    if config.skip_distance_pruning:
        return candidates
    return distance_prune(graph, candidates, queries, config)
