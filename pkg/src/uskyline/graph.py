"""Uncertain graph model, edge-list I/O and attribute synthesis.

Vertices are always the compact integers ``0..n-1``. When a graph is read
from an edge list, the original file ids are kept in ``graph.labels`` and
are used again when the graph is written back out.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    ConfigurationError,
    EdgeListParseError,
    GraphValidationError,
    UnknownVertexError,
)
from .seeds import make_rng

log = logging.getLogger(__name__)

DEFAULT_WEIGHT_RANGE = (10.0, 100.0)
DEFAULT_PROB_RANGE = (0.0, 1.0)


class UncertainGraph:
    """Simple undirected graph whose edges carry a weight and an existence probability.

    Treat instances as immutable: every transformation returns a new graph.
    ``adjacency[v]`` lists ``(neighbour, edge_index)`` pairs.
    """

    __slots__ = (
        "n",
        "edges",
        "weights",
        "probs",
        "adjacency",
        "labels",
        "duplicate_edges",
        "has_attributes",
        "_index",
        "_label_index",
    )

    def __init__(self, n, edges, labels=None, *, duplicate_edges=0, has_attributes=True):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        ends = []
        weights = []
        probs = []
        index = {}
        adjacency = [[] for _ in range(n)]
        for i, edge in enumerate(edges):
            u, v, w, p = edge
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge {i} ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"edge {i} is a self-loop on vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphValidationError(f"edge {i} duplicates edge {index[key]} between {u} and {v}")
            w = float(w)
            p = float(p)
            if not (w > 0 and math.isfinite(w)):
                raise GraphValidationError(f"edge {i} ({u}, {v}) has non-positive weight {w}")
            if not (0.0 < p <= 1.0):
                raise GraphValidationError(f"edge {i} ({u}, {v}) has probability {p} outside (0, 1]")
            index[key] = i
            ends.append((u, v))
            weights.append(w)
            probs.append(p)
            adjacency[u].append((v, i))
            adjacency[v].append((u, i))

        self.n = n
        self.edges = tuple(ends)
        self.weights = tuple(weights)
        self.probs = tuple(probs)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self._index = index
        if labels is None:
            labels = range(n)
        self.labels = tuple(int(x) for x in labels)
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_index) != n:
            raise ValueError("labels must be distinct")
        self.duplicate_edges = duplicate_edges
        self.has_attributes = has_attributes

    @classmethod
    def from_edges(cls, edges, n=None, labels=None):
        """Build a graph from ``(u, v, weight, prob)`` tuples over ids ``0..n-1``."""
        edges = list(edges)
        if n is None:
            n = 1 + max((max(int(e[0]), int(e[1])) for e in edges), default=-1)
        return cls(n, edges, labels)

    @property
    def m(self):
        return len(self.edges)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"UncertainGraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, UncertainGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.labels == other.labels
            and self.canonical_edges() == other.canonical_edges()
        )

    def __hash__(self):
        return hash((self.n, self.labels, tuple(self.canonical_edges())))

    def check_vertex(self, v):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise UnknownVertexError(v)
        return int(v)

    def degree(self, v):
        return len(self.adjacency[self.check_vertex(v)])

    def degrees(self):
        return [len(a) for a in self.adjacency]

    def edge_index(self, u, v):
        """Index of the edge joining ``u`` and ``v``, or ``None``."""
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u, v):
        return self.edge_index(u, v) is not None

    def neighbors(self, v):
        return [w for w, _ in self.adjacency[self.check_vertex(v)]]

    def vertex_of(self, label):
        """Compact id for an original (file) vertex id."""
        try:
            return self._label_index[int(label)]
        except (KeyError, ValueError, TypeError):
            raise UnknownVertexError(label) from None

    def edge_tuples(self):
        return [(u, v, w, p) for (u, v), w, p in zip(self.edges, self.weights, self.probs)]

    def canonical_edges(self):
        """Sorted ``(label_u, label_v, weight, prob)`` with ``label_u < label_v``."""
        out = []
        for (u, v), w, p in zip(self.edges, self.weights, self.probs):
            a, b = self.labels[u], self.labels[v]
            if a > b:
                a, b = b, a
            out.append((a, b, w, p))
        out.sort()
        return out

    def with_attributes(self, weights, probs):
        """Copy of this graph with new per-edge weights and probabilities."""
        if len(weights) != self.m or len(probs) != self.m:
            raise ValueError("need one weight and one probability per edge")
        edges = [(u, v, w, p) for (u, v), w, p in zip(self.edges, weights, probs)]
        return UncertainGraph(self.n, edges, self.labels, duplicate_edges=self.duplicate_edges)


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    density: float
    avg_degree: float
    max_degree: int


def stats(graph):
    n, m = graph.n, graph.m
    density = 2.0 * m / (n * (n - 1)) if n > 1 else 0.0
    avg_degree = 2.0 * m / n if n else 0.0
    max_degree = max(graph.degrees(), default=0)
    return GraphStats(n=n, m=m, density=density, avg_degree=avg_degree, max_degree=max_degree)


def _positive_default(name, value):
    if value is None:
        return None
    value = float(value)
    if name == "default_weight" and not value > 0:
        raise ConfigurationError(f"default_weight must be > 0, got {value}")
    if name == "default_prob" and not 0 < value <= 1:
        raise ConfigurationError(f"default_prob must lie in (0, 1], got {value}")
    return value


def load_edge_list(path, default_weight=None, default_prob=None):
    """Read a ``u v [weight] [prob]`` edge list.

    Lines starting with ``#`` and blank lines are skipped. Columns that are
    absent on a line are filled from ``default_weight`` / ``default_prob``;
    if a needed default was not given, :class:`ConfigurationError` is raised.
    Repeated undirected edges keep their first occurrence.
    """
    default_weight = _positive_default("default_weight", default_weight)
    default_prob = _positive_default("default_prob", default_prob)
    path = Path(path)
    raw = []
    seen = set()
    duplicates = 0
    complete = True
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = text.split()
            if not 2 <= len(fields) <= 4:
                raise EdgeListParseError(
                    f"expected 2-4 fields, got {len(fields)}", lineno, path
                )
            try:
                u, v = int(fields[0]), int(fields[1])
                w = float(fields[2]) if len(fields) > 2 else None
                p = float(fields[3]) if len(fields) > 3 else None
            except ValueError:
                raise EdgeListParseError(f"non-numeric field in {text!r}", lineno, path) from None
            if u < 0 or v < 0:
                raise EdgeListParseError("vertex ids must be non-negative", lineno, path)
            if u == v:
                raise EdgeListParseError(f"self-loop on vertex {u}", lineno, path)
            if len(fields) < 4:
                complete = False
            if w is None:
                if default_weight is None:
                    raise ConfigurationError(
                        f"{path}:{lineno}: weight column missing and no default_weight given"
                    )
                w = default_weight
            if p is None:
                if default_prob is None:
                    raise ConfigurationError(
                        f"{path}:{lineno}: probability column missing and no default_prob given"
                    )
                p = default_prob
            if not (w > 0 and math.isfinite(w)):
                raise GraphValidationError(f"{path}:{lineno}: weight {w} must be > 0")
            if not 0 < p <= 1:
                raise GraphValidationError(f"{path}:{lineno}: probability {p} outside (0, 1]")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            raw.append((u, v, w, p))

    if duplicates:
        log.warning("%s: collapsed %d duplicate edge(s)", path, duplicates)
    labels = sorted({x for u, v, _, _ in raw for x in (u, v)})
    compact = {lab: i for i, lab in enumerate(labels)}
    edges = [(compact[u], compact[v], w, p) for u, v, w, p in raw]
    return UncertainGraph(
        len(labels), edges, labels, duplicate_edges=duplicates, has_attributes=complete
    )


def write_edge_list(graph, path, header=None):
    """Write 4-column ``u v weight prob`` lines using the original vertex ids."""
    with Path(path).open("w") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for (u, v), w, p in zip(graph.edges, graph.weights, graph.probs):
            fh.write(f"{graph.labels[u]} {graph.labels[v]} {w!r} {p!r}\n")


def synthesize_attributes(graph, seed, prob_range=DEFAULT_PROB_RANGE, weight_range=DEFAULT_WEIGHT_RANGE):
    """Overwrite every edge's attributes with random draws.

    Weights are continuous ``Uniform[low, high]`` and probabilities
    ``Uniform(low, high]``, both in edge-index order from one seeded stream.
    """
    p_lo, p_hi = (float(x) for x in prob_range)
    w_lo, w_hi = (float(x) for x in weight_range)
    if not (0.0 <= p_lo < p_hi <= 1.0):
        raise ConfigurationError(f"invalid probability range ({p_lo}, {p_hi}]")
    if not (0.0 < w_lo < w_hi and math.isfinite(w_hi)):
        raise ConfigurationError(f"invalid weight range [{w_lo}, {w_hi}]")
    if graph.m == 0:
        return graph
    rng = make_rng(seed)
    weights = rng.uniform(w_lo, w_hi, size=graph.m)
    # p_hi - span * U[0, 1) lies in (p_lo, p_hi]
    probs = p_hi - (p_hi - p_lo) * rng.random(graph.m)
    return graph.with_attributes(weights.tolist(), probs.tolist())


def hop_distances(graph, source, max_depth=None):
    """Unweighted BFS depth of every vertex reachable from ``source``."""
    source = graph.check_vertex(source)
    depth = {source: 0}
    queue = deque([source])
    adjacency = graph.adjacency
    while queue:
        x = queue.popleft()
        d = depth[x]
        if max_depth is not None and d >= max_depth:
            continue
        for y, _ in adjacency[x]:
            if y not in depth:
                depth[y] = d + 1
                queue.append(y)
    return depth


def two_hop_neighbors(graph, v):
    reach = hop_distances(graph, v, max_depth=2)
    del reach[v]
    return set(reach)
