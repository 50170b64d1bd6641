"""Possible-world sampling, exact world enumeration and two-terminal reliability."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EnumerationLimitError
from .seeds import make_rng

ENUMERATION_LIMIT = 20
SHARD_SIZE = 8192


def _edge_logs(graph):
    p = np.asarray(graph.probs, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(p), np.log1p(-p)


def _log_probs(masks, log_p, log_q):
    if masks.shape[1] == 0:
        return np.zeros(masks.shape[0])
    return np.where(masks, log_p, log_q).sum(axis=1)


@dataclass(frozen=True)
class WorldSample:
    """One deterministic subgraph: the edges kept and its log generation probability."""

    edge_mask: np.ndarray
    log_prob: float

    @property
    def prob(self):
        return math.exp(self.log_prob)

    def edge_indices(self):
        return np.flatnonzero(self.edge_mask).tolist()


@dataclass(eq=False)
class SampleSet:
    """A batch of possible worlds stored as a ``(count, m)`` boolean mask matrix.

    ``exhaustive`` marks a set produced by :func:`enumerate_worlds`: every
    world then appears exactly once and its empirical weight is its
    generation probability rather than ``1 / count``.
    """

    masks: np.ndarray
    log_probs: np.ndarray
    exhaustive: bool = False
    _unique: tuple | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.masks = np.asarray(self.masks, dtype=bool)
        self.log_probs = np.asarray(self.log_probs, dtype=float)
        if self.masks.ndim != 2 or self.masks.shape[0] != self.log_probs.shape[0]:
            raise ValueError("masks must be (count, m) with one log-probability per row")
        self.masks.setflags(write=False)
        self.log_probs.setflags(write=False)

    def __len__(self):
        return self.masks.shape[0]

    def __getitem__(self, i):
        return WorldSample(self.masks[i], float(self.log_probs[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @property
    def samples(self):
        return list(self)

    @property
    def probs(self):
        return np.exp(self.log_probs)

    def frequency_weights(self):
        """Empirical probability of each row: ``1/|R|``, or the exact world probability."""
        if self.exhaustive:
            return self.probs
        return np.full(len(self), 1.0 / len(self)) if len(self) else np.zeros(0)

    def unique_worlds(self):
        """Collapse repeated masks.

        Returns ``(masks, counts, log_probs)`` for the distinct rows, ordered by
        first occurrence. Shortest distances depend only on the mask, so per-world
        work can be done once per distinct world and scaled by its count.
        """
        if self._unique is None:
            if len(self) == 0:
                self._unique = (self.masks, np.zeros(0, dtype=np.int64), self.log_probs)
            else:
                packed = np.packbits(self.masks, axis=1)
                _, first, counts = np.unique(
                    packed, axis=0, return_index=True, return_counts=True
                )
                order = np.argsort(first, kind="stable")
                self._unique = (self.masks[first[order]], counts[order], self.log_probs[first[order]])
        return self._unique

    def world_weights(self, mode):
        """Distinct worlds with their accumulated mass under a weighting mode.

        ``frequency`` gives each drawn sample mass ``1/|R|`` (exact probability for
        an exhaustive set). ``paper_weighted`` gives each sample its own generation
        probability, normalised over the set; the scaling happens in log space
        because raw world probabilities underflow on graphs with thousands of edges.
        """
        masks, counts, log_probs = self.unique_worlds()
        if mode == "frequency":
            if self.exhaustive:
                return masks, np.exp(log_probs)
            return masks, counts / len(self)
        if mode == "paper_weighted":
            if len(counts) == 0:
                return masks, np.zeros(0)
            top = log_probs.max()
            weights = counts * np.exp(log_probs - top)
            return masks, weights / weights.sum()
        raise ValueError(f"unknown weighting mode {mode!r}")


def world_probability(graph, edge_mask):
    """Generation probability of the world keeping exactly the edges in ``edge_mask``."""
    mask = np.asarray(edge_mask, dtype=bool)
    if mask.ndim != 1 or mask.shape[0] != graph.m:
        raise ValueError(f"edge mask has length {mask.size}, graph has {graph.m} edges")
    log_p, log_q = _edge_logs(graph)
    total = float(np.where(mask, log_p, log_q).sum()) if graph.m else 0.0
    return math.exp(total)


def _draw_shard(probs, log_p, log_q, rows, seed, shard):
    rng = make_rng(seed, shard)
    masks = rng.random((rows, probs.shape[0])) < probs
    return masks, _log_probs(masks, log_p, log_q)


def draw_samples(graph, count, seed, workers=1):
    """Draw ``count`` independent worlds, keeping edge ``e`` with probability ``P(e)``.

    Samples are generated in fixed-size shards, each seeded from
    ``(seed, shard_index)``, so the result is the same for any ``workers``.
    """
    count = int(count)
    if count < 1:
        raise ValueError("sample count must be >= 1")
    probs = np.asarray(graph.probs, dtype=float)
    log_p, log_q = _edge_logs(graph)
    sizes = [min(SHARD_SIZE, count - start) for start in range(0, count, SHARD_SIZE)]
    jobs = [(probs, log_p, log_q, rows, seed, i) for i, rows in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _draw_shard(*job), jobs))
    else:
        parts = [_draw_shard(*job) for job in jobs]
    masks = np.concatenate([p[0] for p in parts], axis=0)
    log_probs = np.concatenate([p[1] for p in parts])
    return SampleSet(masks, log_probs)


def enumerate_worlds(graph, limit=ENUMERATION_LIMIT):
    """All ``2**m`` possible worlds; row ``k`` keeps edge ``i`` iff bit ``i`` of ``k`` is set."""
    m = graph.m
    if m > limit:
        raise EnumerationLimitError(m, limit)
    codes = np.arange(1 << m, dtype=np.int64)
    masks = ((codes[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(bool)
    log_p, log_q = _edge_logs(graph)
    return SampleSet(masks, _log_probs(masks, log_p, log_q), exhaustive=True)


class DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def connected_in_world(graph, mask, u, v):
    ds = DisjointSet(graph.n)
    edges = graph.edges
    for i in np.flatnonzero(mask):
        a, b = edges[i]
        ds.union(a, b)
    return ds.find(u) == ds.find(v)


def reliability(graph, u, v, mode="exact", count=100_000, seed=0):
    """Probability that ``u`` and ``v`` are connected.

    ``mode="exact"`` sums world probabilities over all enumerated worlds;
    ``mode="monte_carlo"`` returns the connected fraction of ``count`` sampled worlds.
    """
    u = graph.check_vertex(u)
    v = graph.check_vertex(v)
    if u == v:
        raise ValueError("reliability is only defined for distinct vertices")
    if mode == "exact":
        worlds = enumerate_worlds(graph)
    elif mode == "monte_carlo":
        worlds = draw_samples(graph, count, seed)
    else:
        raise ValueError(f"unknown reliability mode {mode!r}")
    masks, weights = worlds.world_weights("frequency")
    total = 0.0
    for mask, weight in zip(masks, weights):
        if connected_in_world(graph, mask, u, v):
            total += weight
    return float(min(total, 1.0))
