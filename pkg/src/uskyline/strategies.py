"""Query-vertex selection: RAND, HDEG and HCLUS."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError, SelectionInfeasibleError, StrategyError
from .graph import two_hop_neighbors
from .pruning import QuerySet
from .seeds import make_rng

KINDS = ("RAND", "HDEG", "HCLUS")
DEFAULT_MAX_ATTEMPTS = 100


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    query_size: int
    degree_threshold: int | None = None
    clustering_threshold: float | None = 0.0
    seed: int = 0
    max_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self):
        kind = str(self.kind).upper()
        if kind not in KINDS:
            raise ConfigurationError(f"unknown strategy {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        if int(self.query_size) < 1:
            raise ConfigurationError("query_size must be >= 1")
        if kind == "HDEG" and (self.degree_threshold is None or self.degree_threshold < 0):
            raise ConfigurationError("HDEG needs a non-negative degree_threshold")
        if kind == "HCLUS" and (self.clustering_threshold is None or self.clustering_threshold < 0):
            raise ConfigurationError("HCLUS needs a non-negative clustering_threshold")
        if self.max_attempts < 1:
            raise ConfigurationError("max_attempts must be >= 1")


def clustering_coefficient(graph, v):
    """Local clustering coefficient from topology alone."""
    v = graph.check_vertex(v)
    nbrs = graph.neighbors(v)
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = 0
    for i in range(k):
        for j in range(i + 1, k):
            if graph.has_edge(nbrs[i], nbrs[j]):
                links += 1
    return 2.0 * links / (k * (k - 1))


def seed_pool(graph, config):
    if config.kind == "RAND":
        return list(range(graph.n))
    if config.kind == "HDEG":
        pool = [v for v in range(graph.n) if graph.degree(v) > config.degree_threshold]
        what = f"degree > {config.degree_threshold}"
    else:
        pool = [
            v for v in range(graph.n)
            if clustering_coefficient(graph, v) > config.clustering_threshold
        ]
        what = f"clustering coefficient > {config.clustering_threshold}"
    if not pool:
        raise StrategyError(f"{config.kind}: no vertex has {what}")
    return pool


def select_queries(graph, config):
    """Pick a seed vertex from the strategy's pool, then ``k-1`` of its two-hop neighbours.

    A seed whose two-hop neighbourhood is too small is redrawn, each attempt
    using its own child stream of ``config.seed``.
    """
    if graph.n == 0:
        raise StrategyError("graph has no vertices")
    pool = seed_pool(graph, config)
    k = int(config.query_size)
    for attempt in range(config.max_attempts):
        rng = make_rng(config.seed, attempt)
        first = pool[int(rng.integers(len(pool)))]
        if k == 1:
            return QuerySet((first,))
        near = sorted(two_hop_neighbors(graph, first))
        if len(near) < k - 1:
            continue
        rest = rng.choice(len(near), size=k - 1, replace=False)
        return QuerySet((first, *(near[int(i)] for i in rest)))
    raise SelectionInfeasibleError(
        f"{config.kind}: no seed vertex with at least {k - 1} two-hop neighbours "
        f"after {config.max_attempts} attempts"
    )
