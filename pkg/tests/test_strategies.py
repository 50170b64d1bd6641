import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_graph
from uskyline import (
    ConfigurationError,
    SelectionInfeasibleError,
    StrategyConfig,
    StrategyError,
    UncertainGraph,
    UnknownVertexError,
    clustering_coefficient,
    select_queries,
    two_hop_neighbors,
)


def unit(edges, n=None):
    return UncertainGraph.from_edges([(u, v, 1.0, 1.0) for u, v in edges], n=n)


def brute_cc(graph, v):
    nbrs = graph.neighbors(v)
    k = len(nbrs)
    if k < 2:
        return 0.0
    closed = sum(1 for a, b in itertools.combinations(nbrs, 2) if graph.has_edge(a, b))
    return closed / (k * (k - 1) / 2)


def test_clustering_examples():
    tri = unit([(0, 1), (1, 2), (0, 2)])
    assert clustering_coefficient(tri, 0) == 1.0
    star = unit([(0, k) for k in range(1, 5)])
    assert clustering_coefficient(star, 0) == 0.0
    assert clustering_coefficient(star, 1) == 0.0
    # K4 minus edge (2, 3): vertex 0 has neighbours 1, 2, 3 with links 1-2, 1-3
    k4m = unit([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert clustering_coefficient(k4m, 0) == pytest.approx(2 / 3)
    assert brute_cc(k4m, 0) == pytest.approx(2 / 3)
    with pytest.raises(UnknownVertexError):
        clustering_coefficient(k4m, 4)


def test_clustering_matches_triple_enumeration():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_graph(rng, 12, int(rng.integers(5, 40)))
        for v in range(g.n):
            assert clustering_coefficient(g, v) == pytest.approx(brute_cc(g, v))


def test_config_validation():
    with pytest.raises(ConfigurationError):
        StrategyConfig("ZZZ", 2)
    with pytest.raises(ConfigurationError):
        StrategyConfig("RAND", 0)
    with pytest.raises(ConfigurationError):
        StrategyConfig("HDEG", 2)
    with pytest.raises(ConfigurationError):
        StrategyConfig("HCLUS", 2, clustering_threshold=None)
    assert StrategyConfig("hdeg", 3, degree_threshold=2).kind == "HDEG"


def test_single_vertex_rand():
    g = random_graph(np.random.default_rng(0), 10, 12)
    q = select_queries(g, StrategyConfig("RAND", 1, seed=5))
    assert len(q) == 1 and 0 <= q.vertices[0] < 10


def test_path_graph_neighbourhood():
    path = unit([(0, 1), (1, 2), (2, 3), (3, 4)])
    # seeds that land on the centre vertex
    for seed in range(200):
        q = select_queries(path, StrategyConfig("RAND", 3, seed=seed))
        if q.vertices[0] == 2:
            assert set(q.vertices[1:]) <= {0, 1, 3, 4}
            break
    else:
        pytest.fail("no seed picked the centre vertex")


def test_hdeg_pool_respects_threshold():
    rng = np.random.default_rng(4)
    # heavy-tailed graph: a few hubs and a sparse background
    n = 400
    edges = set()
    for hub in range(10):
        for v in rng.choice(np.arange(10, n), 25, replace=False):
            edges.add((hub, int(v)))
    while len(edges) < 1200:
        a, b = sorted(int(x) for x in rng.integers(10, n, size=2))
        if a != b:
            edges.add((a, b))
    g = unit(sorted(edges), n=n)
    for seed in range(100):
        q = select_queries(g, StrategyConfig("HDEG", 5, degree_threshold=15, seed=seed))
        assert g.degree(q.vertices[0]) > 15


def test_hclus_first_vertex_has_positive_clustering():
    g = random_graph(np.random.default_rng(6), 60, 150)
    for seed in range(30):
        q = select_queries(g, StrategyConfig("HCLUS", 3, clustering_threshold=0.0, seed=seed))
        assert clustering_coefficient(g, q.vertices[0]) > 0.0


def test_empty_pool_and_infeasible():
    star = unit([(0, k) for k in range(1, 5)])
    with pytest.raises(StrategyError, match="degree > 10"):
        select_queries(star, StrategyConfig("HDEG", 2, degree_threshold=10))
    with pytest.raises(StrategyError, match="clustering"):
        select_queries(star, StrategyConfig("HCLUS", 2))
    with pytest.raises(SelectionInfeasibleError):
        select_queries(star, StrategyConfig("RAND", 6, max_attempts=20))
    assert not isinstance(StrategyError("x"), SelectionInfeasibleError)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 40),
    st.integers(1, 100),
    st.sampled_from(["RAND", "HDEG", "HCLUS"]),
    st.integers(1, 6),
    st.integers(0, 2**64 - 1),
)
def test_selection_properties(n, m, kind, k, seed):
    g = random_graph(np.random.default_rng(seed % 2**32), n, m)
    cfg = StrategyConfig(kind, k, degree_threshold=2, clustering_threshold=0.0, seed=seed)
    try:
        q = select_queries(g, cfg)
    except StrategyError:
        return
    vs = q.vertices
    assert len(vs) == k == len(set(vs))
    assert all(0 <= v < n for v in vs)
    assert set(vs[1:]) <= two_hop_neighbors(g, vs[0])
    if kind == "HDEG":
        assert g.degree(vs[0]) > 2
    if kind == "HCLUS":
        assert clustering_coefficient(g, vs[0]) > 0
    assert select_queries(g, cfg) == q
