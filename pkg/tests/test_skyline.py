import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_skyline_rows
from uskyline import DistanceMatrix, bnl_skyline, dominates, naive_skyline

INF = math.inf


def test_dominates_examples():
    assert dominates((1, 2), (2, 2))
    assert not dominates((1, 2), (1, 2))
    assert not dominates((1, 3), (2, 2))
    assert not dominates((2, 2), (1, 3))
    assert dominates((1, INF), (1, INF)) is False
    assert dominates((5, 1), (INF, 1))
    with pytest.raises(ValueError):
        dominates((1,), (1, 2))


def test_bnl_examples():
    m = DistanceMatrix.from_rows([(1, 2), (2, 1), (2, 2)], candidates=("a", "b", "c"))
    assert set(bnl_skyline(m).vertices) == {"a", "b"}
    assert set(naive_skyline(m).vertices) == {"a", "b"}
    one = DistanceMatrix.from_rows([(4, 4)], candidates=(9,))
    assert bnl_skyline(one).vertices == (9,)
    assert bnl_skyline(one).matrix_rows == ((4.0, 4.0),)
    empty = DistanceMatrix.from_rows([], queries=(0, 1))
    assert bnl_skyline(empty).vertices == () == naive_skyline(empty).vertices


def test_duplicates_all_kept():
    m = DistanceMatrix.from_rows([(1, 1), (1, 1), (2, 0), (3, 3)])
    assert bnl_skyline(m).vertices == (0, 1, 2)


def test_bnl_matches_naive_on_random_points():
    rng = np.random.default_rng(1)
    rows = rng.uniform(0, 100, size=(200, 2))
    m = DistanceMatrix.from_rows(rows.tolist())
    assert set(bnl_skyline(m).vertices) == set(naive_skyline(m).vertices)
    assert list(naive_skyline(m).vertices) == naive_skyline_rows(rows.tolist())


def rows_strategy():
    value = st.one_of(st.integers(0, 5).map(float), st.just(INF))
    return st.integers(1, 4).flatmap(
        lambda d: st.lists(st.tuples(*[value] * d), min_size=0, max_size=40)
    )


@settings(max_examples=200, deadline=None)
@given(rows_strategy(), st.randoms(use_true_random=False))
def test_skyline_properties(rows, rnd):
    dim = len(rows[0]) if rows else 2
    m = DistanceMatrix.from_rows(rows, queries=range(dim))
    sky = set(bnl_skyline(m).vertices)
    assert sky == set(naive_skyline(m).vertices)
    assert sky == set(naive_skyline_rows(rows))
    for r in sky:
        assert not any(dominates(rows[s], rows[r]) for s in range(len(rows)) if s != r)
    for r in set(range(len(rows))) - sky:
        assert any(dominates(rows[s], rows[r]) for s in sky)
    order = list(range(len(rows)))
    rnd.shuffle(order)
    shuffled = DistanceMatrix.from_rows([rows[i] for i in order], candidates=order, queries=range(dim))
    assert set(bnl_skyline(shuffled).vertices) == sky


@settings(max_examples=50, deadline=None)
@given(st.lists(st.one_of(st.floats(0, 50), st.just(INF)), min_size=1, max_size=30))
def test_single_query_keeps_minimum_rows(col):
    m = DistanceMatrix.from_rows([(x,) for x in col])
    best = min(col)
    assert set(bnl_skyline(m).vertices) == {i for i, x in enumerate(col) if x == best}
