"""Dominance and skyline extraction over a candidate x query distance matrix.

Lower is better in every dimension. ``inf`` is larger than any finite value
and equal to itself, so identical rows never dominate each other and are all
kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SkylineResult:
    vertices: tuple
    matrix_rows: tuple
    matrix: object = None

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def dominates(a, b):
    if len(a) != len(b):
        raise ValueError(f"vectors differ in length ({len(a)} vs {len(b)})")
    if len(a) == 0:
        raise ValueError("vectors must have at least one coordinate")
    return _dominates(a, b)


def _dominates(a, b):
    strict = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


def bnl_skyline(matrix):
    """Block-nested-loop skyline with an unbounded in-memory window."""
    rows = matrix.rows()
    window = []  # row indices, all mutually non-dominated
    for i, row in enumerate(rows):
        dominated = False
        survivors = []
        for j in window:
            other = rows[j]
            if _dominates(other, row):
                dominated = True
                break
            if not _dominates(row, other):
                survivors.append(j)
        if dominated:
            continue
        survivors.append(i)
        window = survivors
    keep = sorted(window)
    return SkylineResult(
        tuple(matrix.candidates[i] for i in keep),
        tuple(rows[i] for i in keep),
        matrix,
    )


def naive_skyline(matrix):
    """All-pairs dominance filter, vectorised per row."""
    values = np.asarray(matrix.values, dtype=float)
    keep = []
    for i in range(values.shape[0]):
        r = values[i]
        dominated = (values <= r).all(axis=1) & (values < r).any(axis=1)
        if not dominated.any():
            keep.append(i)
    return SkylineResult(
        tuple(matrix.candidates[i] for i in keep),
        tuple(tuple(values[i].tolist()) for i in keep),
        matrix,
    )
