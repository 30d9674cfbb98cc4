"""Stability of top-word sets across topic counts.

A solution's top words are the union over topics of the words whose
probability clears the uniform threshold 1 / n_words. Comparing these
sets across neighboring topic counts with the Jaccard index measures
how stable the vocabulary of "real" topics is while the granularity
changes; a flat, high diagonal curve means the threshold vocabulary
barely moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .core import PhiMatrix


@dataclass(frozen=True)
class TopWordSet:
    """Above-threshold word set of one solution.

    Members are word ids for in-memory matrices or word strings when
    rebuilt from exported files; either way they are compared by
    set algebra only.
    """

    n_topics: int
    words: frozenset

    def __post_init__(self):
        if self.n_topics < 1:
            raise ValueError("n_topics must be positive")
        object.__setattr__(self, "words", frozenset(self.words))


def top_words(phi: PhiMatrix) -> TopWordSet:
    """Union over topics of words with probability above 1 / n_words."""
    mask = (phi.values > 1.0 / phi.n_words).any(axis=1)
    ids = np.flatnonzero(mask)
    return TopWordSet(n_topics=phi.n_topics, words=frozenset(int(i) for i in ids))


def ranked_top_words(phi: PhiMatrix) -> list[int]:
    """Above-threshold word ids, best first.

    Ranked by each word's highest per-topic probability, descending;
    ties break to the lower word id.
    """
    best = phi.values.max(axis=1)
    mask = best > 1.0 / phi.n_words
    ids = np.flatnonzero(mask)
    order = np.argsort(-best[ids], kind="stable")
    return [int(i) for i in ids[order]]


def jaccard(a: TopWordSet, b: TopWordSet) -> float:
    """Jaccard index |a & b| / |a | b| of two top-word sets.

    Two empty sets have no defined index; that case is reported as
    NaN so downstream tables can show a missing value.
    """
    union = a.words | b.words
    if not union:
        return math.nan
    return len(a.words & b.words) / len(union)


@dataclass(frozen=True)
class JaccardMatrix:
    """Pairwise Jaccard indices over a sequence of solutions.

    t_values holds the topic count of each row/column in order;
    values is symmetric with a unit diagonal wherever the sets are
    nonempty (NaN marks undefined cells).
    """

    t_values: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        n = len(self.t_values)
        if v.shape != (n, n):
            raise ValueError(
                f"matrix shape {v.shape} does not match {n} topic counts"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "t_values", tuple(int(t) for t in self.t_values))


def jaccard_matrix(solutions: Sequence[TopWordSet]) -> JaccardMatrix:
    """Pairwise Jaccard indices of the given top-word sets.

    Cells are computed once per unordered pair and mirrored, so the
    result is exactly symmetric. A single solution yields a 1x1
    matrix.
    """
    if len(solutions) < 1:
        raise ValueError("need at least one solution")
    n = len(solutions)
    values = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            values[i, j] = values[j, i] = jaccard(solutions[i], solutions[j])
    return JaccardMatrix(
        t_values=tuple(s.n_topics for s in solutions), values=values
    )


def diagonal_curve(matrix: JaccardMatrix) -> list[tuple[int, float]]:
    """Jaccard index of each solution with its successor.

    Returns (topic_count, index) pairs for consecutive rows, tagged
    with the first row's topic count; empty for a 1x1 matrix.
    """
    return [
        (matrix.t_values[i], float(matrix.values[i, i + 1]))
        for i in range(len(matrix.t_values) - 1)
    ]


def top_word_set_from_words(
    n_topics: int, words: Sequence[Hashable]
) -> TopWordSet:
    """Build a TopWordSet from explicit members (for reloaded files)."""
    return TopWordSet(n_topics=n_topics, words=frozenset(words))
