"""Cached lookup tables over the full set of linear orders L(n).

Everything here is keyed by ``n`` and built lazily once per process. Orders
of L(n) are indexed by their position in lexicographic order, which is the
order produced by ``itertools.permutations``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

# Local patterns of a triple i<j<k, as the restricted order written in
# Fishburn positions (1 = i, 2 = j, 3 = k), in lexicographic order.
PATTERNS: tuple[tuple[int, int, int], ...] = tuple(itertools.permutations((1, 2, 3)))


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(itertools.combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: idx for idx, t in enumerate(triples(n))}


@lru_cache(maxsize=None)
def all_orders(n: int) -> np.ndarray:
    """``n! x n`` array of all orders, lexicographically sorted."""
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8).reshape(-1, n)


@lru_cache(maxsize=None)
def order_index(n: int) -> dict[tuple[int, ...], int]:
    return {tuple(int(a) for a in row): i for i, row in enumerate(all_orders(n))}


@lru_cache(maxsize=None)
def positions(n: int) -> np.ndarray:
    """``pos[o, a]`` is the 0-based rank of alternative ``a`` (column ``a``) in order ``o``."""
    orders = all_orders(n)
    pos = np.zeros((orders.shape[0], n + 1), dtype=np.int8)
    rows = np.arange(orders.shape[0])[:, None]
    pos[rows, orders.astype(np.int64)] = np.arange(n, dtype=np.int8)[None, :]
    return pos


def pattern_code(pi, pj, pk):
    """Index into :data:`PATTERNS` from the positions of i, j, k (works on arrays)."""
    ri = (pi > pj).astype(np.int8) + (pi > pk)
    rj = (pj > pi).astype(np.int8) + (pj > pk)
    first = np.where(ri == 0, 1, np.where(rj == 0, 2, 3))
    second = np.where(ri == 1, 1, np.where(rj == 1, 2, 3))
    third = 6 - first - second
    return ((first - 1) * 2 + (second > third)).astype(np.uint8)


@lru_cache(maxsize=None)
def pattern_matrix(n: int) -> np.ndarray:
    """``P[o, t]`` is the pattern index of order ``o`` restricted to triple ``t``."""
    pos = positions(n)
    ts = np.array(triples(n), dtype=np.int64).reshape(-1, 3)
    pi = pos[:, ts[:, 0]]
    pj = pos[:, ts[:, 1]]
    pk = pos[:, ts[:, 2]]
    return np.ascontiguousarray(pattern_code(pi, pj, pk))


def pattern_of(restricted: tuple[int, int, int], triple: tuple[int, int, int]) -> int:
    local = tuple(triple.index(a) + 1 for a in restricted)
    return PATTERNS.index(local)


# PATTERN_MASK[s][r]: bitmask over the 6 patterns of those placing Fishburn
# position s at rank r (both 1-based).
PATTERN_MASK: dict[tuple[int, int], int] = {
    (s, r): sum(1 << idx for idx, p in enumerate(PATTERNS) if p[r - 1] == s)
    for s in (1, 2, 3)
    for r in (1, 2, 3)
}

FULL_PATTERN_MASK = (1 << 6) - 1


@lru_cache(maxsize=None)
def _has_never_condition_table() -> tuple[bool, ...]:
    out = []
    for mask in range(1 << 6):
        out.append(any(mask & m == 0 for m in PATTERN_MASK.values()))
    return tuple(out)


def has_never_condition(pattern_mask: int) -> bool:
    """Whether a set of triple patterns leaves some (position, rank) pair unrealized."""
    return _has_never_condition_table()[pattern_mask]


@lru_cache(maxsize=None)
def never_condition_lookup() -> np.ndarray:
    return np.array(_has_never_condition_table(), dtype=bool)


@lru_cache(maxsize=None)
def _factorials(n: int) -> np.ndarray:
    out = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        out[i] = out[i + 1] * (n - 1 - i)
    return out


def rank_orders(rows: np.ndarray) -> np.ndarray:
    """Lexicographic index in L(n) of each row (a permutation of 1..n)."""
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    smaller_later = (rows[:, None, :] < rows[:, :, None]) & np.triu(np.ones((n, n), dtype=bool), 1)[None]
    return smaller_later.sum(axis=2) @ _factorials(n)
