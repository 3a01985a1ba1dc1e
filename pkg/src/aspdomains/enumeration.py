"""Depth-first enumeration of maximal Arrow single-peaked domains.

A (partial) domain is a string with one symbol per triple of ``1..n`` in
lexicographic triple order, using the never-bottom symbols and an empty
symbol that compares largest.

Two modes are offered. ``posthoc`` branches on ``1N3`` and ``2N3`` only,
which reaches exactly the unitary domains (every class has one), and
reduces to isomorphism classes at the end. ``insearch`` drops any partial
string that some relabeling maps to a lexicographically smaller one, so
only orbit minima survive. An orbit minimum may use ``3N3`` (it does for
most classes from ``n = 5`` on), so this mode branches on all three
never-bottom symbols. Both modes report a class by the least string among
its unitary relabelings. Both share the same pruning:

* the surviving orders must keep at least ``2**(n-1)`` members,
* every decided triple must still realize all four orders its condition
  permits, and every undecided triple must be able to,
* every fully decided window of 4 or 5 alternatives must carry a
  condition string that on its own defines a maximal domain.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Literal, Optional, Sequence

import numpy as np

from . import _kernels, tables
from .never import (
    BOTTOM,
    ConditionAssignment,
    NeverCondition,
    domain_from_conditions,
    is_maximal_condorcet,
    symbol_key,
)
from .orders import Domain, DomainError

log = logging.getLogger(__name__)

Mode = Literal["posthoc", "insearch"]

MIN_N, MAX_N = 3, 9
WINDOW_SIZES = (4, 5)
DEFAULT_FRONTIER_DEPTH = 2

# symbol keys of xN3 by Fishburn position x (see never.SYMBOL_ORDER)
_N3_KEY = {1: symbol_key("1N3"), 2: symbol_key("2N3"), 3: symbol_key("3N3")}
_EMPTY_KEY = symbol_key("-")


@dataclass(frozen=True)
class SearchNode:
    """A condition string whose first ``depth`` triples are decided."""

    partial: ConditionAssignment
    depth: int

    @classmethod
    def from_symbols(cls, n: int, symbols: Sequence[str]) -> SearchNode:
        symbols = list(symbols)
        padded = symbols + ["-"] * (comb(n, 3) - len(symbols))
        node = cls(ConditionAssignment.from_symbols(n, padded), len(symbols))
        if any(c is None for c in node.partial.conditions[: node.depth]) or any(
            c is not None for c in node.partial.conditions[node.depth :]
        ):
            raise DomainError("a search node is a decided prefix followed by empty symbols")
        return node

    @property
    def n(self) -> int:
        return self.partial.n


@dataclass
class EnumerationResult:
    """Non-isomorphic maximal Arrow single-peaked domains on ``n`` alternatives."""

    n: int
    strings: tuple[ConditionAssignment, ...]
    _order_indices: Optional[tuple[np.ndarray, ...]] = field(default=None, repr=False)
    _domains: Optional[tuple[Domain, ...]] = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return len(self.strings)

    @property
    def domains(self) -> tuple[Domain, ...]:
        if self._domains is None:
            if self._order_indices is not None:
                orders = tables.all_orders(self.n)
                self._domains = tuple(
                    Domain((tuple(int(a) for a in row) for row in orders[idx]), range(1, self.n + 1))
                    for idx in self._order_indices
                )
            else:
                self._domains = tuple(domain_from_conditions(s) for s in self.strings)
        return self._domains

    def symbol_strings(self) -> list[str]:
        return [" ".join(s.symbols()) for s in self.strings]


def _string_to_assignment(n: int, subjects: Sequence[int]) -> ConditionAssignment:
    ts = tables.triples(n)
    return ConditionAssignment(n, tuple(NeverCondition(t[s - 1], BOTTOM) for t, s in zip(ts, subjects)))


# ---------------------------------------------------------------------------
# window feasibility tables


def _required_mask(position: int) -> int:
    return tables.FULL_PATTERN_MASK & ~tables.PATTERN_MASK[(position, BOTTOM)]


_REQUIRED = {s: _required_mask(s) for s in (1, 2, 3)}


@lru_cache(maxsize=None)
def window_table(w: int) -> np.ndarray:
    """Feasibility of every never-bottom string on ``w`` alternatives.

    The index is the string read in base 3, digit ``p`` (weight ``3**p``)
    being ``x - 1`` for the symbol ``xN3`` on the ``p``-th triple. A string is
    feasible when the domain it defines is a copious maximal Condorcet
    domain of size ``2**(w-1)``.
    """
    T = comb(w, 3)
    P = tables.pattern_matrix(w)
    codes = np.arange(3**T)
    digits = (codes[:, None] // (3 ** np.arange(T))[None, :]) % 3
    # allowed[s, o, t]: order o keeps position s+1 off the bottom of triple t
    last = np.array([p[2] for p in tables.PATTERNS])[P]
    keep = np.ones((codes.size, P.shape[0]), dtype=bool)
    for t in range(T):
        keep &= last[None, :, t] != digits[:, t, None] + 1
    sizes = keep.sum(axis=1)
    out = np.zeros(codes.size, dtype=bool)
    onehot = np.stack([(P == p) for p in range(6)], axis=2).reshape(P.shape[0], -1).astype(np.int32)
    for code in np.nonzero(sizes == 1 << (w - 1))[0]:
        present = (keep[code].astype(np.int32) @ onehot).reshape(T, 6) > 0
        subjects = digits[code] + 1
        copious = all(present[t, p] for t in range(T) for p in range(6) if _REQUIRED[subjects[t]] >> p & 1)
        if not copious:
            continue
        dom = domain_from_conditions(_string_to_assignment(w, subjects))
        out[code] = is_maximal_condorcet(dom)
    return out


@lru_cache(maxsize=None)
def _windows_closing_at(n: int, w: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each triple index, the windows whose lexicographically last triple it is.

    Each window is given as the global indices of its triples in local
    lexicographic order.
    """
    tidx = tables.triple_index(n)
    out: list[list[tuple[int, ...]]] = [[] for _ in range(comb(n, 3))]
    for window in combinations(range(1, n + 1), w):
        local = [tidx[t] for t in combinations(window, 3)]
        out[max(local)].append(tuple(local))
    return tuple(tuple(x) for x in out)


def _window_code(subjects: Sequence[int], local: Sequence[int]) -> int:
    code = 0
    weight = 1
    for t in local:
        code += (subjects[t] - 1) * weight
        weight *= 3
    return code


def _node_subjects(node: SearchNode) -> Optional[list[int]]:
    """Fishburn positions of the decided never-bottom subjects, or None if another rank occurs."""
    out = []
    for t, c in zip(node.partial.triples[: node.depth], node.partial.conditions[: node.depth]):
        if c.rank != BOTTOM:
            return None
        out.append(t.index(c.subject) + 1)
    return out


def prune_partial(node: SearchNode, window: int) -> bool:
    """True when some fully decided ``window``-subset cannot extend to a maximal domain."""
    if window not in WINDOW_SIZES:
        raise ValueError(f"window size must be one of {WINDOW_SIZES}")
    n = node.n
    if n < window:
        return False
    subjects = _node_subjects(node)
    if subjects is None:
        # a never-top or never-middle condition: not Arrow single-peaked on that triple
        return True
    table = window_table(window)
    closing = _windows_closing_at(n, window)
    for t in range(node.depth):
        for local in closing[t]:
            if not table[_window_code(subjects, local)]:
                return True
    return False


# ---------------------------------------------------------------------------
# isomorphism rejection


@lru_cache(maxsize=None)
def _unsorted_triple_index(n: int) -> tuple[int, ...]:
    """Flat table: entry ``(a*(n+1) + b)*(n+1) + c`` is the index of ``sorted((a, b, c))``."""
    tidx = tables.triple_index(n)
    m = n + 1
    out = [-1] * (m * m * m)
    for t, idx in tidx.items():
        for a, b, c in ((t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[0], t[2]),
                        (t[1], t[2], t[0]), (t[2], t[0], t[1]), (t[2], t[1], t[0])):
            out[(a * m + b) * m + c] = idx
    return tuple(out)


@lru_cache(maxsize=None)
def _key_array() -> np.ndarray:
    """``keytab[p, r]`` is the symbol key of ``pNr``."""
    out = np.full((4, 4), _EMPTY_KEY, dtype=np.int64)
    for p in (1, 2, 3):
        for r in (1, 2, 3):
            out[p, r] = symbol_key(f"{p}N{r}")
    return out


@lru_cache(maxsize=None)
def _triple_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    trips = np.zeros((max(comb(n, 3), 1), 3), dtype=np.int64)
    if comb(n, 3):
        trips[:] = np.array(tables.triples(n), dtype=np.int64)
    return trips, np.asarray(_unsorted_triple_index(n), dtype=np.int64)


def min_image_reject(node: SearchNode) -> bool:
    """True when a relabeling maps the node's string to a lexicographically smaller one.

    Positions after the decided prefix are empty, which compares largest.
    """
    d = node.depth
    n = node.n
    conds = node.partial.conditions[:d]
    subj = np.array([c.subject for c in conds] or [0], dtype=np.int64)
    rank = np.array([c.rank for c in conds] or [0], dtype=np.int64)
    cur = np.array(node.partial.key()[:d] or (0,), dtype=np.int64)
    trips, flat = _triple_arrays(n)
    return bool(_kernels.min_image_smaller(n, d, subj, rank, cur, trips, flat, _key_array()))


def min_image_reject_bruteforce(node: SearchNode) -> bool:
    """Reference for :func:`min_image_reject` trying all ``n!`` relabelings."""
    from itertools import permutations

    n = node.n
    tidx = tables.triple_index(n)
    current = list(node.partial.key())
    for perm in permutations(range(1, n + 1)):
        g = (0,) + perm
        image = [_EMPTY_KEY] * len(current)
        for t, c in zip(node.partial.triples, node.partial.conditions):
            if c is None:
                continue
            nt = tuple(sorted(g[a] for a in t))
            image[tidx[nt]] = symbol_key(f"{nt.index(g[c.subject]) + 1}N{c.rank}")
        if image < current:
            return True
    return False


# ---------------------------------------------------------------------------
# canonical strings of complete domains


def canonical_string(n: int, subjects: Sequence[int], order_idx: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    """Least unitary image of a complete never-bottom string.

    ``subjects`` are the Fishburn positions of the ``xN3`` symbols and
    ``order_idx`` the indices of the orders the string defines. Every
    relabeling that turns a member order into ``1..n`` is tried; the least
    resulting symbol-key string is returned with the order indices of the
    relabelled domain.
    """
    ts = np.array(tables.triples(n), dtype=np.int64).reshape(-1, 3)
    subj = ts[np.arange(ts.shape[0]), np.asarray(subjects, dtype=np.int64) - 1]
    # g[o, a] = new label of old alternative a when order o becomes 1..n
    g = tables.positions(n)[order_idx].astype(np.int64) + 1
    ga, gb, gc, gx = g[:, ts[:, 0]], g[:, ts[:, 1]], g[:, ts[:, 2]], g[:, subj]
    flat = np.asarray(_unsorted_triple_index(n), dtype=np.int64)
    m1 = n + 1
    new_idx = flat[(ga * m1 + gb) * m1 + gc]
    # Fishburn position of the relabelled subject, minus one
    new_pos = (ga < gx).astype(np.int64) + (gb < gx) + (gc < gx)
    keys = np.asarray([_N3_KEY[1], _N3_KEY[2], _N3_KEY[3]], dtype=np.int64)[new_pos]
    image = np.empty_like(keys)
    image[np.arange(keys.shape[0])[:, None], new_idx] = keys
    best = int(np.lexsort(image.T[::-1])[0])
    relabelled = g[best][tables.all_orders(n)[order_idx].astype(np.int64)]
    new_orders = np.sort(tables.rank_orders(relabelled))
    return tuple(int(k) for k in image[best]), new_orders


def orbit_minimum_bruteforce(assignment: ConditionAssignment, unitary_only: bool = False) -> tuple[int, ...]:
    """Least symbol-key string over all ``n!`` relabelings of a complete assignment.

    With ``unitary_only`` the minimum is taken over images that use only
    ``1N3`` and ``2N3``.
    """
    from itertools import permutations

    n = assignment.n
    tidx = tables.triple_index(n)
    allowed = {_N3_KEY[1], _N3_KEY[2]}
    best = None
    for perm in permutations(range(1, n + 1)):
        g = (0,) + perm
        image = [_EMPTY_KEY] * len(assignment.conditions)
        for t, c in zip(assignment.triples, assignment.conditions):
            if c is None:
                continue
            nt = tuple(sorted(g[a] for a in t))
            image[tidx[nt]] = symbol_key(f"{nt.index(g[c.subject]) + 1}N{c.rank}")
        if unitary_only and not set(image) <= allowed:
            continue
        if best is None or image < best:
            best = image
    return tuple(best)


def _keys_to_assignment(n: int, keys: Sequence[int]) -> ConditionAssignment:
    from .never import SYMBOL_ORDER

    return ConditionAssignment.from_symbols(
        n, [SYMBOL_ORDER[k] if k < len(SYMBOL_ORDER) else "-" for k in keys]
    )


# ---------------------------------------------------------------------------
# the search

ALPHABETS = {"posthoc": (1, 2), "insearch": (1, 2, 3)}


class _Search:
    """Arrays handed to the compiled search for one ``(n, mode)``."""

    def __init__(self, n: int, mode: Mode):
        self.n = n
        self.T = comb(n, 3)
        self.P = tables.pattern_matrix(n)
        self.bits = np.left_shift(np.uint8(1), self.P)
        # allowed[s, pattern]: the pattern keeps Fishburn position s off the bottom
        self.allowed = np.zeros((4, 6), dtype=np.bool_)
        for s in (1, 2, 3):
            self.allowed[s] = [p[2] != s for p in tables.PATTERNS]
        self.req = np.array([0] + [_REQUIRED[s] for s in (1, 2, 3)], dtype=np.uint8)
        self.alphabet = np.array(ALPHABETS[mode], dtype=np.int64)
        self.insearch = mode == "insearch"
        self.windows = []
        for w in WINDOW_SIZES:
            closing = _windows_closing_at(n, w) if w <= n else ((),) * self.T
            ptr = np.zeros(self.T + 1, dtype=np.int64)
            rows = []
            for t, group in enumerate(closing):
                rows.extend(group)
                ptr[t + 1] = len(rows)
            width = comb(w, 3)
            data = np.array(rows, dtype=np.int64).reshape(-1, width) if rows else np.zeros((0, width), dtype=np.int64)
            table = window_table(w) if w <= n else np.ones(1, dtype=np.bool_)
            self.windows.extend([table, ptr, data])
        self.trips, self.flat = _triple_arrays(n)
        self.pos = tables.positions(n)

    def run(self, prefix: Sequence[int], stop: int) -> tuple[np.ndarray, int]:
        rows, count, nodes = _kernels.search(
            self.n, self.T, self.P, self.bits, self.allowed, self.req, self.alphabet, 1 << (self.n - 1),
            *self.windows, self.insearch, self.trips, self.flat, _key_array(), self.pos,
            np.asarray(prefix, dtype=np.int64), stop,
        )
        return rows[:count], int(nodes)


@lru_cache(maxsize=4)
def _search_for(n: int, mode: Mode) -> _Search:
    return _Search(n, mode)


def _explore_subtree(args) -> tuple[np.ndarray, int]:
    n, mode, prefix = args
    search = _search_for(n, mode)
    return search.run(prefix, search.T)


def frontier_nodes(n: int, mode: Mode, depth: int) -> list[tuple[int, ...]]:
    """Surviving prefixes of length ``depth`` (capped at the string length)."""
    search = _search_for(n, mode)
    rows, _ = search.run((), min(depth, search.T))
    return [tuple(int(s) for s in row[: min(depth, search.T)]) for row in rows]


def default_jobs() -> int:
    env = os.environ.get("ASPDOMAINS_JOBS")
    return max(1, int(env)) if env else 1


class EnumerationError(RuntimeError):
    """The in-search isomorphism rejection let two members of one class through."""


def enumerate_asp(
    n: int,
    mode: Mode = "insearch",
    jobs: Optional[int] = None,
    frontier_depth: int = DEFAULT_FRONTIER_DEPTH,
) -> EnumerationResult:
    """All non-isomorphic maximal Arrow single-peaked domains on ``n`` alternatives.

    Classes are returned sorted by their canonical string (the least string
    among the class's unitary relabelings). The result does not depend on
    ``mode``, ``jobs`` or ``frontier_depth``.
    """
    if not MIN_N <= n <= MAX_N:
        raise DomainError(f"n must lie in [{MIN_N}, {MAX_N}], got {n}")
    if mode not in ALPHABETS:
        raise ValueError(f"unknown mode {mode!r}")
    jobs = default_jobs() if jobs is None else max(1, jobs)
    frontier = frontier_nodes(n, mode, frontier_depth)
    log.info("n=%d mode=%s: %d frontier nodes at depth %d", n, mode, len(frontier), frontier_depth)
    tasks = [(n, mode, prefix) for prefix in frontier]
    found: set[bytes] = set()
    nodes = 0

    def merge(i, part):
        nonlocal nodes
        rows, visited = part
        nodes += visited
        for row in rows:
            key = row.tobytes()
            if key in found and mode == "insearch":
                raise EnumerationError(f"class {tuple(row)} reached twice")
            found.add(key)
        log.debug("frontier node %d/%d done (%d leaves)", i + 1, len(tasks), len(rows))

    if jobs == 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            merge(i, _explore_subtree(task))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, part in enumerate(pool.map(_explore_subtree, tasks, chunksize=1)):
                merge(i, part)
    log.info("n=%d: %d classes, %d search nodes", n, len(found), nodes)

    keys = sorted(tuple(int(k) for k in np.frombuffer(b, dtype=np.int8)) for b in found)
    strings = tuple(_keys_to_assignment(n, k) for k in keys)
    return EnumerationResult(n, strings, tuple(_orders_of_keys(n, k) for k in keys))


def _orders_of_keys(n: int, keys: Sequence[int]) -> np.ndarray:
    search = _search_for(n, "posthoc")
    allowed = search.allowed[np.asarray(keys, dtype=np.int64) + 1]
    return _kernels.orders_of_string(search.P, allowed)


def count_asp(n: int, jobs: Optional[int] = None, frontier_depth: int = DEFAULT_FRONTIER_DEPTH) -> int:
    """Number of non-isomorphic maximal Arrow single-peaked domains on ``n`` alternatives."""
    return enumerate_asp(n, "insearch", jobs=jobs, frontier_depth=frontier_depth).count
