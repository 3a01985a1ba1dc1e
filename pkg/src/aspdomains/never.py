"""Never conditions on triples, Condorcet tests and Arrow single-peakedness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from . import tables
from .orders import Domain, DomainError, restrict_order

Triple = tuple[int, int, int]

TOP, MIDDLE, BOTTOM = 1, 2, 3

# Fishburn symbols in comparison order; EMPTY sorts after all of them.
SYMBOL_ORDER: tuple[str, ...] = ("1N3", "2N3", "3N3", "1N1", "2N1", "3N1", "1N2", "2N2", "3N2")
EMPTY = "-"
_SYMBOL_KEY = {s: i for i, s in enumerate(SYMBOL_ORDER)}
_SYMBOL_KEY[EMPTY] = len(SYMBOL_ORDER)


def symbol_key(symbol: str) -> int:
    return _SYMBOL_KEY[symbol]


@dataclass(frozen=True, order=True)
class NeverCondition:
    """``subject`` never takes ``rank`` (1 top, 2 middle, 3 bottom) within its triple."""

    subject: int
    rank: int

    def __post_init__(self):
        if self.rank not in (TOP, MIDDLE, BOTTOM):
            raise DomainError(f"rank must be 1, 2 or 3, got {self.rank}")

    def fishburn(self, triple: Triple) -> str:
        if self.subject not in triple:
            raise DomainError(f"{self.subject} is not in triple {triple}")
        return f"{triple.index(self.subject) + 1}N{self.rank}"

    @classmethod
    def from_fishburn(cls, symbol: str, triple: Triple) -> NeverCondition:
        if symbol not in _SYMBOL_KEY or symbol == EMPTY:
            raise DomainError(f"unknown never-condition symbol {symbol!r}")
        position, rank = int(symbol[0]), int(symbol[2])
        return cls(triple[position - 1], rank)


def check_triple(t: Sequence[int], n: int | None = None) -> Triple:
    t = tuple(t)
    if len(t) != 3 or not t[0] < t[1] < t[2] or t[0] < 1 or (n is not None and t[2] > n):
        raise DomainError(f"{t} is not an increasing triple over 1..{n}")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class ConditionAssignment:
    """One optional never condition per triple of ``1..n``, triples in lexicographic order."""

    n: int
    conditions: tuple[Optional[NeverCondition], ...]

    def __post_init__(self):
        if len(self.conditions) != comb(self.n, 3):
            raise DomainError(f"expected {comb(self.n, 3)} entries for n={self.n}, got {len(self.conditions)}")
        for t, c in zip(self.triples, self.conditions):
            if c is not None and c.subject not in t:
                raise DomainError(f"condition {c} does not belong to triple {t}")

    @property
    def triples(self) -> tuple[Triple, ...]:
        return tables.triples(self.n)

    @classmethod
    def empty(cls, n: int) -> ConditionAssignment:
        return cls(n, (None,) * comb(n, 3))

    @classmethod
    def uniform(cls, n: int, symbol: str) -> ConditionAssignment:
        return cls.from_symbols(n, [symbol] * comb(n, 3))

    @classmethod
    def from_symbols(cls, n: int, symbols: Iterable[str]) -> ConditionAssignment:
        symbols = list(symbols)
        if len(symbols) != comb(n, 3):
            raise DomainError(f"expected {comb(n, 3)} symbols for n={n}, got {len(symbols)}")
        conds = tuple(
            None if s == EMPTY else NeverCondition.from_fishburn(s, t) for s, t in zip(symbols, tables.triples(n))
        )
        return cls(n, conds)

    def symbols(self) -> tuple[str, ...]:
        return tuple(EMPTY if c is None else c.fishburn(t) for t, c in zip(self.triples, self.conditions))

    def key(self) -> tuple[int, ...]:
        """Comparison key: symbols in the fixed order, empty largest."""
        return tuple(symbol_key(s) for s in self.symbols())

    def __str__(self) -> str:
        return " ".join(self.symbols())

    def __getitem__(self, t: Sequence[int]) -> Optional[NeverCondition]:
        return self.conditions[tables.triple_index(self.n)[tuple(t)]]


def _triple_pattern_mask(domain: Domain, t: Triple) -> int:
    mask = 0
    for o in domain.orders:
        mask |= 1 << tables.pattern_of(restrict_order(o, t), t)
    return mask


def satisfied_conditions(domain: Domain, t: Sequence[int]) -> frozenset[NeverCondition]:
    """Never conditions met by the restriction of ``domain`` to the triple ``t``."""
    t = check_triple(t)
    missing = set(t).difference(domain.alternatives)
    if missing:
        raise DomainError(f"alternatives {sorted(missing)} not in the domain")
    mask = _triple_pattern_mask(domain, t)
    return frozenset(
        NeverCondition(t[s - 1], r) for (s, r), m in tables.PATTERN_MASK.items() if mask & m == 0
    )


def domain_triples(domain: Domain) -> Iterable[Triple]:
    return itertools.combinations(domain.alternatives, 3)


def is_condorcet_sen(domain: Domain) -> bool:
    return all(tables.has_never_condition(_triple_pattern_mask(domain, t)) for t in domain_triples(domain))


def _majority_is_transitive(profile: Sequence[tuple[int, ...]], alternatives: Sequence[int]) -> bool:
    pos = [{a: i for i, a in enumerate(o)} for o in profile]
    half = len(profile) / 2

    def beats(x, y):
        return sum(p[x] < p[y] for p in pos) > half

    for x, y, z in itertools.permutations(alternatives, 3):
        if beats(x, y) and beats(y, z) and beats(z, x):
            return False
    return True


def is_condorcet_bruteforce(domain: Domain) -> bool:
    """Check every three-voter profile from ``domain`` for a majority cycle."""
    for profile in itertools.combinations_with_replacement(domain.orders, 3):
        if not _majority_is_transitive(profile, domain.alternatives):
            return False
    return True


def _require_standard(domain: Domain) -> None:
    if domain.alternatives != tuple(range(1, domain.n + 1)):
        raise DomainError("this operation needs alternatives labelled 1..n")


def _domain_indices(domain: Domain) -> np.ndarray:
    idx = tables.order_index(domain.n)
    return np.fromiter((idx[o] for o in domain.orders), dtype=np.int64, count=len(domain))


def allowed_pattern_table(assignment: ConditionAssignment) -> np.ndarray:
    """``T x 6`` boolean table of patterns permitted on each triple."""
    allowed = np.ones((len(assignment.conditions), 6), dtype=bool)
    for idx, (t, c) in enumerate(zip(assignment.triples, assignment.conditions)):
        if c is None:
            continue
        m = tables.PATTERN_MASK[(t.index(c.subject) + 1, c.rank)]
        for p in range(6):
            if m >> p & 1:
                allowed[idx, p] = False
    return allowed


def domain_from_conditions(assignment: ConditionAssignment) -> Domain:
    """All orders of L(n) respecting every assigned never condition.

    Orders are grown one alternative at a time: every valid order on
    ``1..k`` restricts to a valid order on ``1..k-1``, so it suffices to
    insert ``k`` into each survivor and test the triples ending in ``k``.
    """
    n = assignment.n
    allowed = allowed_pattern_table(assignment)
    tidx = tables.triple_index(n)
    pos = np.zeros((1, 0), dtype=np.int64)  # pos[o, a-1] = 0-based rank of a
    for k in range(1, n + 1):
        m = pos.shape[0]
        slots = np.arange(k)
        grown = np.repeat(pos, k, axis=0)
        slot = np.tile(slots, m)
        grown = grown + (grown >= slot[:, None])
        pos = np.concatenate([grown, slot[:, None]], axis=1)
        if k >= 3:
            pairs = list(itertools.combinations(range(1, k), 2))
            i = np.array([p[0] for p in pairs]) - 1
            j = np.array([p[1] for p in pairs]) - 1
            rows = np.array([tidx[(a, b, k)] for a, b in pairs])
            codes = tables.pattern_code(pos[:, i], pos[:, j], pos[:, [k - 1]])
            pos = pos[allowed[rows[None, :], codes].all(axis=1)]
    orders = np.argsort(pos, axis=1) + 1
    return Domain((tuple(int(a) for a in row) for row in orders), range(1, n + 1))


def is_maximal_condorcet(domain: Domain) -> bool:
    """True iff no single order of L(n) can be added keeping the Condorcet property."""
    if not is_condorcet_sen(domain):
        raise DomainError("domain is not a Condorcet domain")
    _require_standard(domain)
    n = domain.n
    if n < 3:
        return len(domain) == 2 if n == 2 else True
    P = tables.pattern_matrix(n)
    present = np.bitwise_or.reduce(np.left_shift(np.uint8(1), P[_domain_indices(domain)]), axis=0)
    extended = present[None, :] | np.left_shift(np.uint8(1), P)
    ok = tables.never_condition_lookup()[extended].all(axis=1)
    ok[_domain_indices(domain)] = False
    return not ok.any()


def is_arrow_single_peaked(domain: Domain) -> bool:
    return all(
        any(c.rank == BOTTOM for c in satisfied_conditions(domain, t)) for t in domain_triples(domain)
    )


def is_arrow_single_dipped(domain: Domain) -> bool:
    return all(any(c.rank == TOP for c in satisfied_conditions(domain, t)) for t in domain_triples(domain))


def fixed_points(domain: Domain) -> frozenset[int]:
    if not domain.orders:
        raise DomainError("fixed points of an empty domain are undefined")
    first = domain.orders[0]
    return frozenset(
        a for i, a in enumerate(first) if all(o[i] == a for o in domain.orders)
    )


def conditions_of(domain: Domain) -> ConditionAssignment:
    """A condition assignment read off ``domain``, one satisfied condition per triple.

    When a triple satisfies several conditions the smallest in the fixed
    symbol order is taken, so never-bottom symbols win. Triples with no
    satisfied condition stay empty.
    """
    _require_standard(domain)
    conds = []
    for t in tables.triples(domain.n):
        sat = satisfied_conditions(domain, t)
        if not sat:
            conds.append(None)
            continue
        conds.append(min(sat, key=lambda c: symbol_key(c.fishburn(t))))
    return ConditionAssignment(domain.n, tuple(conds))
