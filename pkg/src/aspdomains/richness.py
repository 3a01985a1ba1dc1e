"""Rank ranges, k-richness and the reference domains used to compare against.

The richness of a domain is the largest ``k`` such that every alternative
appears at every rank ``1..k`` in some order; it is 0 when some alternative
is never ranked first.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from . import tables
from .never import BOTTOM, ConditionAssignment, NeverCondition, domain_from_conditions, domain_triples
from .never import is_arrow_single_peaked, satisfied_conditions
from .orders import Domain, DomainError, Order


def _nonempty(domain: Domain) -> None:
    if not domain.orders:
        raise DomainError("the domain has no orders")


def rank_range(domain: Domain, a: int) -> frozenset[int]:
    """Ranks (1-based) that ``a`` takes across the domain."""
    _nonempty(domain)
    if a not in domain.alternatives:
        raise DomainError(f"alternative {a} not in the domain")
    return frozenset(o.index(a) + 1 for o in domain.orders)


def _r_value(ranks: Iterable[int]) -> int:
    ranks = set(ranks)
    r = 0
    while r + 1 in ranks:
        r += 1
    return r


def r_value(domain: Domain, a: int) -> int:
    """Largest ``r`` such that ``a`` attains every rank ``1..r``."""
    return _r_value(rank_range(domain, a))


def richness(domain: Domain) -> int:
    _nonempty(domain)
    return min(r_value(domain, a) for a in domain.alternatives)


def is_k_rich(domain: Domain, k: int) -> bool:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return richness(domain) >= k


def terminal_alternatives(domain: Domain) -> frozenset[int]:
    _nonempty(domain)
    return frozenset(o[-1] for o in domain.orders)


def skewed_pivot(domain: Domain) -> Optional[int]:
    """Smallest alternative kept off the bottom of every triple containing it."""
    if not is_arrow_single_peaked(domain):
        raise DomainError("skewed pivots are only defined for Arrow single-peaked domains")
    for q in domain.alternatives:
        if all(
            NeverCondition(q, BOTTOM) in satisfied_conditions(domain, t)
            for t in domain_triples(domain)
            if q in t
        ):
            return q
    return None


@dataclass(frozen=True)
class RichnessReport:
    rank_ranges: dict[int, frozenset[int]]
    r_values: dict[int, int]
    richness: int
    terminals: frozenset[int]
    pivot: Optional[int]

    def as_dict(self) -> dict:
        return {
            "rank_ranges": {str(a): sorted(r) for a, r in self.rank_ranges.items()},
            "r_values": {str(a): r for a, r in self.r_values.items()},
            "richness": self.richness,
            "terminals": sorted(self.terminals),
            "pivot": self.pivot,
        }


def richness_report(domain: Domain) -> RichnessReport:
    _nonempty(domain)
    ranges = {a: rank_range(domain, a) for a in domain.alternatives}
    rv = {a: _r_value(r) for a, r in ranges.items()}
    pivot = skewed_pivot(domain) if is_arrow_single_peaked(domain) else None
    return RichnessReport(ranges, rv, min(rv.values()), terminal_alternatives(domain), pivot)


# ---------------------------------------------------------------------------
# reference domains


def _check_n(n: int) -> None:
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")


def black_domain(n: int) -> Domain:
    """Single-peaked orders on the axis ``1 < 2 < ... < n`` (``2N3`` on every triple)."""
    _check_n(n)
    return domain_from_conditions(ConditionAssignment.uniform(n, "2N3"))


def skewed_Sn(n: int, form: Literal["1N3", "3N3"] = "1N3") -> Domain:
    """The skewed domain with one never-bottom symbol on every triple.

    The default ``1N3`` form is unitary and has pivot 1; the ``3N3`` form
    is its mirror image with pivot ``n``.
    """
    _check_n(n)
    if form not in ("1N3", "3N3"):
        raise ValueError(f"form must be '1N3' or '3N3', got {form!r}")
    return domain_from_conditions(ConditionAssignment.uniform(n, form))


def cyclic_shift_domain(base: Sequence[int] | int) -> Domain:
    """All cyclic shifts of ``base`` (or of ``1..n`` when an integer is given)."""
    o: Order = tuple(range(1, base + 1)) if isinstance(base, int) else tuple(base)
    if not o:
        raise DomainError("cannot shift an empty order")
    return Domain(o[i:] + o[:i] for i in range(len(o)))


def black_axis(domain: Domain) -> Optional[tuple[int, ...]]:
    """An axis on which every order is single-peaked, or None.

    An order is single-peaked on an axis when each of its top-``k`` sets is
    an interval of the axis. The axis ends must be the bottom alternatives,
    which limits the candidates; the first axis found in lexicographic
    order with its left end smaller than its right end is returned.
    """
    _nonempty(domain)
    alts = domain.alternatives
    n = len(alts)
    if n <= 2:
        return alts
    bottoms = sorted(terminal_alternatives(domain))
    if len(bottoms) > 2:
        return None
    orders = np.array(domain.orders, dtype=np.int64)
    label = {a: i for i, a in enumerate(alts)}
    idx = np.vectorize(label.__getitem__)(orders)
    for axis in itertools.permutations(alts):
        if axis[0] > axis[-1] or not set(bottoms) <= {axis[0], axis[-1]}:
            continue
        place = np.empty(n, dtype=np.int64)
        place[[label[a] for a in axis]] = np.arange(n)
        p = place[idx]
        span = np.maximum.accumulate(p, axis=1) - np.minimum.accumulate(p, axis=1)
        if (span == np.arange(n)[None, :]).all():
            return axis
    return None


# ---------------------------------------------------------------------------
# histograms


def _richness_of_indices(n: int, idx: np.ndarray) -> int:
    pos = tables.positions(n)[idx][:, 1:]
    attained = np.zeros((n, n + 1), dtype=bool)
    attained[np.broadcast_to(np.arange(n), pos.shape), pos.astype(np.int64)] = True
    # first missing rank for each alternative is its r-value
    return int(np.argmin(attained, axis=1).min())


def richness_histogram(result) -> dict[int, int]:
    """Counts of domains per richness value, keys ascending.

    Accepts an :class:`~aspdomains.enumeration.EnumerationResult` or any
    iterable of domains.
    """
    counts: Counter[int] = Counter()
    indices = getattr(result, "_order_indices", None)
    if indices is not None:
        for idx in indices:
            counts[_richness_of_indices(result.n, idx)] += 1
    else:
        for d in getattr(result, "domains", result):
            counts[richness(d)] += 1
    return dict(sorted(counts.items()))
