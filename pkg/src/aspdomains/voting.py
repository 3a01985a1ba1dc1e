"""Voting rules, the LF / QA / hierarchically cyclic conditions and IIA searches.

A profile is a sequence of orders over one alternative set. Rules return
winner sets so that ties stay visible. Borda follows the rank-sum
convention: an alternative earns its rank position from each voter and the
lowest total wins.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional, Sequence

from .never import is_arrow_single_dipped, fixed_points
from .orders import Domain, DomainError, Order, restrict_domain, restrict_order

Profile = Sequence[Order]


def _alternatives(profile: Profile) -> tuple[int, ...]:
    if not profile:
        raise DomainError("a profile needs at least one voter")
    alts = tuple(sorted(profile[0]))
    for o in profile:
        if tuple(sorted(o)) != alts:
            raise DomainError(f"order {o} is not over {alts}")
    return alts


def first_place_counts(profile: Profile) -> dict[int, int]:
    alts = _alternatives(profile)
    counts = Counter(o[0] for o in profile)
    return {a: counts[a] for a in alts}


def _argbest(scores: dict[int, int], best=max) -> frozenset[int]:
    target = best(scores.values())
    return frozenset(a for a, s in scores.items() if s == target)


def plurality_winners(profile: Profile) -> frozenset[int]:
    return _argbest(first_place_counts(profile))


@dataclass(frozen=True)
class Tally:
    """Borda rank-sum totals; lower is better."""

    scores: dict[int, int]

    @property
    def winners(self) -> frozenset[int]:
        return _argbest(self.scores, min)

    def ranking(self) -> tuple[tuple[int, ...], ...]:
        """Alternatives by ascending total, tied alternatives grouped."""
        groups: dict[int, list[int]] = {}
        for a, s in sorted(self.scores.items(), key=lambda kv: (kv[1], kv[0])):
            groups.setdefault(s, []).append(a)
        return tuple(tuple(g) for g in groups.values())


def borda(profile: Profile) -> Tally:
    alts = _alternatives(profile)
    scores = dict.fromkeys(alts, 0)
    for o in profile:
        for r, a in enumerate(o, start=1):
            scores[a] += r
    return Tally(scores)


def borda_winners(profile: Profile) -> frozenset[int]:
    return borda(profile).winners


def _beats(profile: Profile, x: int, y: int) -> bool:
    ahead = sum(o.index(x) < o.index(y) for o in profile)
    return 2 * ahead > len(profile)


def majority_relation(profile: Profile) -> frozenset[tuple[int, int]]:
    """Pairs ``(x, y)`` such that a strict majority ranks ``x`` above ``y``."""
    alts = _alternatives(profile)
    return frozenset((x, y) for x, y in itertools.permutations(alts, 2) if _beats(profile, x, y))


def condorcet_winner(profile: Profile, among: Optional[Sequence[int]] = None) -> Optional[int]:
    """The alternative beating every other one (of ``among``, if given) by strict majority."""
    alts = _alternatives(profile) if among is None else tuple(sorted(among))
    for x in alts:
        if all(_beats(profile, x, y) for y in alts if y != x):
            return x
    return None


@dataclass(frozen=True)
class RunoffOutcome:
    winners: frozenset[int]
    indeterminate: bool


def runoff(profile: Profile) -> RunoffOutcome:
    """Plurality with a majority, otherwise the majority winner among the plurality leaders.

    When the leaders have no majority winner the unbeaten leaders are
    returned (all leaders if every one is beaten) and the outcome is
    flagged indeterminate.
    """
    counts = first_place_counts(profile)
    leader, top = max(counts.items(), key=lambda kv: kv[1])
    if 2 * top > len(profile):
        return RunoffOutcome(frozenset({leader}), False)
    tied = sorted(_argbest(counts))
    if len(tied) == 1:
        return RunoffOutcome(frozenset(tied), False)
    w = condorcet_winner(profile, tied)
    if w is not None:
        return RunoffOutcome(frozenset({w}), False)
    unbeaten = frozenset(x for x in tied if not any(_beats(profile, y, x) for y in tied if y != x))
    return RunoffOutcome(unbeaten or frozenset(tied), True)


def runoff_winners(profile: Profile) -> frozenset[int]:
    return runoff(profile).winners


RULES: dict[str, Callable[[Profile], frozenset[int]]] = {
    "plurality": plurality_winners,
    "runoff": runoff_winners,
    "borda": borda_winners,
}


# ---------------------------------------------------------------------------
# structural conditions


def first_ranked_set(domain: Domain) -> frozenset[int]:
    return frozenset(o[0] for o in domain.orders)


def satisfies_LF(domain: Domain) -> bool:
    """Every triple has an alternative never ranked first within it."""
    return is_arrow_single_dipped(domain)


def satisfies_QA(domain: Domain) -> bool:
    """Every triple restriction has an alternative at a constant rank."""
    return all(
        fixed_points(restrict_domain(domain, t)) for t in itertools.combinations(domain.alternatives, 3)
    )


def qa_fixed_point_insert(domain: Domain, rank: int) -> Domain:
    """Add a new alternative (one above the largest label) at ``rank`` in every order."""
    if not satisfies_QA(domain):
        raise DomainError("the domain does not satisfy QA")
    n = domain.n
    if not 1 <= rank <= n + 1:
        raise DomainError(f"rank must lie in [1, {n + 1}], got {rank}")
    new = max(domain.alternatives, default=0) + 1
    return Domain((o[: rank - 1] + (new,) + o[rank - 1 :] for o in domain.orders), domain.alternatives + (new,))


def _b1(n: int) -> Domain:
    pairs = [((2 * i - 1, 2 * i), (2 * i, 2 * i - 1)) for i in range(1, n // 2 + 1)]
    return Domain((sum(choice, ()) for choice in itertools.product(*pairs)), range(1, n + 1))


def max_qa_domain(n: int, fixed_rank: Optional[int] = None) -> Domain:
    """Largest unitary QA domain: pairs ``2i-1, 2i`` swap freely in ranks ``2i-1, 2i``.

    For odd ``n`` the alternative ``n`` is added as a fixed point at ``fixed_rank``.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if n % 2 == 0:
        if fixed_rank is not None:
            raise DomainError("fixed_rank only applies to odd n")
        return _b1(n)
    if fixed_rank is None:
        raise DomainError("odd n needs a fixed_rank for the extra alternative")
    return qa_fixed_point_insert(_b1(n - 1), fixed_rank)


Kind = Literal["cyclic-shifts", "size-<=2"]


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[tuple[int, ...], ...]
    kinds: tuple[Kind, ...]

    def __post_init__(self):
        flat = [a for iv in self.intervals for a in iv]
        if not self.intervals or flat != list(range(1, len(flat) + 1)):
            raise DomainError(f"{self.intervals} are not consecutive intervals covering 1..n")

    def as_dict(self) -> dict:
        return {"intervals": [list(iv) for iv in self.intervals], "kinds": list(self.kinds)}


def _is_cyclic_shift_set(orders: Sequence[Order]) -> bool:
    base = orders[0]
    shifts = {base[i:] + base[:i] for i in range(len(base))}
    return all(o in shifts for o in orders)


def hierarchically_cyclic_partition(domain: Domain) -> Optional[IntervalPartition]:
    """The finest interval partition witnessing that the domain is hierarchically cyclic.

    Block boundaries are the ranks ``p`` at which every order has exactly
    ``{1..p}`` on top. A coarser witness exists only if this one works.
    """
    n = domain.n
    if domain.alternatives != tuple(range(1, n + 1)) or not domain.is_unitary():
        raise DomainError("hierarchically cyclic partitions need a unitary domain over 1..n")
    cuts = [p for p in range(1, n) if all(set(o[:p]) == set(range(1, p + 1)) for o in domain.orders)]
    bounds = [0] + cuts + [n]
    intervals, kinds = [], []
    for lo, hi in zip(bounds, bounds[1:]):
        iv = tuple(range(lo + 1, hi + 1))
        orders = restrict_domain(domain, iv).orders
        if len(orders) <= 2:
            kinds.append("size-<=2")
        elif _is_cyclic_shift_set(orders):
            kinds.append("cyclic-shifts")
        else:
            return None
        intervals.append(iv)
    return IntervalPartition(tuple(intervals), tuple(kinds))


def _hc_parts(n: int, lead: Optional[int]) -> list[int]:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    r = n % 3
    odd = {0: None, 1: 4, 2: 2}[r]
    threes = (n - (odd or 0)) // 3
    parts = [3] * threes + ([odd] if odd else [])
    if lead is None:
        return parts
    if lead == 3 and threes:
        return parts
    if odd is not None and lead == odd:
        return [odd] + [3] * threes
    raise DomainError(f"lead {lead} is not possible for n={n}")


def max_hc_domain(n: int, lead: Optional[int] = None) -> Domain:
    """Largest hierarchically cyclic domain: all cyclic shifts on each block of an optimal partition.

    Blocks have size 3 apart from one block of size 4 (``n % 3 == 1``) or 2
    (``n % 3 == 2``), placed last unless ``lead`` names the first block's size.
    """
    blocks, start = [], 1
    for size in _hc_parts(n, lead):
        base = tuple(range(start, start + size))
        blocks.append([base[i:] + base[:i] for i in range(size)])
        start += size
    return Domain((sum(choice, ()) for choice in itertools.product(*blocks)), range(1, n + 1))


def hc_max_size(n: int) -> int:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    r = n % 3
    if r == 0:
        return 3 ** (n // 3)
    if r == 1:
        return 4 * 3 ** ((n - 4) // 3)
    return 2 * 3 ** ((n - 2) // 3)


# ---------------------------------------------------------------------------
# IIA searches


@dataclass(frozen=True)
class NashCounterexample:
    rule: str
    profile: tuple[Order, ...]
    deleted: tuple[int, ...]
    winner: int
    winners_after: frozenset[int]

    def restricted_profile(self) -> tuple[Order, ...]:
        keep = set(self.profile[0]).difference(self.deleted)
        return tuple(restrict_order(o, keep) for o in self.profile)

    def recheck(self) -> bool:
        rule = RULES[self.rule]
        return rule(self.profile) == {self.winner} and self.winner not in rule(self.restricted_profile())

    def as_dict(self) -> dict:
        return {
            "profile": [list(o) for o in self.profile],
            "deleted": list(self.deleted),
            "winner_before": self.winner,
            "winners_after": sorted(self.winners_after),
        }


@dataclass(frozen=True)
class ArrowCounterexample:
    profile: tuple[Order, ...]
    paired: tuple[Order, ...]
    x: int
    y: int

    def recheck(self, reading: str = "pairwise") -> bool:
        before, after = borda(self.profile).scores, borda(self.paired).scores
        compatible = _COMPATIBLE[reading]
        return (
            len(self.profile) == len(self.paired)
            and all(compatible(s, t, self.x, self.y) for s, t in zip(self.profile, self.paired))
            and before[self.x] < before[self.y]
            and not after[self.x] < after[self.y]
        )

    def as_dict(self) -> dict:
        return {
            "profile": [list(o) for o in self.profile],
            "paired_profile": [list(o) for o in self.paired],
            "x": self.x,
            "y": self.y,
            "totals_before": {str(a): s for a, s in sorted(borda(self.profile).scores.items())},
            "totals_after": {str(a): s for a, s in sorted(borda(self.paired).scores.items())},
        }


@dataclass(frozen=True)
class IIAVerdict:
    axiom: str
    rule: str
    violated: bool
    counterexample: Optional[NashCounterexample | ArrowCounterexample]
    bounds: dict = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        return "violated" if self.violated else "holds-at-scale"

    def as_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "rule": self.rule,
            "outcome": self.outcome,
            "counterexample": None if self.counterexample is None else self.counterexample.as_dict(),
            "bounds": self.bounds,
        }


def _profiles(domain: Domain, max_voters: int):
    """Multiset profiles over the domain by voter count, each in lexicographic order."""
    if max_voters < 1:
        raise ValueError(f"max_voters must be at least 1, got {max_voters}")
    for size in range(1, max_voters + 1):
        yield from itertools.combinations_with_replacement(domain.orders, size)


def check_nash_iia(rule: str, domain: Domain, max_voters: int) -> IIAVerdict:
    """Search small profiles for a unique winner that loses after deleting other alternatives.

    Profiles are taken by increasing size and then lexicographically, and
    deletion sets by size and then lexicographically, so the reported
    counterexample is the first one in that order.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {sorted(RULES)}")
    choose = RULES[rule]
    alts = domain.alternatives
    restricted: dict[tuple[int, ...], dict[Order, Order]] = {}
    for size in range(1, len(alts) - 1):
        for deleted in itertools.combinations(alts, size):
            keep = set(alts).difference(deleted)
            restricted[deleted] = {o: restrict_order(o, keep) for o in domain.orders}
    checked = 0
    for profile in _profiles(domain, max_voters):
        checked += 1
        winners = choose(profile)
        if len(winners) != 1:
            continue
        (x,) = winners
        others = [a for a in alts if a != x]
        for size in range(1, len(others)):
            for deleted in itertools.combinations(others, size):
                after = choose([restricted[deleted][o] for o in profile])
                if x not in after:
                    cex = NashCounterexample(rule, profile, deleted, x, after)
                    return IIAVerdict("nash", rule, True, cex, {"max_voters": max_voters, "profiles": checked})
    return IIAVerdict("nash", rule, False, None, {"max_voters": max_voters, "profiles": checked})


def _pairwise_compatible(s: Order, t: Order, x: int, y: int) -> bool:
    return (s.index(x) < s.index(y)) == (t.index(x) < t.index(y))


def _fixed_slot_compatible(s: Order, t: Order, x: int, y: int) -> bool:
    return s.index(x) == t.index(x) and s.index(y) == t.index(y)


# Which re-rankings of the alternatives other than x and y a voter may make.
# "pairwise": any order keeping the voter's x-versus-y comparison.
# "fixed-slot": x and y keep their exact ranks, the others permute among the remaining slots.
_COMPATIBLE = {"pairwise": _pairwise_compatible, "fixed-slot": _fixed_slot_compatible}


def check_arrow_iia_borda(domain: Domain, max_voters: int, reading: str = "pairwise") -> IIAVerdict:
    """Search profile pairs where re-ranking other alternatives stops Borda putting x before y.

    For a first profile and a pair ``x, y`` with ``x`` strictly ahead, each
    voter independently picks a compatible order from the domain that
    pushes ``x`` furthest down relative to ``y``; a violation exists exactly
    when that best response leaves ``x`` no longer strictly ahead.
    """
    if reading not in _COMPATIBLE:
        raise ValueError(f"unknown reading {reading!r}; expected one of {sorted(_COMPATIBLE)}")
    compatible = _COMPATIBLE[reading]
    orders = domain.orders
    alts = domain.alternatives
    # best[(s, x, y)]: compatible order maximizing rank(x) - rank(y), least such order on ties
    best: dict[tuple[Order, int, int], tuple[int, Order]] = {}
    for s in orders:
        for x, y in itertools.permutations(alts, 2):
            options = [(t.index(x) - t.index(y), t) for t in orders if compatible(s, t, x, y)]
            gain = max(g for g, _ in options)
            best[(s, x, y)] = (gain, min(t for g, t in options if g == gain))
    checked = 0
    for profile in _profiles(domain, max_voters):
        checked += 1
        scores = borda(profile).scores
        for x, y in itertools.permutations(alts, 2):
            if scores[x] >= scores[y]:
                continue
            if sum(best[(s, x, y)][0] for s in profile) >= 0:
                paired = tuple(best[(s, x, y)][1] for s in profile)
                cex = ArrowCounterexample(profile, paired, x, y)
                bounds = {"max_voters": max_voters, "profiles": checked, "reading": reading}
                return IIAVerdict("arrow", "borda", True, cex, bounds)
    return IIAVerdict("arrow", "borda", False, None, {"max_voters": max_voters, "profiles": checked, "reading": reading})
