"""Linear orders, domains and the relabeling action on them.

A linear order is a plain tuple of alternative labels, most preferred first.
A :class:`Domain` is an immutable, lexicographically sorted set of such
tuples over a common alternative set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Order = tuple[int, ...]


class DomainError(ValueError):
    """Raised when orders, alternatives or permutations do not fit together."""


def order(spec: str | Iterable[int]) -> Order:
    """Build an order from ``"2314"``, ``"2 3 1 4"`` or an iterable of ints."""
    if isinstance(spec, str):
        parts = spec.split() if " " in spec.strip() else list(spec.strip())
        return tuple(int(p) for p in parts)
    return tuple(int(p) for p in spec)


@dataclass(frozen=True)
class Domain:
    """A finite set of distinct linear orders over one alternative set."""

    orders: tuple[Order, ...]
    alternatives: tuple[int, ...]

    def __init__(self, orders: Iterable[Sequence[int] | str], alternatives: Iterable[int] | None = None):
        normalized = sorted({order(o) for o in orders})
        if alternatives is None:
            if not normalized:
                raise DomainError("an empty domain needs an explicit alternative set")
            alts = tuple(sorted(normalized[0]))
        else:
            alts = tuple(sorted(alternatives))
        if len(set(alts)) != len(alts):
            raise DomainError(f"repeated alternatives in {alts}")
        for o in normalized:
            if tuple(sorted(o)) != alts:
                raise DomainError(f"order {o} is not a permutation of {alts}")
        object.__setattr__(self, "orders", tuple(normalized))
        object.__setattr__(self, "alternatives", alts)

    @classmethod
    def full(cls, n: int) -> Domain:
        return cls(itertools.permutations(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.alternatives)

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    def __contains__(self, item) -> bool:
        return order(item) in set(self.orders)

    def __str__(self) -> str:
        sep = "" if max(self.alternatives, default=0) < 10 else " "
        return "{" + ",".join(sep.join(map(str, o)) for o in self.orders) + "}"

    def is_unitary(self) -> bool:
        return self.alternatives in set(self.orders)


def rank_of(o: Order, a: int) -> int:
    """1-based position of ``a`` in ``o``."""
    try:
        return o.index(a) + 1
    except ValueError:
        raise DomainError(f"alternative {a} does not occur in {o}") from None


def restrict_order(o: Order, subset: Iterable[int]) -> Order:
    keep = set(subset)
    if not keep:
        raise DomainError("cannot restrict to an empty set of alternatives")
    missing = keep.difference(o)
    if missing:
        raise DomainError(f"alternatives {sorted(missing)} not in {o}")
    return tuple(a for a in o if a in keep)


def restrict_domain(domain: Domain, subset: Iterable[int]) -> Domain:
    keep = set(subset)
    if not keep:
        raise DomainError("cannot restrict to an empty set of alternatives")
    return Domain((restrict_order(o, keep) for o in domain.orders), keep)


def delete_alternatives(domain: Domain, removed: Iterable[int]) -> Domain:
    return restrict_domain(domain, set(domain.alternatives).difference(removed))


def dual(domain: Domain) -> Domain:
    return Domain((o[::-1] for o in domain.orders), domain.alternatives)


def _as_mapping(domain: Domain, g: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    if isinstance(g, Mapping):
        mapping = dict(g)
    else:
        # sequence form: g[i] is the image of the i-th smallest alternative
        if len(g) != domain.n:
            raise DomainError(f"permutation {tuple(g)} has wrong length for n={domain.n}")
        mapping = dict(zip(domain.alternatives, g))
    if sorted(mapping) != list(domain.alternatives) or sorted(mapping.values()) != list(domain.alternatives):
        raise DomainError(f"{mapping} is not a bijection on {domain.alternatives}")
    return mapping


def relabel(domain: Domain, g: Mapping[int, int] | Sequence[int]) -> Domain:
    """Replace every alternative ``a`` by ``g(a)``.

    ``g`` is either a mapping or a sequence listing the images of the
    alternatives in ascending order (so ``(3, 2, 1)`` swaps 1 and 3).
    """
    mapping = _as_mapping(domain, g)
    return Domain((tuple(mapping[a] for a in o) for o in domain.orders), domain.alternatives)


def relabeling_to_identity(o: Order) -> dict[int, int]:
    """The relabeling sending ``o`` to the ascending order ``1..n``."""
    return {a: i for i, a in enumerate(o, start=1)}


def canonical_domain(domain: Domain) -> tuple[Domain, dict[int, int]]:
    """Lexicographically least relabeling of ``domain`` onto ``1..n``.

    The minimum over all ``n!`` relabelings always contains the identity
    order as its first element, so only the relabelings that send some
    member order to the identity can attain it. Those ``|D|`` candidates
    are compared, with early exit at the first differing order.
    """
    if not domain.orders:
        raise DomainError("canonical form of an empty domain is undefined")
    best: list[Order] | None = None
    witness: dict[int, int] = {}
    for o in domain.orders:
        g = relabeling_to_identity(o)
        image = sorted(tuple(g[a] for a in p) for p in domain.orders)
        if best is None or image < best:
            best, witness = image, g
    return Domain(best, range(1, domain.n + 1)), witness


def canonical_domain_bruteforce(domain: Domain) -> Domain:
    """Orbit minimum over all ``n!`` relabelings; reference for tests."""
    alts = domain.alternatives
    best = None
    for perm in itertools.permutations(range(1, domain.n + 1)):
        g = dict(zip(alts, perm))
        image = sorted(tuple(g[a] for a in p) for p in domain.orders)
        if best is None or image < best:
            best = image
    return Domain(best, range(1, domain.n + 1))


def are_isomorphic(d1: Domain, d2: Domain) -> bool:
    if d1.n != d2.n:
        raise DomainError(f"domains over {d1.n} and {d2.n} alternatives cannot be compared")
    if len(d1) != len(d2):
        return False
    return canonical_domain(d1)[0] == canonical_domain(d2)[0]
