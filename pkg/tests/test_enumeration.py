import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspdomains import tables
from aspdomains.enumeration import (
    SearchNode,
    canonical_string,
    count_asp,
    enumerate_asp,
    min_image_reject,
    min_image_reject_bruteforce,
    orbit_minimum_bruteforce,
    prune_partial,
    window_table,
)
from aspdomains.never import (
    SYMBOL_ORDER,
    ConditionAssignment,
    domain_from_conditions,
    is_arrow_single_peaked,
    is_condorcet_bruteforce,
    is_maximal_condorcet,
)
from aspdomains.orders import Domain, DomainError, canonical_domain, canonical_domain_bruteforce
from aspdomains.richness import terminal_alternatives

from conftest import perms

N3 = ("1N3", "2N3", "3N3")


def node(n, symbols):
    return SearchNode.from_symbols(n, symbols)


def test_min_image_examples():
    assert min_image_reject(node(3, ["2N3"]))
    assert not min_image_reject(node(3, ["1N3"]))
    assert not min_image_reject(node(4, []))


def test_search_node_shape():
    with pytest.raises(DomainError):
        node(4, ["1N3", "-", "2N3"])
    assert node(4, ["1N3"]).depth == 1


def prefixes(n, alphabet):
    T = comb(n, 3)
    return st.integers(0, T).flatmap(lambda d: st.lists(st.sampled_from(alphabet), min_size=d, max_size=d))


@settings(max_examples=150, deadline=None)
@given(symbols=prefixes(5, N3))
def test_min_image_matches_bruteforce_n5(symbols):
    nd = node(5, symbols)
    assert min_image_reject(nd) == min_image_reject_bruteforce(nd)


@settings(max_examples=150, deadline=None)
@given(symbols=prefixes(4, SYMBOL_ORDER))
def test_min_image_matches_bruteforce_any_rank(symbols):
    nd = node(4, symbols)
    assert min_image_reject(nd) == min_image_reject_bruteforce(nd)


@settings(max_examples=40, deadline=None)
@given(symbols=prefixes(6, N3))
def test_min_image_matches_bruteforce_n6(symbols):
    nd = node(6, symbols)
    assert min_image_reject(nd) == min_image_reject_bruteforce(nd)


def window_oracle(w, subjects):
    a = ConditionAssignment.from_symbols(w, [f"{s}N3" for s in subjects])
    d = domain_from_conditions(a)
    if len(d) != 2 ** (w - 1):
        return False
    for t, s in zip(tables.triples(w), subjects):
        seen = {tuple(x for x in o if x in t) for o in d}
        if len(seen) != 4:
            return False
    return all(not is_condorcet_bruteforce(Domain(d.orders + (o,))) for o in perms(w) if o not in d.orders)


def test_window_table_4_matches_oracle():
    table = window_table(4)
    for code, subjects in enumerate(itertools.product((1, 2, 3), repeat=4)):
        subjects = subjects[::-1]  # digit p has weight 3**p
        assert table[code] == window_oracle(4, subjects)
        assert prune_partial(node(4, [f"{s}N3" for s in subjects]), 4) == (not table[code])


def test_window_table_5_sample_matches_oracle():
    table = window_table(5)
    rng = random.Random(7)
    feasible = list(np.nonzero(table)[0])
    codes = rng.sample(feasible, 8) + rng.sample(range(3**10), 12)
    for code in codes:
        subjects = [(code // 3**p) % 3 + 1 for p in range(10)]
        assert table[code] == window_oracle(5, subjects)


def test_prune_examples():
    assert not prune_partial(node(4, ["2N3"] * 4), 4)
    assert not prune_partial(node(5, ["2N3"] * 10), 5)
    # 2N3 on (1,2,3) with 1N3 and 3N3 on the others leaves fewer than 8 orders
    small = ["2N3", "3N3", "1N3", "3N3"]
    assert len(domain_from_conditions(ConditionAssignment.from_symbols(4, small))) < 8
    assert prune_partial(node(4, small), 4)
    assert prune_partial(node(4, ["2N1"]), 4)
    with pytest.raises(ValueError):
        prune_partial(node(4, []), 6)


def test_n4_survivors_collapse_to_two_classes():
    classes = set()
    for symbols in itertools.product(N3, repeat=4):
        if prune_partial(node(4, symbols), 4):
            continue
        d = domain_from_conditions(ConditionAssignment.from_symbols(4, symbols))
        assert len(d) == 8 and is_maximal_condorcet(d)
        classes.add(canonical_domain_bruteforce(d))
    assert len(classes) == 2


def test_n5_matches_exhaustive_unitary_search():
    found = set()
    for symbols in itertools.product(("1N3", "2N3"), repeat=10):
        d = domain_from_conditions(ConditionAssignment.from_symbols(5, symbols))
        if len(d) == 16 and is_maximal_condorcet(d):
            found.add(canonical_domain_bruteforce(d))
    assert len(found) == 6
    assert {canonical_domain(d)[0] for d in enumerate_asp(5).domains} == found


@pytest.mark.parametrize("n, expected", [(3, 1), (4, 2), (5, 6), (6, 40)])
def test_count(n, expected):
    assert count_asp(n) == expected


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_modes_agree(n):
    assert enumerate_asp(n, "posthoc").symbol_strings() == enumerate_asp(n, "insearch").symbol_strings()


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_emitted_domains(asp, n):
    result = asp(n)
    canon = set()
    for s, d in zip(result.strings, result.domains):
        assert d == domain_from_conditions(s)
        assert len(d) == 2 ** (n - 1)
        assert d.is_unitary()
        assert is_arrow_single_peaked(d) and is_maximal_condorcet(d)
        assert len(terminal_alternatives(d)) <= 2
        canon.add(canonical_domain(d)[0])
    assert len(canon) == result.count
    assert [s.key() for s in result.strings] == sorted(s.key() for s in result.strings)


def test_strings_are_least_unitary_images(asp):
    for s in asp(5).strings:
        assert s.key() == orbit_minimum_bruteforce(s, unitary_only=True)


def test_canonical_string_reference(asp):
    n = 5
    for s, d in zip(asp(n).strings, asp(n).domains):
        idx = np.array([tables.order_index(n)[o] for o in d.orders])
        subjects = [t.index(c.subject) + 1 for t, c in zip(s.triples, s.conditions)]
        key, orders = canonical_string(n, subjects, idx)
        assert key == s.key()
        assert sorted(orders.tolist()) == sorted(idx.tolist())


def test_results_do_not_depend_on_frontier_or_jobs():
    base = enumerate_asp(6).symbol_strings()
    assert enumerate_asp(6, frontier_depth=1).symbol_strings() == base
    assert enumerate_asp(6, frontier_depth=4).symbol_strings() == base
    assert enumerate_asp(6, "posthoc", jobs=2).symbol_strings() == base


def test_range_errors():
    with pytest.raises(DomainError):
        enumerate_asp(2)
    with pytest.raises(DomainError):
        enumerate_asp(10)
    with pytest.raises(ValueError):
        enumerate_asp(4, "fast")
