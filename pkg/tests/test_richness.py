import pytest
from hypothesis import given, settings

from aspdomains.never import NeverCondition, is_arrow_single_peaked, satisfied_conditions
from aspdomains.orders import Domain, DomainError
from aspdomains.richness import (
    black_axis,
    black_domain,
    cyclic_shift_domain,
    is_k_rich,
    r_value,
    rank_range,
    richness,
    richness_histogram,
    richness_report,
    skewed_pivot,
    skewed_Sn,
    terminal_alternatives,
)

from conftest import subdomains


def naive_richness(d):
    best = 0
    for r in range(1, d.n + 1):
        if all(all(any(o[i] == a for o in d.orders) for i in range(r)) for a in d.alternatives):
            best = r
    return best


def test_rank_range_examples():
    b4 = black_domain(4)
    assert rank_range(b4, 2) == {1, 2, 3}
    assert rank_range(b4, 4) == {1, 2, 3, 4}
    assert rank_range(Domain(["123"]), 2) == {2}
    with pytest.raises(DomainError):
        rank_range(b4, 7)


def test_richness_examples():
    assert richness(black_domain(5)) == 3
    for n in (3, 5, 7):
        assert richness(cyclic_shift_domain(n)) == n
    assert richness(cyclic_shift_domain((3, 1, 4, 2))) == 4
    assert richness(Domain(["123"])) == 0


def test_k_rich_examples(asp):
    assert all(is_k_rich(d, 2) for d in asp(5).domains)
    assert is_k_rich(Domain.full(4), 4)
    assert not is_k_rich(Domain(["123", "213"]), 2)
    with pytest.raises(ValueError):
        is_k_rich(Domain.full(3), 0)


def test_terminal_examples(asp):
    assert terminal_alternatives(black_domain(4)) == {1, 4}
    assert terminal_alternatives(Domain(["123"])) == {3}
    assert all(len(terminal_alternatives(d)) <= 2 for d in asp(6).domains)


def test_black_domain():
    assert black_domain(3) == Domain(["123", "213", "231", "321"])
    assert len(black_domain(4)) == 8
    for n in range(3, 13):
        assert richness(black_domain(n)) == n // 2 + 1
    with pytest.raises(DomainError):
        black_domain(2)


def test_skewed_sn():
    assert skewed_Sn(3) == Domain(["123", "132", "213", "312"])
    for n in range(3, 9):
        assert len(skewed_Sn(n)) == 2 ** (n - 1)
    assert richness(skewed_Sn(5)) == 2
    assert all(richness(skewed_Sn(n)) == 2 for n in range(4, 9))
    assert skewed_pivot(skewed_Sn(4)) == 1
    assert skewed_pivot(skewed_Sn(4, form="3N3")) == 4


def test_skewed_pivot_examples():
    assert skewed_pivot(black_domain(5)) is None
    assert skewed_pivot(black_domain(3)) is not None
    with pytest.raises(DomainError):
        skewed_pivot(Domain.full(3))


def test_black_axis():
    assert black_axis(black_domain(5)) == (1, 2, 3, 4, 5)
    assert black_axis(Domain(["123", "231", "312"])) is None  # three different bottoms
    # tops of 3142, 1342, 4132 grow as intervals of 2-3-1-4; no axis starting at 1, or at 2 then 1, works
    assert black_axis(Domain(["3142", "1342", "4132"])) == (2, 3, 1, 4)
    assert black_axis(skewed_Sn(4)) is None


def test_report_fields():
    rep = richness_report(black_domain(4))
    assert rep.richness == min(rep.r_values.values()) == 3
    assert rep.terminals == {a for a, r in rep.rank_ranges.items() if 4 in r}
    assert rep.pivot is None
    assert rep.as_dict()["terminals"] == [1, 4]


@settings(max_examples=150, deadline=None)
@given(d=subdomains(4))
def test_richness_matches_naive_scan(d):
    assert richness(d) == naive_richness(d)
    assert all(r_value(d, a) <= d.n for a in d.alternatives)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_structure_of_maximal_asp_domains(asp, n):
    for d in asp(n).domains:
        rv = {a: r_value(d, a) for a in d.alternatives}
        for a in d.alternatives:
            assert rank_range(d, a) == set(range(1, max(rank_range(d, a)) + 1))
            assert sum(1 for b in d.alternatives if b != a and rv[b] == rv[a]) <= 1
        k = richness(d)
        assert 2 <= k <= n // 2 + 1
        assert terminal_alternatives(d) == {a for a in d.alternatives if rank_range(d, a) == set(range(1, n + 1))}
        assert (skewed_pivot(d) is not None) == (k == 2)


def test_max_richness_is_attained(asp):
    for n in range(3, 8):
        hist = richness_histogram(asp(n))
        assert min(hist) == 2 and max(hist) == n // 2 + 1


def test_histogram_fast_path_matches_domains(asp):
    result = asp(6)
    assert richness_histogram(result) == richness_histogram(list(result.domains))


def test_pivot_definition():
    d = skewed_Sn(5)
    q = skewed_pivot(d)
    for t in ((1, 2, 3), (1, 4, 5)):
        assert NeverCondition(q, 3) in satisfied_conditions(d, t)
    assert is_arrow_single_peaked(d)
