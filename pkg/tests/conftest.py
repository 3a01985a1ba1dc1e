import itertools
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from aspdomains.enumeration import enumerate_asp
from aspdomains.orders import Domain


@lru_cache(maxsize=None)
def enumerated(n: int, mode: str = "insearch"):
    return enumerate_asp(n, mode)


@pytest.fixture(scope="session")
def asp():
    """``asp(n)`` gives the cached insearch enumeration for ``n``."""
    return enumerated


def perms(n):
    return list(itertools.permutations(range(1, n + 1)))


def subdomains(n, min_size=1, max_size=None):
    """Strategy: nonempty sets of orders from L(n)."""
    return st.lists(st.sampled_from(perms(n)), min_size=min_size, max_size=max_size, unique=True).map(
        lambda os: Domain(os, range(1, n + 1))
    )


def relabelings(n):
    return st.permutations(list(range(1, n + 1)))


# criterion number -> (passed, one-line description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"AC{number:>2} {'PASS' if ok else 'FAIL'}  {text}")
