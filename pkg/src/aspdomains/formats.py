"""Plain-text domain and condition files.

Domain file::

    n=3
    1 2 3
    2 1 3

Condition file, one line per triple in lexicographic order (``-`` for no
condition)::

    n=4
    1 2 3 : 2N3
    1 2 4 : 2N3
    ...
"""

from __future__ import annotations

import re
from math import comb
from pathlib import Path

from .never import EMPTY, SYMBOL_ORDER, ConditionAssignment, NeverCondition, domain_from_conditions
from . import tables
from .orders import Domain, DomainError

_HEADER = re.compile(r"^n=(\d+)$")
_CONDITION_LINE = re.compile(r"^(\d+) (\d+) (\d+) : (\S+)$")


class FormatError(DomainError):
    """A malformed input file; ``kind`` names the problem and ``line`` is 1-based."""

    def __init__(self, kind: str, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


def _split(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _header(lines: list[str]) -> int:
    if not lines:
        raise FormatError("header", 1, "empty file, expected 'n=<k>'")
    m = _HEADER.match(lines[0].strip())
    if not m or int(m.group(1)) < 1:
        raise FormatError("header", 1, f"malformed header {lines[0]!r}, expected 'n=<k>'")
    return int(m.group(1))


def emit_domain(domain: Domain) -> str:
    if not domain.orders:
        raise DomainError("an empty domain has no file form")
    body = "".join(" ".join(map(str, o)) + "\n" for o in domain.orders)
    return f"n={domain.n}\n{body}"


def parse_domain(text: str) -> Domain:
    lines = _split(text)
    n = _header(lines)
    seen: dict[tuple[int, ...], int] = {}
    alts = None
    for number, raw in enumerate(lines[1:], start=2):
        try:
            o = tuple(int(tok) for tok in raw.split())
        except ValueError:
            raise FormatError("token", number, f"non-integer label in {raw!r}") from None
        if len(o) != n:
            raise FormatError("length", number, f"expected {n} labels, got {len(o)}")
        if len(set(o)) != n or (alts is not None and tuple(sorted(o)) != alts):
            raise FormatError("permutation", number, f"{raw!r} is not a permutation of the alternatives")
        alts = tuple(sorted(o))
        if o in seen:
            raise FormatError("duplicate", number, f"order repeats line {seen[o]}")
        seen[o] = number
    if not seen:
        raise FormatError("empty", len(lines) + 1, "no orders after the header")
    return Domain(seen, alts)


def emit_conditions(assignment: ConditionAssignment) -> str:
    body = "".join(
        f"{t[0]} {t[1]} {t[2]} : {s}\n" for t, s in zip(assignment.triples, assignment.symbols())
    )
    return f"n={assignment.n}\n{body}"


def parse_conditions(text: str) -> ConditionAssignment:
    lines = _split(text)
    n = _header(lines)
    ts = tables.triples(n)
    body = lines[1:]
    if len(body) != comb(n, 3):
        raise FormatError("triple-count", len(lines) + 1, f"expected {comb(n, 3)} triple lines, got {len(body)}")
    conds = []
    for number, (raw, t) in enumerate(zip(body, ts), start=2):
        m = _CONDITION_LINE.match(raw.strip())
        if not m:
            raise FormatError("syntax", number, f"expected 'i j k : <symbol>', got {raw!r}")
        got = tuple(int(m.group(i)) for i in (1, 2, 3))
        if got != t:
            raise FormatError("triple", number, f"expected triple {t}, got {got}")
        symbol = m.group(4)
        if symbol != EMPTY and symbol not in SYMBOL_ORDER:
            raise FormatError("symbol", number, f"unknown symbol {symbol!r}")
        conds.append(None if symbol == EMPTY else NeverCondition.from_fishburn(symbol, t))
    return ConditionAssignment(n, tuple(conds))


def is_condition_text(text: str) -> bool:
    lines = _split(text)
    return len(lines) > 1 and " : " in lines[1]


def load_domain(path: str | Path) -> Domain:
    """Read a domain file, or a condition file and build its domain."""
    text = Path(path).read_text(encoding="utf-8")
    if is_condition_text(text):
        return domain_from_conditions(parse_conditions(text))
    return parse_domain(text)


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")
