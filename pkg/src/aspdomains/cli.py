"""Command-line entry point: ``aspdomains <command> ...``.

Exit codes: 0 success, 1 a verification found a violation, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .enumeration import DEFAULT_FRONTIER_DEPTH, MAX_N, MIN_N, default_jobs, enumerate_asp
from .never import (
    is_arrow_single_dipped,
    is_arrow_single_peaked,
    is_condorcet_sen,
    is_maximal_condorcet,
)
from .orders import Domain, DomainError, relabeling_to_identity
from .richness import (
    black_axis,
    black_domain,
    cyclic_shift_domain,
    richness_histogram,
    richness_report,
    skewed_pivot,
    skewed_Sn,
)
from .voting import (
    RULES,
    check_arrow_iia_borda,
    check_nash_iia,
    hierarchically_cyclic_partition,
    max_hc_domain,
    max_qa_domain,
    satisfies_LF,
    satisfies_QA,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _jobs(value: Optional[int]) -> int:
    return default_jobs() if value is None else value


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args) -> int:
    result = enumerate_asp(args.n, args.mode, jobs=_jobs(args.jobs), frontier_depth=args.frontier_depth)
    if args.count_only:
        sys.stdout.write(f"{result.count}\n")
        return EXIT_OK
    if args.out is None:
        raise UsageError("enumerate needs --out unless --count-only is given")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(result.count))
    files = []
    for i, (string, domain) in enumerate(zip(result.strings, result.domains), start=1):
        stem = f"asp-n{args.n}-{i:0{width}d}"
        formats.write_text(out / f"{stem}.cond", formats.emit_conditions(string))
        files.append(f"{stem}.cond")
        if not args.pack:
            formats.write_text(out / f"{stem}.dom", formats.emit_domain(domain))
            files.append(f"{stem}.dom")
    summary = {"n": args.n, "count": result.count, "classes": len(result.strings), "files": files}
    formats.write_text(out / "summary.json", _dump(summary))
    sys.stdout.write(f"{result.count}\n")
    return EXIT_OK


def _tsv(rows: list[tuple]) -> str:
    return "".join("\t".join(str(c) for c in row) + "\n" for row in rows)


def cmd_analyze(args) -> int:
    domain = formats.load_domain(args.infile)
    report = richness_report(domain).as_dict()
    if args.report == "richness":
        data = {k: report[k] for k in ("richness", "r_values", "pivot")}
        rows = [("alternative", "r_value")] + [(a, r) for a, r in report["r_values"].items()]
        rows.append(("richness", report["richness"]))
    elif args.report == "terminals":
        data = {"terminals": report["terminals"]}
        rows = [("terminal",)] + [(a,) for a in report["terminals"]]
    else:
        data = {"rank_ranges": report["rank_ranges"]}
        rows = [("alternative", "ranks")] + [
            (a, ",".join(map(str, r))) for a, r in report["rank_ranges"].items()
        ]
    sys.stdout.write(_dump(data) if args.format == "json" else _tsv(rows))
    return EXIT_OK


def classify(domain: Domain) -> dict:
    condorcet = is_condorcet_sen(domain)
    standard = domain.alternatives == tuple(range(1, domain.n + 1))
    peaked = is_arrow_single_peaked(domain)
    # the hierarchy is read off a relabeling that makes the first order 1..n
    g = relabeling_to_identity(domain.orders[0])
    partition = hierarchically_cyclic_partition(
        Domain((tuple(g[a] for a in o) for o in domain.orders), range(1, domain.n + 1))
    )
    axis = black_axis(domain)
    return {
        "n": domain.n,
        "size": len(domain),
        "condorcet": condorcet,
        "maximal": bool(condorcet and standard and is_maximal_condorcet(domain)),
        "arrow_peaked": peaked,
        "arrow_dipped": is_arrow_single_dipped(domain),
        "LF": satisfies_LF(domain),
        "QA": satisfies_QA(domain),
        "hierarchically_cyclic": partition is not None,
        "hc_partition": None if partition is None else partition.as_dict(),
        "hc_relabeling": None if partition is None else {str(a): b for a, b in sorted(g.items())},
        "skewed": peaked and skewed_pivot(domain) is not None,
        "pivot": skewed_pivot(domain) if peaked else None,
        "black": axis is not None,
        "black_axis": None if axis is None else list(axis),
    }


def cmd_classify(args) -> int:
    sys.stdout.write(_dump(classify(formats.load_domain(args.infile))))
    return EXIT_OK


def construct(family: str, n: int, fixed_rank: Optional[int] = None, lead: Optional[int] = None) -> Domain:
    if family == "qa-max":
        return max_qa_domain(n, fixed_rank)
    if fixed_rank is not None:
        raise UsageError("--fixed-rank only applies to qa-max")
    if family == "hc-max":
        return max_hc_domain(n, lead)
    if lead is not None:
        raise UsageError("--lead only applies to hc-max")
    if family == "black":
        return black_domain(n)
    if family == "skewed-sn":
        return skewed_Sn(n)
    if family == "cyclic":
        return cyclic_shift_domain(n)
    raise UsageError(f"unknown family {family!r}")


def cmd_construct(args) -> int:
    text = formats.emit_domain(construct(args.family, args.n, args.fixed_rank, args.lead))
    if args.out is None:
        sys.stdout.write(text)
    else:
        formats.write_text(args.out, text)
    return EXIT_OK


def cmd_verify_iia(args) -> int:
    domain = formats.load_domain(args.infile)
    if args.axiom == "nash":
        verdict = check_nash_iia(args.rule, domain, args.max_voters)
    else:
        if args.rule != "borda":
            raise UsageError("the arrow axiom is only checked for borda")
        verdict = check_arrow_iia_borda(domain, args.max_voters, args.reading)
    sys.stdout.write(_dump(verdict.as_dict()))
    return EXIT_VIOLATION if verdict.violated else EXIT_OK


def cmd_stats(args) -> int:
    hist = richness_histogram(enumerate_asp(args.n, "insearch", jobs=_jobs(args.jobs)))
    if args.format == "line":
        sys.stdout.write(" ".join(f"{k}:{v}" for k, v in hist.items()) + "\n")
    elif args.format == "tsv":
        sys.stdout.write(_tsv([("n", *hist.keys()), (args.n, *hist.values())]))
    else:
        sys.stdout.write(_dump({"n": args.n, "richness": {str(k): v for k, v in hist.items()}}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _n_range(text: str) -> int:
    n = int(text)
    if not MIN_N <= n <= MAX_N:
        raise argparse.ArgumentTypeError(f"n must lie in [{MIN_N}, {MAX_N}]")
    return n


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aspdomains", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate maximal Arrow single-peaked domains")
    p.add_argument("--n", type=_n_range, required=True)
    p.add_argument("--mode", choices=("posthoc", "insearch"), default="insearch")
    p.add_argument("--out")
    p.add_argument("--jobs", type=_positive, help="worker processes (default: $ASPDOMAINS_JOBS or 1)")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--pack", action="store_true", help="write condition files only")
    p.add_argument("--frontier-depth", type=_positive, default=DEFAULT_FRONTIER_DEPTH)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("analyze", help="rank ranges, richness and terminals of a domain")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--report", choices=("richness", "terminals", "ranges"), default="richness")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="structural flags of a domain")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="write a reference domain")
    p.add_argument("--family", choices=("black", "skewed-sn", "qa-max", "hc-max", "cyclic"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fixed-rank", type=int)
    p.add_argument("--lead", type=int, choices=(2, 3, 4))
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-iia", help="search small profiles for an IIA violation")
    p.add_argument("--rule", choices=sorted(RULES), required=True)
    p.add_argument("--axiom", choices=("nash", "arrow"), required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-voters", type=_positive, required=True)
    p.add_argument("--reading", choices=("pairwise", "fixed-slot"), default="pairwise")
    p.set_defaults(func=cmd_verify_iia)

    p = sub.add_parser("stats", help="richness histogram of the enumerated domains")
    p.add_argument("--n", type=_n_range, required=True)
    p.add_argument("--table", choices=("richness",), default="richness")
    p.add_argument("--jobs", type=_positive)
    p.add_argument("--format", choices=("line", "tsv", "json"), default="line")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, DomainError, OSError, ValueError) as exc:
        sys.stderr.write(f"aspdomains {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
