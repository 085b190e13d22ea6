"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (the error code is printed to
stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import families
from .audit import compute_bounds, ratio_floor_check
from .errors import LimitExceededError, ParseError, PsrLabError
from .graph import KProfile, classify_k, twins_partition
from .io import format_graph, format_map, format_plane, parse_graph, parse_map, parse_plane
from .naive import psr_naive
from .psr import Limits, psr_exact
from .saturation import is_plane_saturated, saturate_greedily
from .search import Mode, normalize_embedding


def _read(path: str, parser):
    text = Path(path).read_text()
    try:
        return parser(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _rat(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _construct(args, out) -> int:
    fam = args.family
    if fam in ("example11", "example11p", "example12"):
        if args.n is None:
            raise _Usage(f"--family {fam} needs --n")
        if fam == "example12":
            inst = families.example_1_2(args.n)
        else:
            inst = families.example_1_1(args.n, prime=fam == "example11p")
    elif fam == "ddw":
        if args.m is None:
            raise _Usage("--family ddw needs --m")
        inst = families.decorated_double_wheel(args.m)
    else:
        if args.m is None or args.k1 is None or args.k2 is None:
            raise _Usage("--family general needs --m, --k1 and --k2")
        inst = families.general_family(args.m, args.k1, args.k2)
    prefix = args.out
    Path(prefix + ".graph").write_text(format_graph(inst.host))
    Path(prefix + ".plane").write_text(format_plane(inst.witness))
    Path(prefix + ".map").write_text(format_map(inst.embedding))
    print(f"e(G)={inst.host.m} e(H)={inst.witness.underlying.m} ratio={_rat(inst.ratio)}", file=out)
    return 0


def _check(args, out) -> int:
    g = _read(args.graph, parse_graph)
    h = _read(args.plane, parse_plane)
    verdict = is_plane_saturated(g, h)
    if verdict.saturated:
        print("SATURATED", file=out)
    else:
        u, v = verdict.pair
        print(f"ADDABLE {u} {v} face {verdict.face}", file=out)
        print(format_map(verdict.embedding), end="", file=out)
    return 0


def _psr(args, out) -> int:
    g = _read(args.graph, parse_graph)
    target = args.out or str(Path(args.graph).with_suffix("")) + ".witness.plane"
    if args.naive:
        result = psr_naive(g)
    else:
        try:
            result = psr_exact(g, Limits(max_seconds=args.max_seconds))
        except LimitExceededError as exc:
            Path(target).write_text(format_plane(exc.witness))
            print(f"{exc.code}: {exc}; best upper bound {_rat(exc.best_upper)}", file=sys.stderr)
            return 1
    Path(target).write_text(format_plane(result.witness))
    print(_rat(result.value), file=out)
    return 0


def _classify(args, out) -> int:
    g = _read(args.graph, parse_graph)
    for cls in twins_partition(g).classes:
        print("class " + " ".join(str(v) for v in sorted(cls)), file=out)
    prof = classify_k(g)
    print(f"k1={prof.k1} k2={prof.k2}", file=out)
    return 0


def _audit(args, out) -> int:
    g = _read(args.graph, parse_graph)
    h = _read(args.plane, parse_plane)
    phi = _read(args.map, parse_map)
    prof = classify_k(g)
    if args.mode == "twinfree":
        mode = Mode.twin_free()
    elif args.mode == "general":
        mode = Mode.general_k(prof.k1, prof.k2)
    else:
        mode = Mode.for_profile(prof)
    phi = normalize_embedding(g, h, phi, KProfile(mode.k1, mode.k2))
    report = compute_bounds(g, h, phi, mode)
    verdict = ratio_floor_check(report, mode)
    c = report.classification
    print(f"mode {mode.label} case {report.case}", file=out)
    print(f"n0={c.n0} r1={c.r1} r2={c.r2} r3={c.r3} y={c.y} m_s5={c.m_s5} z_s6={c.z_s6}", file=out)
    print("J " + " ".join(str(x) for x in report.J_sizes), file=out)
    print(f"{'id':<24}{'lhs':>8} {'rel':<3}{'rhs':>8}{'margin':>8}  status", file=out)
    for chk in report.checks:
        print(f"{chk.id:<24}{chk.lhs:>8} {chk.relation:<3}{chk.rhs:>8}{chk.margin:>8}  {chk.status}", file=out)
    for chk in report.checks:
        print(f"check {chk.id} {chk.status} {chk.lhs} {chk.rhs}", file=out)
    for vio in report.violations:
        print(f"violation {vio.kind} {vio.detail}", file=out)
    scope = "" if verdict.covered else " (outside proven range)"
    print(
        f"ratio {_rat(verdict.ratio)} floor {_rat(verdict.floor)} strategy {verdict.strategy}{scope} "
        f"{verdict.status}",
        file=out,
    )
    return 0 if verdict.consistent else 1


def _saturate(args, out) -> int:
    g = _read(args.graph, parse_graph)
    h = _read(args.plane, parse_plane)
    sat = saturate_greedily(g, h, args.seed)
    text = format_plane(sat)
    if args.out:
        Path(args.out).write_text(text)
        print(f"e(H)={sat.underlying.m} e(G)={g.m}", file=out)
    else:
        print(text, end="", file=out)
    return 0


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psrlab", description="Plane-saturated subgraphs of planar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a family instance and its saturated witness")
    c.add_argument("--family", required=True, choices=["example11", "example11p", "example12", "ddw", "general"])
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--k1", type=int)
    c.add_argument("--k2", type=int)
    c.add_argument("--out", required=True, metavar="PREFIX")
    c.set_defaults(func=_construct)

    c = sub.add_parser("check", help="decide plane-saturation")
    c.add_argument("--graph", required=True)
    c.add_argument("--plane", required=True)
    c.set_defaults(func=_check)

    c = sub.add_parser("psr", help="exact plane-saturation ratio")
    c.add_argument("--graph", required=True)
    c.add_argument("--naive", action="store_true", help="use the brute-force solver (at most 6 vertices)")
    c.add_argument("--max-seconds", type=float, default=300.0)
    c.add_argument("--out", help="witness .plane path (default: <graph>.witness.plane)")
    c.set_defaults(func=_psr)

    c = sub.add_parser("classify", help="twin classes and (k1, k2)")
    c.add_argument("--graph", required=True)
    c.set_defaults(func=_classify)

    c = sub.add_parser("audit", help="check the counting inequalities on an instance")
    c.add_argument("--graph", required=True)
    c.add_argument("--plane", required=True)
    c.add_argument("--map", required=True)
    c.add_argument("--mode", choices=["twinfree", "general"])
    c.set_defaults(func=_audit)

    c = sub.add_parser("saturate", help="greedily saturate a plane subgraph")
    c.add_argument("--graph", required=True)
    c.add_argument("--plane", required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=_saturate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, sys.stdout)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"psrlab: error: {exc}", file=sys.stderr)
        return 2
    except PsrLabError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
