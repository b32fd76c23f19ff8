"""Command-line front end.

    dpv verify e2-3 --check regular,normal --json report.json
    dpv verify-all --p 2 --json reports/
    dpv lattice k2-wci --weights 1,1,2,3 --degrees 6
    dpv groebner --ring ring.txt --ideal ideal.txt --order lex

Exit codes: 0 all checks passed, 1 a check failed or the input was rejected,
2 a computation hit its resource limit before deciding.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import lattice
from .catalogue import ALL_CHECKS, OUT_OF_SCOPE, verify_all, verify_example
from .groebner import Inconclusive, Limits, buchberger
from .orders import grevlex, lex
from .parsing import parse_ideal_lines, parse_ring

_CHECK_ALIASES = {"normal": "geom_normal", "integral": "geom_integral"}


def _parse_checks(raw: str) -> tuple[str, ...]:
    out = []
    for name in raw.split(","):
        name = name.strip()
        if not name:
            continue
        name = _CHECK_ALIASES.get(name, name)
        if name not in ALL_CHECKS:
            raise SystemExit(f"unknown check {name!r}; choose from {', '.join(ALL_CHECKS)}")
        out.append(name)
    return tuple(out)


def _limits(args) -> Limits | None:
    if getattr(args, "limit_pairs", None) is not None:
        return Limits(max_pairs=args.limit_pairs)
    return None


def _dump(payload: dict, path: Path):
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _print_report(report, timings: bool):
    for c in report.checks:
        suffix = f"  [{c.seconds:.2f}s]" if timings else ""
        note = f"  ({c.note})" if c.note and c.status != "pass" else ""
        print(f"  {c.name:14s} {c.status}{note}{suffix}")
    for note in report.notes:
        print(f"  note: {note}")
    print(f"{report.record_id}: {report.status}")


def _cmd_verify(args) -> int:
    checks = _parse_checks(args.check) if args.check else None
    try:
        report = verify_example(args.record_id, checks, _limits(args))
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 1
    _print_report(report, args.timings)
    if args.json:
        _dump(report.to_json(include_timings=args.timings), Path(args.json))
    return {"pass": 0, "fail": 1, "inconclusive": 2}[report.status]


def _cmd_verify_all(args) -> int:
    summary = verify_all(p=args.p, limits=_limits(args), threads=args.threads)
    outdir = Path(args.json) if args.json else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for report in summary.reports:
        exp = report.expected
        row = f"{exp['row']} (p={exp['p']})"
        k2 = report.check("k2").computed if any(c.name == "k2" for c in report.checks) else "?"
        print(f"{row:12s} {report.record_id:14s} {report.status:12s} K2={k2}")
        rows.append({"row": row, "id": report.record_id, "status": report.status})
        if outdir is not None:
            _dump(report.to_json(include_timings=args.timings), outdir / f"{report.record_id}.json")
    for row, reason in summary.skipped:
        print(f"{row:12s} {'-':14s} {'skipped':12s} {reason}")
    n = len(summary.reports)
    print(
        f"{n} records: {n - summary.mismatches - summary.inconclusive} pass, "
        f"{summary.mismatches} fail, {summary.inconclusive} inconclusive"
    )
    if outdir is not None:
        _dump(
            {
                "schema": 1,
                "records": rows,
                "skipped": [{"row": r, "reason": why} for r, why in summary.skipped],
                "mismatches": summary.mismatches,
                "inconclusive": summary.inconclusive,
            },
            outdir / "summary.json",
        )
    return summary.exit_code


def _ints(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip()]


def _cmd_lattice(args) -> int:
    sub = args.subcommand
    if sub == "k2-wci":
        print(lattice.k2_weighted_ci(_ints(args.weights), _ints(args.degrees)))
    elif sub == "rr-chi":
        print(lattice.rr_chi(Fraction(args.chi0), args.l2, args.lk))
    elif sub == "index-two":
        verdict, value = lattice.index_two_check(args.r, args.h2)
        print(f"{verdict} {value}")
    elif sub == "negcurve":
        print(lattice.negcurve_divisibility(args.dy))
    elif sub == "conic-fibration":
        res = lattice.conic_fibration(args.a)
        print(res if isinstance(res, str) else json.dumps(res, sort_keys=True))
    elif sub == "conic-bound":
        print(",".join(str(a) for a in lattice.conic_bundle_bound(args.k2, args.amax)) or "none")
    elif sub == "secant":
        print(lattice.secant_selfint(args.m, args.degc, args.genus, args.n))
    elif sub == "blowup-k2":
        print(lattice.blowup_k2(args.k2, args.degree))
    elif sub == "ruled-k2":
        print(lattice.ruled_k2(args.h1))
    else:  # pragma: no cover - argparse enforces choices
        raise SystemExit(f"unknown lattice subcommand {sub!r}")
    return 0


def _cmd_groebner(args) -> int:
    ring = None
    for line in Path(args.ring).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            ring = parse_ring(line)
            break
    if ring is None:
        print("ring file contains no declaration", file=sys.stderr)
        return 1
    gens = parse_ideal_lines(ring, Path(args.ideal).read_text())
    order = lex(ring.ngeom) if args.order == "lex" else grevlex(ring.ngeom)
    try:
        basis = buchberger(gens, order, _limits(args))
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2
    if not basis:
        print("0")
    for g in basis:
        print(g)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpv", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    pv = subs.add_parser("verify", help="verify one catalogued example")
    pv.add_argument("record_id")
    pv.add_argument("--check", help="comma-separated subset: " + ",".join(
        ("ambient", "regular", "normal", "integral", "k2", "extras")))
    pv.add_argument("--json", help="write the report to this file")
    pv.add_argument("--limit-pairs", type=int, help="Groebner pair budget")
    pv.add_argument("--timings", action="store_true", help="include wall times")
    pv.set_defaults(func=_cmd_verify)

    pa = subs.add_parser("verify-all", help="verify every in-scope example")
    pa.add_argument("--p", type=int, choices=(2, 3), help="restrict to one characteristic")
    pa.add_argument("--json", help="write per-record reports into this directory")
    pa.add_argument("--limit-pairs", type=int)
    pa.add_argument("--threads", type=int, help="worker threads (default DPV_THREADS or 1)")
    pa.add_argument("--timings", action="store_true")
    pa.set_defaults(func=_cmd_verify_all)

    pl = subs.add_parser("lattice", help="exact intersection-number arithmetic")
    lsubs = pl.add_subparsers(dest="subcommand", required=True)
    w = lsubs.add_parser("k2-wci", help="K^2 of a weighted complete intersection")
    w.add_argument("--weights", required=True)
    w.add_argument("--degrees", required=True, help="comma-separated (may be empty)")
    r = lsubs.add_parser("rr-chi", help="chi(L) = chi(O) + (L.L - L.K)/2")
    r.add_argument("chi0", type=int)
    r.add_argument("l2", type=int)
    r.add_argument("lk", type=int)
    i = lsubs.add_parser("index-two", help="integrality of H^2 (1+r)/2")
    i.add_argument("r", type=int)
    i.add_argument("h2", type=int)
    nc = lsubs.add_parser("negcurve", help="divisibility constraint from a negative curve")
    nc.add_argument("dy", type=int)
    cf = lsubs.add_parser("conic-fibration", help="fibration data forced on K^2 = 8/a")
    cf.add_argument("a", type=int)
    cb = lsubs.add_parser("conic-bound", help="multiplicities a with a*K^2 <= 4")
    cb.add_argument("k2", type=int)
    cb.add_argument("amax", type=int)
    se = lsubs.add_parser("secant", help="self-intersection after a secant construction")
    se.add_argument("m", type=int)
    se.add_argument("degc", type=int)
    se.add_argument("genus", type=int)
    se.add_argument("n", type=int)
    bk = lsubs.add_parser("blowup-k2", help="K^2 drop under a point blow-up")
    bk.add_argument("k2", type=int)
    bk.add_argument("degree", type=int)
    rk = lsubs.add_parser("ruled-k2", help="K^2 = 8(1 - h^1) for a ruled surface")
    rk.add_argument("h1", type=int)
    pl.set_defaults(func=_cmd_lattice)

    pg = subs.add_parser("groebner", help="reduced Groebner basis of an ideal file")
    pg.add_argument("--ring", required=True, help="file whose first line declares the ring")
    pg.add_argument("--ideal", required=True, help="file with one polynomial per line")
    pg.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    pg.add_argument("--limit-pairs", type=int)
    pg.set_defaults(func=_cmd_groebner)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
