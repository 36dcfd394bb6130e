"""Command-line frontend.

Exit codes: 0 extremal ray certified, 1 inconclusive, 2 empty divisor, 3 and up for
usage or internal errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .arith import Interval
from .criteria import (ExtremalCertified, Inconclusive, asymptotic_scan, check_k3, k3_divisor_to_heegner,
                       run_ladder, table1_j, verdict_json, verdict_kind)
from .eisenstein import EisensteinCache, default_cache_path, eisenstein_table
from .lattice import EmptyDivisor, HeegnerIndex, InvalidIndex, LatticeError, parse_lattice, unimodular_lattice
from .tables import K3_TABLE

EXIT_CERTIFIED, EXIT_INCONCLUSIVE, EXIT_EMPTY, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _residues(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"residues must be comma-separated integers: {text!r}") from None


def _int_range(text: str) -> list[int]:
    """'4,8,13' or '1-20' or a mix."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _cache(args) -> EisensteinCache | None:
    if getattr(args, "no_cache", False):
        return None
    return EisensteinCache(args.cache) if args.cache else EisensteinCache(default_cache_path())


def _num(x, short: bool = False) -> str:
    if x is None:
        return ""
    if isinstance(x, Interval):
        return f"{float(x.hi):.6e}"
    text = str(x)
    if short and isinstance(x, Fraction) and len(text) > 24:
        return f"~{float(x):.12g}"
    return text


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1, default=str)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_num(r.get(c)) if not isinstance(r.get(c), str) else r[c] for c in columns])
    else:
        cells = [[c for c in columns]] + [[_num(r.get(c), True) if not isinstance(r.get(c), str) else r[c]
                                           for c in columns] for r in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
        for row in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _summary(v) -> dict:
    if isinstance(v, ExtremalCertified):
        c = v.certificate
        return {"verdict": "ExtremalCertified", "criterion": c.criterion_id, "lhs": c.lhs, "rhs": c.rhs}
    if isinstance(v, Inconclusive):
        return {"verdict": "Inconclusive", "criterion": "", "lhs": None, "rhs": None}
    return {"verdict": "EmptyDivisor", "criterion": "", "lhs": None, "rhs": None}


def _exit_for(v) -> int:
    return {"ExtremalCertified": EXIT_CERTIFIED, "Inconclusive": EXIT_INCONCLUSIVE,
            "EmptyDivisor": EXIT_EMPTY}[verdict_kind(v)]


# ---------------------------------------------------------------- check


def cmd_check(args, out) -> int:
    cache = _cache(args)
    if args.d is not None:
        if args.h is None or args.a is None:
            raise UsageError("K3 mode needs --d, --h and --a")
        idx, _ = k3_divisor_to_heegner(args.d, args.h, args.a)
        lam = idx.lattice
        expr = lam.expr
    else:
        if args.lattice is None or args.m is None:
            raise UsageError("check needs --lattice and --m (or --d/--h/--a)")
        lam = parse_lattice(args.lattice)
        expr = args.lattice
        D = lam.discriminant_group
        if len(args.mu) != len(D.elementary_divisors):
            raise UsageError(f"--mu needs {len(D.elementary_divisors)} residues for D = "
                             f"{'x'.join(f'Z/{e}' for e in D.elementary_divisors) or '0'}")
        idx = HeegnerIndex(args.m, D.element(args.mu))
    if args.criterion == "siegel":
        from .siegelvol import sign_crosscheck
        report = sign_crosscheck(lam, idx, depth=args.siegel_depth, cache=cache)
        report = {"lattice": expr, "m": str(idx.m), "mu": list(idx.mu.residues), **report}
        if args.format == "json":
            json.dump(report, out, indent=1)
            out.write("\n")
        else:
            for key, val in report.items():
                out.write(f"{key}: {val}\n")
        vol = report.get("volume", {})
        return EXIT_CERTIFIED if vol.get("sign") == "-1" else EXIT_INCONCLUSIVE
    if args.d is not None and args.criterion in ("auto", "fast"):
        verdict = check_k3(args.d, args.h, args.a, args.criterion, cache)
    else:
        verdict = run_ladder(lam, idx, args.criterion, cache)
    record = verdict_json(verdict, expr, idx)
    if args.format == "json":
        json.dump(record, out, indent=1)
        out.write("\n")
    elif args.format == "csv":
        _emit_rows([{"lattice": expr, "m": str(idx.m), "mu": ",".join(map(str, idx.mu.residues)),
                     **_summary(verdict)}], ["lattice", "m", "mu", "verdict", "criterion", "lhs", "rhs"],
                   "csv", out)
    else:
        out.write(f"lattice:   {expr}\n")
        out.write(f"index:     m = {idx.m}, mu = ({','.join(map(str, idx.mu.residues))}), d_mu = {idx.d_mu}\n")
        out.write(f"verdict:   {verdict_kind(verdict)}\n")
        if isinstance(verdict, ExtremalCertified):
            c = verdict.certificate
            out.write(f"criterion: {c.criterion_id}\n")
            lhs = f"<= {float(c.lhs.hi):.12g}" if isinstance(c.lhs, Interval) else f"{c.lhs}"
            out.write(f"lhs:       {lhs}\nrhs:       {c.rhs}\n")
            out.write(f"terms:     {len(c.contributing_terms)}\n")
        elif isinstance(verdict, EmptyDivisor):
            out.write(f"witness:   {verdict.witness}\n")
        else:
            for key, val in record.get("report", {}).items():
                out.write(f"{key}: {json.dumps(val)[:200]}\n")
    return _exit_for(verdict)


# ---------------------------------------------------------------- tables


def _k3_row(job):
    d, m, a, cache_path = job
    cache = EisensteinCache(cache_path) if cache_path else None
    h = 1 + Fraction(a * a, 4 * d) - m
    v = check_k3(d, int(h), a, "auto", cache)
    return {"d": d, "h": int(h), "a": a, "m": str(m), **_summary(v)}


def _map(fn, jobs, n):
    if n <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, jobs, chunksize=1))


def _cache_path(args) -> str | None:
    if getattr(args, "no_cache", False):
        return None
    return str(args.cache or default_cache_path())


def cmd_k3_table(args, out) -> int:
    ds = _int_range(args.d_range)
    jobs = []
    for d in ds:
        if d not in K3_TABLE:
            raise UsageError(f"no stored entries for d = {d} (available: 1-20)")
        for m, a in K3_TABLE[d]:
            jobs.append((d, m, a, _cache_path(args)))
    rows = _map(_k3_row, jobs, args.jobs)
    _emit_rows(rows, ["d", "h", "a", "m", "verdict", "criterion", "lhs", "rhs"], args.format, out)
    return EXIT_CERTIFIED if all(r["verdict"] == "ExtremalCertified" for r in rows) else EXIT_INCONCLUSIVE


def _uni_row(job):
    r, m, listed, cache_path = job
    cache = EisensteinCache(cache_path) if cache_path else None
    lam = unimodular_lattice(r)
    v = run_ladder(lam, HeegnerIndex(m, lam.discriminant_group.zero), "auto", cache)
    return {"r": r, "m": str(m), "listed": "yes" if listed else "no", **_summary(v)}


def cmd_unimodular_table(args, out) -> int:
    jobs = []
    for r in _int_range(args.r_range):
        j = table1_j(r)
        for m in range(1, j + 1 + args.extra):
            jobs.append((r, m, m <= j, _cache_path(args)))
    rows = _map(_uni_row, jobs, args.jobs)
    _emit_rows(rows, ["r", "m", "listed", "verdict", "criterion", "lhs", "rhs"], args.format, out)
    ok = all(r["verdict"] == "ExtremalCertified" for r in rows if r["listed"] == "yes")
    return EXIT_CERTIFIED if ok else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------- scan, eisenstein, cache, discgroup


def cmd_scan(args, out) -> int:
    if args.mode == "k3":
        if args.dmu is None:
            raise UsageError("k3 scan needs --dmu")
        rep = asymptotic_scan("k3", args.m, d_mu=args.dmu, values=range(args.dmin, args.dmax + 1))
    else:
        rep = asymptotic_scan("rank", args.m, values=range(args.rmin, args.rmax + 1),
                              base=args.base, block=args.block)
    rows = [{"param": r.param, "admissible": "yes" if r.admissible else "no",
             "certified": "yes" if r.certified else "no", "lhs": r.lhs, "rhs": r.rhs} for r in rep["rows"]]
    _emit_rows(rows, ["param", "admissible", "certified", "lhs", "rhs"], args.format, out)
    if args.format == "text":
        out.write(f"threshold: {rep['threshold']}\nmonotone tail: {rep['monotone_tail']}\n")
    return EXIT_CERTIFIED if rep["threshold"] is not None else EXIT_INCONCLUSIVE


def cmd_eisenstein(args, out) -> int:
    lam = parse_lattice(args.lattice)
    table = eisenstein_table(lam, None, args.tmax, _cache(args))
    if args.format == "json":
        json.dump({"lattice": args.lattice, "digest": table.lattice_digest, "2k": table.weight.twice_k,
                   "rows": [{"gamma": list(g), "t": str(t), "c": str(c)} for g, t, c in table.rows()]},
                  out, indent=1)
        out.write("\n")
    else:
        out.write(table.to_csv())
    return 0


def cmd_cache(args, out) -> int:
    cache = EisensteinCache(args.cache or default_cache_path())
    if args.action == "clear":
        n = len(cache)
        cache.clear()
        out.write(f"cleared {n} records from {cache.path}\n")
    elif args.action == "verify":
        rep = cache.verify()
        status = "OK" if not rep["corrupt"] and not rep["inconsistent"] else "PROBLEMS"
        out.write(f"{rep['records']} records, {rep['corrupt']} corrupt, {rep['inconsistent']} inconsistent: "
                  f"{status}\n")
        for p in rep["problems"][:20]:
            out.write(f"  {p}\n")
        return 0 if status == "OK" else EXIT_INTERNAL
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["lattice", "2k", "gamma", "t", "c"])
        for (lat, tk, gamma, t), c in sorted(cache.records(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][3],
                                                                             kv[0][2])):
            w.writerow([lat[:16], tk, ",".join(map(str, gamma)), t, c])
    return 0


def cmd_discgroup(args, out) -> int:
    lam = parse_lattice(args.lattice)
    D = lam.discriminant_group
    out.write(f"signature: {lam.signature}\ndet: {lam.det}\n")
    out.write(f"D = {' x '.join(f'Z/{e}' for e in D.elementary_divisors) or '0'}  (order {D.order})\n")
    if D.order > args.limit:
        out.write(f"(listing suppressed: more than {args.limit} elements)\n")
        return 0
    rows = [{"mu": ",".join(map(str, g.residues)), "order": g.order, "q": g.q} for g in D]
    _emit_rows(rows, ["mu", "order", "q"], "text" if args.format == "text" else args.format, out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heegex", description="Certify extremality of primitive Heegner divisors.")
    p.add_argument("--version", action="version", version=f"heegex {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--cache", default=os.environ.get("HEEGEX_CACHE"),
                        help="Eisenstein coefficient cache (default: $HEEGEX_CACHE or ~/.cache/heegex)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="run the criterion ladder on one index")
    c.add_argument("--lattice")
    c.add_argument("--m", type=_fraction)
    c.add_argument("--mu", type=_residues, default=())
    c.add_argument("--d", type=int)
    c.add_argument("--h", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--criterion", choices=("auto", "fast", "simple", "full", "siegel"), default="auto")
    c.add_argument("--siegel-depth", type=int, default=20)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("k3-table", parents=[common], help="reproduce the K3 table")
    k.add_argument("--d", dest="d_range", default="1-20", help="e.g. 1-20 or 1,5,10")
    k.set_defaults(func=cmd_k3_table)

    u = sub.add_parser("unimodular-table", parents=[common], help="reproduce the unimodular table")
    u.add_argument("--r", dest="r_range", default="4,8,13,17,21")
    u.add_argument("--extra", type=int, default=0, help="also run m = j+1 .. j+extra")
    u.set_defaults(func=cmd_unimodular_table)

    s = sub.add_parser("scan", parents=[common], help="fast-bound scan along a family")
    s.add_argument("--mode", choices=("k3", "rank"), required=True)
    s.add_argument("--m", type=_fraction, required=True)
    s.add_argument("--dmu", type=int)
    s.add_argument("--dmin", type=int, default=1)
    s.add_argument("--dmax", type=int, default=50)
    s.add_argument("--base", default="U*2")
    s.add_argument("--block", default="E8(-1)")
    s.add_argument("--rmin", type=int, default=1)
    s.add_argument("--rmax", type=int, default=24)
    s.set_defaults(func=cmd_scan)

    e = sub.add_parser("eisenstein", parents=[common], help="dump Eisenstein coefficients as CSV")
    e.add_argument("--lattice", required=True)
    e.add_argument("--tmax", type=_fraction, required=True)
    e.set_defaults(func=cmd_eisenstein)

    ca = sub.add_parser("cache", parents=[common], help="inspect the coefficient cache")
    ca.add_argument("action", choices=("list", "clear", "verify"))
    ca.set_defaults(func=cmd_cache)

    g = sub.add_parser("discgroup", parents=[common], help="list D(L) with residues and norms")
    g.add_argument("--lattice", required=True)
    g.add_argument("--limit", type=int, default=256)
    g.set_defaults(func=cmd_discgroup)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        if getattr(args, "siegel_depth", 1) < 1:
            raise UsageError("--siegel-depth must be >= 1")
        return args.func(args, out)
    except UsageError as exc:
        print(f"heegex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LatticeError, InvalidIndex, ValueError) as exc:
        print(f"heegex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"heegex: I/O error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SystemExit as exc:          # --help / --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser"]
