"""Command-line front end.

Subcommands: ``yield``, ``curve``, ``threshold``, ``table``, ``verify``.

Every run produces one record.  ``--format json`` prints it as a single JSON
object with these top-level keys, in this order:

``tool``, ``version``, ``command``, ``args``, ``results``, ``status``
and, when present, ``seed`` and ``elapsed_s`` (only with ``--timing``, so
that identical commands give byte-identical output by default).

``results`` is a list of flat objects; each carries its own ``protocol``,
``q``, ``m``, ``n``, ``F`` labels.  Real numbers are decimal strings with 12
significant digits; exact rationals are ``"p/q"`` strings.  ``--format csv``
prints the same result rows with a header.

Exit codes: 0 success, 1 verification failure, 2 usage error or invalid
parameters, 3 resource limit exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal
from fractions import Fraction

import mpmath

from . import __version__
from .channel import ChannelParams, parse_fidelity
from .classes import (DEFAULT_CLASS_LIMIT, ClassLimitError,
                      multiset_class_count, profile_count)
from .oracle import (EXACT_GRID, OracleCapError, check_decoders, check_exact,
                     exact_fidelities, simulate_protocol)
from .reference import BASELINES, BOUNDS, TABLE_IDS, THRESHOLDS, table_spec
from .threshold import (DEFAULT_TOL, NoThresholdError, average_error_rate,
                        find_threshold, lower_bound)
from .yields import DEFAULT_PRECISION, PROTOCOLS, compute_yield

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
TABLE_CLASS_LIMIT = 200_000
TABLE_N = (2, 3, 4, 5, 6, 7, 11, 15, 21, 31)
DIGITS = 12


class UsageError(Exception):
    pass


def _num(x, digits=DIGITS) -> str:
    return mpmath.nstr(x, digits)


def _ratio(fr: Fraction) -> str:
    return str(fr)


def _dec(fr: Fraction, places=4) -> str:
    return str((Decimal(fr.numerator) / Decimal(fr.denominator)).quantize(Decimal(1).scaleb(-places)))


def _workers(threads):
    return threads if threads else (os.cpu_count() or 1)


def _pmap(fn, jobs, threads):
    """Ordered map; results come back in job order whatever the worker count."""
    jobs = list(jobs)
    workers = min(_workers(threads), len(jobs)) if jobs else 1
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------- commands

def _needs_n(protocol):
    return protocol in ("ss", "ms", "cl")


def _check_params(args, need_fidelity=True):
    if _needs_n(args.protocol) and args.n is None:
        raise UsageError(f"--n is required for protocol {args.protocol}")
    n = args.n if _needs_n(args.protocol) else None
    F = parse_fidelity(args.fidelity) if need_fidelity else Fraction(1)
    # validates q, m, n and F
    ChannelParams(args.q, args.m, n if n is not None else 2, F)
    return n, F


def _yield_row(job):
    protocol, q, m, n, F, prec, limit = job
    res = compute_yield(protocol, q, m, n, F, precision=prec, class_limit=limit)
    row = {"protocol": protocol, "q": q, "m": m, "n": n, "F": _ratio(F),
           "F_decimal": _num(mpmath.mpf(F.numerator) / F.denominator),
           "D": _num(res.value)}
    return row, res


def cmd_yield(args):
    n, F = _check_params(args)
    row, res = _yield_row((args.protocol, args.q, args.m, n, F,
                           args.precision_bits, args.class_limit))
    full = mpmath.nstr(res.value, int(args.precision_bits * 0.30103))
    row["D_full"] = full
    row["D_rounded"] = _num(res.value, 6)
    row["precision_bits"] = args.precision_bits
    if "class_count" in res.diagnostics:
        row["class_count"] = res.diagnostics["class_count"]
    return [row], EXIT_OK


def _curve_job(job):
    return _yield_row(job)[0]


def cmd_curve(args):
    n, _ = _check_params(args, need_fidelity=False)
    lo, hi = parse_fidelity(args.f_from), parse_fidelity(args.f_to)
    if not lo < hi:
        raise UsageError("--from must be smaller than --to")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    grid = [lo + (hi - lo) * i / (args.steps - 1) for i in range(args.steps)]
    ChannelParams(args.q, args.m, n or 2, lo)
    jobs = [(args.protocol, args.q, args.m, n, F, args.precision_bits, args.class_limit)
            for F in grid]
    return _pmap(_curve_job, jobs, args.threads), EXIT_OK


def _threshold_row(job):
    protocol, q, m, n, tol, prec, limit = job
    res = find_threshold(protocol, q, m, n, tol=tol, precision=prec, class_limit=limit)
    bound = lower_bound(m, q)
    row = {"protocol": protocol, "q": q, "m": m, "n": n,
           "F_min": str(res.rounded(4)),
           "F_min_decimal": _num(mpmath.mpf(res.F_min.numerator) / res.F_min.denominator),
           "F_lo": _ratio(res.lo), "F_hi": _ratio(res.hi),
           "iterations": res.iterations, "precision_bits": res.precision_bits,
           "lower_bound": _dec(bound), "exceeds_bound": res.lo > bound}
    return row


def _with_reference(row, ref):
    row["reference"] = str(ref) if ref is not None else ""
    row["delta"] = str(Decimal(row["F_min"]) - ref) if ref is not None else ""
    return row


def cmd_threshold(args):
    n, _ = _check_params(args, need_fidelity=False)
    tol = parse_fidelity(args.tol)
    row = _threshold_row((args.protocol, args.q, args.m, n, tol,
                          args.precision_bits, args.class_limit))
    from .reference import lookup
    return [_with_reference(row, lookup(args.protocol, args.q, args.m, n))], EXIT_OK


def _table_cell(job):
    protocol, q, m, n, tol, prec, limit = job
    try:
        return _threshold_row(job)
    except ClassLimitError as exc:
        return {"protocol": protocol, "q": q, "m": m, "n": n,
                "F_min": f"skipped(limit)", "limit": exc.limit, "estimate": exc.estimate}


def _cell_estimate(protocol, q, m, n):
    return profile_count(q, m, n) if protocol == "ss" else multiset_class_count(q, m, n)


def cmd_table(args):
    tid = args.id
    if tid == "bounds":
        rows = []
        for m in range(2, args.max_m + 1):
            b = lower_bound(m, args.q)
            ref = BOUNDS.get(m) if args.q == 2 else None
            rows.append({"q": args.q, "m": m, "lower_bound": _ratio(b), "value": _dec(b),
                         "error_rate_at_bound": _ratio(average_error_rate(m, args.q, b)),
                         "reference": str(ref) if ref is not None else "",
                         "delta": str(Decimal(_dec(b)) - ref) if ref is not None else ""})
        return rows, EXIT_OK
    if tid == "baselines":
        jobs = [(p, args.q, m, None, parse_fidelity(args.tol), args.precision_bits,
                 args.class_limit) for m in range(2, args.max_m + 1) for p in ("d1", "d2")]
        rows = _pmap(_threshold_row, jobs, args.threads)
        return [_with_reference(r, BASELINES.get((r["protocol"], r["m"])) if args.q == 2 else None)
                for r in rows], EXIT_OK
    protocol, q = table_spec(tid)
    limit = args.class_limit if args.class_limit_given else TABLE_CLASS_LIMIT
    ns = [n for n in TABLE_N if n <= args.max_n]
    jobs, rows = [], []
    for m in range(2, args.max_m + 1):
        for n in ns:
            job = (protocol, q, m, n, parse_fidelity(args.tol), args.precision_bits, limit)
            est = _cell_estimate(protocol, q, m, n)
            if est > limit:
                rows.append((len(rows), {"protocol": protocol, "q": q, "m": m, "n": n,
                                         "F_min": "skipped(limit)", "limit": limit,
                                         "estimate": est}))
            else:
                rows.append((len(rows), None))
                jobs.append((len(rows) - 1, job))
    done = _pmap(_table_cell, [j for _, j in jobs], args.threads)
    out = [r for _, r in rows]
    for (slot, _), row in zip(jobs, done):
        out[slot] = row
    ref = THRESHOLDS[tid]
    return [_with_reference(r, ref.get((r["m"], r["n"]))) if "limit" not in r else r
            for r in out], EXIT_OK


def _exact_triples(args):
    if args.q is None and args.m is None and args.n is None:
        return list(EXACT_GRID)
    if None in (args.q, args.m, args.n):
        raise UsageError("give all of --q, --m, --n or none of them")
    return [(args.q, args.m, args.n)]


def cmd_verify(args):
    rows = []
    suites = ("exact", "montecarlo") if args.suite == "all" else (args.suite,)
    if "exact" in suites:
        for q, m, n in _exact_triples(args):
            for F in exact_fidelities(q, m):
                r = check_exact(ChannelParams(q, m, n, F), cap=args.tuple_cap)
                rows.append({"suite": "exact", "check": "closed forms == enumeration",
                             "q": q, "m": m, "n": n, "F": r["F"],
                             "detail": f"{r['outcomes']} outcomes, {len(r['mismatches'])} mismatches",
                             "status": "pass" if r["ok"] else "FAIL"})
    if "montecarlo" in suites:
        q = args.q if args.q is not None else 2
        m = args.m if args.m is not None else 3
        n = args.n if args.n is not None else 3
        F = parse_fidelity(args.fidelity if args.fidelity is not None else "0.85")
        params = ChannelParams(q, m, n, F)
        sim = simulate_protocol(params, args.samples, args.seed, threads=_workers(args.threads))
        cmp = sim.compare(args.sigmas)
        bad = [c for c in cmp if not c["ok"]]
        worst = max(abs(c["z"]) for c in cmp)
        rows.append({"suite": "montecarlo", "check": f"every cell within {args.sigmas} sigma",
                     "q": q, "m": m, "n": n, "F": str(F),
                     "detail": (f"{len(cmp)} cells, {len(bad)} outside, max |z| = {worst:.3f}, "
                                f"samples = {args.samples}"),
                     "status": "pass" if not bad else "FAIL"})
        for c in bad:
            d, g, s = c["cell"]
            rows.append({"suite": "montecarlo", "check": f"cell delta={d} gamma={g} s={s}",
                         "q": q, "m": m, "n": n, "F": str(F),
                         "detail": f"expected {float(c['expected']):.6g}, observed "
                                   f"{c['observed']:.6g}, z = {c['z']:.3f}",
                         "status": "FAIL"})
        dec = check_decoders(params, args.decode_samples, args.seed)
        rows.append({"suite": "montecarlo", "check": "MXOR decoding == repetition decoding",
                     "q": q, "m": m, "n": n, "F": str(F),
                     "detail": f"{dec['samples']} tuples, {dec['disagreements']} disagreements",
                     "status": "pass" if dec["ok"] else "FAIL"})
    failed = any(r["status"] != "pass" for r in rows)
    return rows, EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------- output

def _emit(record, fmt, stream):
    rows = record["results"]
    if fmt == "json":
        stream.write(json.dumps(record, indent=2, ensure_ascii=False) + "\n")
        return
    if fmt == "csv":
        fields = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        stream.write(buf.getvalue())
        return
    for r in rows:
        stream.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")
    stream.write(f"status: {record['status']}\n")


def _common(p: argparse.ArgumentParser, protocol=True, fidelity=False):
    if protocol:
        p.add_argument("--protocol", choices=PROTOCOLS, default="ss")
    p.add_argument("--q", type=int, default=2, help="local dimension (default 2)")
    p.add_argument("--m", type=int, default=3, help="number of players (default 3)")
    p.add_argument("--n", type=int, default=None, help="repetition-code length")
    if fidelity:
        p.add_argument("--fidelity", required=True,
                       help="exact fidelity, e.g. 17/20 or 0.85")
    p.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--class-limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap (default: available CPUs)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--timing", action="store_true", help="add elapsed_s to the record")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzdistill",
        description="Yields and threshold fidelities of repetition-code GHZ distillation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("yield", help="yield D at one fidelity")
    _common(p, fidelity=True)
    p.set_defaults(func=cmd_yield)

    p = sub.add_parser("curve", help="yield over a grid of fidelities")
    _common(p)
    p.add_argument("--from", dest="f_from", default="3/4")
    p.add_argument("--to", dest="f_to", default="1")
    p.add_argument("--steps", type=int, default=26)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("threshold", help="threshold fidelity by bisection")
    _common(p)
    p.add_argument("--tol", default=str(DEFAULT_TOL))
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("table", help="threshold grids with bundled reference values")
    _common(p, protocol=False)
    p.add_argument("--id", required=True, choices=TABLE_IDS)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--tol", default=str(DEFAULT_TOL))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="oracle suites")
    p.add_argument("--suite", choices=("exact", "montecarlo", "all"), default="all")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--fidelity", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--decode-samples", type=int, default=2000)
    p.add_argument("--sigmas", type=float, default=3.0)
    p.add_argument("--tuple-cap", type=int, default=2**20)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "class_limit"):
        args.class_limit_given = args.class_limit is not None
        if args.class_limit is None:
            args.class_limit = DEFAULT_CLASS_LIMIT
    start = time.perf_counter()
    try:
        results, code = args.func(args)
    except (UsageError, ValueError, TypeError, NoThresholdError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClassLimitError, OracleCapError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    echo = {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "timing", "format", "command", "class_limit_given")}
    record = {"tool": "ghzdistill", "version": __version__, "command": args.command,
              "args": echo, "results": results,
              "status": "ok" if code == EXIT_OK else "failed"}
    if getattr(args, "seed", None) is not None:
        record["seed"] = args.seed
    if args.timing:
        record["elapsed_s"] = round(time.perf_counter() - start, 3)
    _emit(record, args.format, stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
