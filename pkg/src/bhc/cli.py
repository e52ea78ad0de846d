"""Command-line front end.

Single results print as JSON on stdout; tables print as aligned text.
``--out file.csv`` / ``--out file.json`` writes the machine-readable form.
Progress goes to stderr only.  Exit codes: 0 success, 1 computation error,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

from .constants import FixedDivisorViolation, constant, constant_series
from .estimates import bh_estimate, bh_estimate_simple, li_variant_estimate
from .families import parse_family
from .omega import OmegaStrategy
from .primality import PrimalityPolicy
from .search import (
    SearchTask,
    count_constellation,
    feit_thompson_check,
    feit_thompson_scan,
    goormaghtigh_search,
    value_bound_to_t_bound,
)
from .tables import TABLE_NAMES, reproduce_table


def _parse_bound(text: str) -> int:
    """Integer bounds, scientific notation accepted ('1e9')."""
    value = float(text)
    if value < 0 or math.isnan(value) or math.isinf(value):
        raise argparse.ArgumentTypeError(f"bad bound {text!r}")
    return int(value)


def _parse_policy(text: str) -> PrimalityPolicy:
    if text == "det":
        return PrimalityPolicy.deterministic64()
    if text.startswith("prob"):
        parts = text.split(":")
        rounds = int(parts[1]) if len(parts) > 1 and parts[1] else 40
        seed = int(parts[2]) if len(parts) > 2 and parts[2] else 0
        return PrimalityPolicy.probabilistic(rounds, seed)
    raise argparse.ArgumentTypeError(f"policy must be 'det' or 'prob[:rounds[:seed]]', got {text!r}")


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("BHC_THREADS", "1")))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhc",
        description="Constellation-prime toolkit: Euler-product constants, "
        "integral estimates, exact counts, and table reproduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write result to FILE.csv or FILE.json")
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker processes (default $BHC_THREADS or 1)")

    p = sub.add_parser("constant", help="Euler-product constant for a family")
    p.add_argument("--family", required=True)
    p.add_argument("--bound", required=True, type=_parse_bound)
    p.add_argument("--checkpoints", help="comma-separated partial-product bounds")
    p.add_argument("--strategy", choices=["auto", "closed", "generic", "brute"], default="auto")
    add_common(p)

    p = sub.add_parser("estimate", help="integral estimate of the count")
    p.add_argument("--family", required=True)
    p.add_argument("--x", required=True, type=float)
    p.add_argument("--formula", choices=["classic", "simple", "li"], default="classic")
    p.add_argument("--C", type=float, help="override constant (else computed at --C-bound)")
    p.add_argument("--C-bound", type=_parse_bound, default=10**6)
    p.add_argument("--tol", type=float)
    add_common(p)

    p = sub.add_parser("count", help="exact constellation count Q(x)")
    p.add_argument("--family", required=True)
    p.add_argument("--x", required=True, type=float)
    p.add_argument("--segments", type=int, help="split the range into N segments")
    p.add_argument("--segment-size", type=_parse_bound)
    p.add_argument("--checkpoint", help="JSONL checkpoint path for resumable scans")
    p.add_argument("--policy", type=_parse_policy, default=PrimalityPolicy.deterministic64())
    p.add_argument("--bound-on", choices=["t", "m"], default="t",
                   help="'m' bounds the last polynomial's value instead of t")
    add_common(p)

    p = sub.add_parser("table", help="reproduce a published table")
    p.add_argument("--name", required=True, choices=list(TABLE_NAMES))
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--xmax", type=float, help="top x for the Sophie Germain table")
    add_common(p)

    p = sub.add_parser("ck", help="least primes r_k, the q_k sequence, and C(k)")
    p.add_argument("--kmax", type=int, default=16)
    p.add_argument("--exact-bound", type=_parse_bound,
                   help="also compute exact C(k) at this prime bound")
    add_common(p)

    p = sub.add_parser("goormaghtigh", help="repunit coincidences up to a bound")
    p.add_argument("--bound", required=True, type=_parse_bound)
    add_common(p)

    p = sub.add_parser("feit-thompson", help="repunit divisibility check")
    p.add_argument("--p", type=_parse_bound)
    p.add_argument("--q", type=_parse_bound)
    p.add_argument("--scan-q", type=_parse_bound)
    p.add_argument("--pmax", type=_parse_bound)
    add_common(p)
    return parser


def _emit(payload, out_path, headers=None, rows=None):
    """JSON dict to stdout; optional file output chosen by extension."""
    if rows is not None and payload is None:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(headers)]
        print("  ".join(str(h).ljust(w) for h, w in zip(headers, widths)))
        for r in rows:
            print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
    else:
        print(json.dumps(payload))
    if not out_path:
        return
    if out_path.endswith(".json"):
        with open(out_path, "w") as fh:
            if payload is not None:
                json.dump(payload, fh, indent=2)
            else:
                json.dump({"headers": headers, "rows": rows}, fh, indent=2)
            fh.write("\n")
    elif out_path.endswith(".csv"):
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            if headers is not None:
                writer.writerow(headers)
                writer.writerows(rows)
            else:
                writer.writerow(list(payload))
                writer.writerow([payload[k] for k in payload])
    else:
        raise ValueError(f"--out needs a .csv or .json path, got {out_path!r}")


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _cmd_constant(args) -> dict:
    spec = parse_family(args.family)
    strategy = None
    if args.strategy == "closed":
        strategy = OmegaStrategy.closed_form(spec)
    elif args.strategy == "generic":
        strategy = OmegaStrategy.generic()
    elif args.strategy == "brute":
        strategy = OmegaStrategy.brute()
    t0 = time.time()
    payload = {"family": str(spec), "bound": args.bound}
    if args.checkpoints:
        cps = [_parse_bound(c) for c in args.checkpoints.split(",") if c]
        series = constant_series(spec, args.bound, cps, strategy=strategy)
        payload["series"] = [[b, v] for b, v in series]
        payload["C"] = series[-1][1] if series else None
        payload["log_C"] = math.log(payload["C"]) if payload["C"] else None
        payload["primes_used"] = None
    else:
        res = constant(spec, prime_bound=args.bound, strategy=strategy, threads=args.threads)
        payload.update(C=res.value, log_C=res.log_value, primes_used=res.num_primes_used)
    payload["elapsed_s"] = round(time.time() - t0, 3)
    return payload


def _cmd_estimate(args) -> dict:
    spec = parse_family(args.family)
    polys = spec.resolve_polynomials()
    C = args.C
    if C is None:
        C = constant(spec, prime_bound=args.C_bound, threads=args.threads).value
    if args.formula == "classic":
        res = bh_estimate(C, [p.degree for p in polys], args.x, args.tol)
    elif args.formula == "simple":
        res = bh_estimate_simple(C, [p.degree for p in polys], args.x)
    else:
        res = li_variant_estimate(C, polys, args.x, args.tol)
    return {
        "x": args.x,
        "formula": args.formula,
        "C": C,
        "E": res.value,
        "quad_err": res.abs_quadrature_error,
    }


def _cmd_count(args) -> dict:
    spec = parse_family(args.family)
    x = int(args.x)
    if args.bound_on == "m":
        f_last = spec.resolve_polynomials()[-1]
        x = value_bound_to_t_bound(f_last, int(args.x))
        if x < 2:
            return {"family": str(spec), "x": x, "Q": 0, "largest_hit_t": 0,
                    "largest_hit_values": [], "elapsed_s": 0.0, "segments": 0}
    segment_size = args.segment_size or 10**6
    if args.segments:
        segment_size = max(2, -(-x // args.segments))
    task = SearchTask(
        spec, x, segment_size=segment_size, policy=args.policy,
        checkpoint_path=args.checkpoint, threads=args.threads,
    )
    res = count_constellation(task, progress=_progress if x > 10**7 else None)
    return {
        "family": str(spec),
        "x": x,
        "Q": res.q_count,
        "largest_hit_t": res.largest_hit_t,
        "largest_hit_values": [str(v) for v in res.largest_hit_values],
        "elapsed_s": round(res.elapsed_s, 3),
        "segments": len(res.segments),
    }


def run(args) -> int:
    if args.command == "constant":
        _emit(_cmd_constant(args), args.out)
    elif args.command == "estimate":
        _emit(_cmd_estimate(args), args.out)
    elif args.command == "count":
        _emit(_cmd_count(args), args.out)
    elif args.command == "table":
        headers, rows = reproduce_table(
            args.name, args.scale, xmax=args.xmax, threads=args.threads,
            progress=_progress,
        )
        _emit(None, args.out, headers, rows)
    elif args.command == "ck":
        from .ck import rk_qk_table

        records = rk_qk_table(args.kmax, exact_bound=args.exact_bound, threads=args.threads)
        headers = ["k", "r_k", "q_k", "C_approx", "C_exact"]
        rows = [
            [r.k, r.r_k, r.q_k, round(r.c_approx, 6),
             round(r.c_exact, 6) if r.c_exact is not None else ""]
            for r in records
        ]
        _emit(None, args.out, headers, rows)
    elif args.command == "goormaghtigh":
        found = goormaghtigh_search(args.bound)
        payload = {
            "bound": args.bound,
            "coincidences": [
                {"value": v, "reps": [[x, n], [y, k]]} for v, (x, n), (y, k) in found
            ],
        }
        _emit(payload, args.out)
    elif args.command == "feit-thompson":
        if args.scan_q is not None:
            if args.pmax is None:
                raise _UsageError("--scan-q requires --pmax")
            violations = feit_thompson_scan(args.scan_q, args.pmax)
            _emit({"q": args.scan_q, "pmax": args.pmax, "violations": violations}, args.out)
        else:
            if args.p is None or args.q is None:
                raise _UsageError("need --p and --q, or --scan-q with --pmax")
            divides, gcd = feit_thompson_check(args.p, args.q)
            _emit({"p": args.p, "q": args.q, "divides": divides, "gcd": str(gcd)}, args.out)
    return 0


class _UsageError(Exception):
    pass


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return run(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FixedDivisorViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # bad family grammar / bad table name are usage problems
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1


if __name__ == "__main__":
    sys.exit(main())
