"""Reproduction of the published tables at an adjustable scale.

Each builder returns (headers, rows); the CLI renders them as text or CSV.
A `scale` column records the shrink factor so desk-scale runs are
self-describing.  Known quirks: the projective/unitary count table is
bounded on the *value* m rather than on t, and the value 31 appears in
both its (1,3) and (1,5) rows.
"""

from __future__ import annotations

import math

from .admissibility import bunyakovsky_check
from .constants import constant, constants_batch
from .estimates import bh_estimate, li_variant_estimate
from .families import FamilySpec
from .search import (
    SearchTask,
    count_at_checkpoints,
    count_constellation,
    count_fixed_divisor_family,
    segment_report,
    value_bound_to_t_bound,
)

TWIN_PRIME_CONSTANT = 0.66016181584686957393  # OEIS A001692

TABLE_NAMES = ("1", "2", "3", "4", "5", "6", "li", "up18")

# (e, n) types of the m <= 1e18 census, in the published row order
_UP18_TYPES = [
    (1, 3),
    (1, 2), (2, 2), (4, 2), (8, 2), (16, 2),
    (1, 5), (1, 7), (1, 11), (1, 13), (1, 17), (1, 19), (1, 23), (1, 31),
    (1, 43), (1, 61),
    (3, 3), (5, 5), (7, 7), (9, 3),
]


def reproduce_table(
    name: str,
    scale: float = 1.0,
    *,
    xmax: float | None = None,
    threads: int = 1,
    progress=None,
) -> tuple[list[str], list[list]]:
    if scale <= 0 or scale > 1:
        raise ValueError("scale must be in (0, 1]")
    name = str(name)
    if name == "1":
        return _table_segments(scale, threads, progress)
    if name == "2":
        return _table_ratios(scale, threads, progress)
    if name in ("3", "up18"):
        return _table_up18(scale, threads, progress)
    if name == "4":
        return _table_half_power_counts(scale, threads, progress)
    if name == "5":
        return _table_half_power_constants(scale, threads)
    if name == "6":
        return _table_ck_qk(scale, threads)
    if name == "li":
        return _table_li(scale, xmax, threads, progress)
    raise ValueError(f"unknown table name {name!r}; choose from {TABLE_NAMES}")


def _table_segments(scale, threads, progress):
    spec = FamilySpec.projective(1, 3)
    step = max(int(10**10 * scale), 10)
    bounds = [2] + [i * step for i in range(1, 11)]
    task = SearchTask(spec, bounds[-1], threads=threads)
    rows_raw = segment_report(task, bounds)
    headers = ["segment_lo", "segment_hi", "prime_p", "prime_m", "ratio_percent", "max_p", "scale"]
    rows = [
        [r["lo"], r["hi"], r["primes_seen"], r["hits"], round(100 * r["ratio"], 3), r["max_hit"], scale]
        for r in rows_raw
    ]
    total_seen = sum(r["primes_seen"] for r in rows_raw)
    total_hits = sum(r["hits"] for r in rows_raw)
    rows.append(
        [bounds[0], bounds[-1], total_seen, total_hits,
         round(100 * total_hits / total_seen, 3) if total_seen else 0.0,
         max(r["max_hit"] for r in rows_raw), scale]
    )
    return headers, rows


def _table_ratios(scale, threads, progress):
    spec = FamilySpec.projective(1, 3)
    step = max(int(10**10 * scale), 10)
    xs = [i * step for i in range(1, 11)]
    C = constant(spec, prime_bound=10**9, threads=threads).value
    task = SearchTask(spec, xs[-1], threads=threads)
    counts = dict(count_at_checkpoints(task, xs))
    headers = ["x", "P", "E", "E_over_P", "scale"]
    rows = []
    for x in xs:
        e = bh_estimate(C, [1, 2], x).value
        p = counts[x]
        rows.append([x, p, e, e / p if p else math.inf, scale])
    return headers, rows


def _table_up18(scale, threads, progress):
    value_bound = int(10**18 * scale)
    headers = ["e", "n", "count_repunit", "count_alternating", "scale"]
    rows = []
    total = [0, 0]
    for e, n in _UP18_TYPES:
        counts: list[object] = []
        specs = [FamilySpec.projective(e, n)]
        specs.append(FamilySpec.unitary(e, n) if n % 2 == 1 else None)
        for idx, spec in enumerate(specs):
            if spec is None:
                counts.append("")
                continue
            polys = spec.resolve_polynomials()
            x_t = value_bound_to_t_bound(polys[1], value_bound)
            if x_t < 2:
                counts.append(0)
                continue
            report = bunyakovsky_check(polys)
            if report.fixed_divisor_free:
                counts.append(count_constellation(SearchTask(spec, x_t, threads=threads)).q_count)
            else:
                # the n = 2 rows: t(1 + t^e) is always even, so hits are
                # confined to the few t where a value can equal the divisor
                counts.append(
                    count_fixed_divisor_family(polys, x_t, report.offending_prime)
                )
            total[idx] += counts[-1]
        if progress:
            progress(f"type ({e},{n}): {counts}")
        rows.append([e, n, counts[0], counts[1], scale])
    rows.append(["total", "", total[0], total[1], scale])
    return headers, rows


def _table_half_power_counts(scale, threads, progress):
    x = max(int(10**9 * scale), 10)
    specs = [FamilySpec.half_power(k) for k in range(1, 5)]
    consts = constants_batch(specs, prime_bound=10**9, threads=threads)
    headers = ["d", "C", "Q", "E", "rel_err_percent", "scale"]
    rows = []
    for spec, cres in zip(specs, consts):
        polys = spec.resolve_polynomials()
        q = count_constellation(SearchTask(spec, x, threads=threads)).q_count
        e = li_variant_estimate(cres.value, polys, x).value
        rel = 100 * (e - q) / q if q else math.inf
        rows.append([1 << spec.k, round(cres.value, 6), q, round(e, 2), round(rel, 3), scale])
        if progress:
            progress(f"d=2^{spec.k} done")
    return headers, rows


def _table_half_power_constants(scale, threads):
    bound = max(int(10**9 * scale), 100)
    specs = [FamilySpec.half_power(k) for k in range(5, 17)]
    consts = constants_batch(specs, prime_bound=bound, threads=threads)
    headers = ["d", "C", "scale"]
    return headers, [
        [1 << spec.k, round(c.value, 6), scale] for spec, c in zip(specs, consts)
    ]


def _table_ck_qk(scale, threads):
    from .ck import rk_qk_table

    bound = max(int(10**9 * scale), 100)
    records = rk_qk_table(16, exact_bound=bound, threads=threads)
    headers = ["k", "C_rounded", "q_k", "scale"]
    return headers, [[rec.k, round(rec.c_exact), rec.q_k, scale] for rec in records]


def _table_li(scale, xmax, threads, progress):
    spec = FamilySpec.sophie_germain()
    top = int(xmax) if xmax is not None else int(10**10 * scale)
    xs = [10**i for i in range(2, 11) if 10**i <= top]
    if not xs:
        raise ValueError("xmax too small: no table rows at or below it")
    C = 2 * TWIN_PRIME_CONSTANT
    task = SearchTask(spec, xs[-1], threads=threads)
    counts = dict(count_at_checkpoints(task, xs))
    polys = spec.resolve_polynomials()
    headers = ["x", "Q", "E", "rel_err_percent", "scale"]
    rows = []
    for x in xs:
        e = li_variant_estimate(C, polys, x).value
        q = counts[x]
        rel = 100 * (e - q) / q if q else math.inf
        rows.append([x, q, round(e, 2), round(rel, 4), scale])
        if progress:
            progress(f"x={x}: Q={q}")
    return headers, rows
