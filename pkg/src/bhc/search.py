"""Exact prime-constellation counting over sieve segments.

For families whose first polynomial is t the scan iterates primes from the
segmented sieve; otherwise it iterates every t.  A wheel-style pre-sieve
removes t where some f_i(t) is divisible by a small prime before any
strong-pseudoprime test runs; counts are identical with the pre-sieve
disabled.  Segments can run in a process pool and can checkpoint to a
JSONL file for resumable long scans.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from heapq import merge as heap_merge
from pathlib import Path

import numpy as np

from .admissibility import FixedDivisorViolation, bunyakovsky_check
from .families import FamilySpec
from .polynomials import IntPolynomial, X
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_prime, sieve_segment

DEFAULT_PRESIEVE_BOUND = 257
_U64 = 1 << 64


@dataclass(frozen=True)
class SearchTask:
    spec: FamilySpec
    x: int  # inclusive bound on t
    segment_size: int = 10**6
    policy: PrimalityPolicy = DEFAULT_POLICY
    checkpoint_path: str | None = None
    presieve_bound: int = DEFAULT_PRESIEVE_BOUND
    threads: int = 1

    def __post_init__(self):
        if self.x < 2:
            raise ValueError("x must be >= 2")
        if self.segment_size < 2:
            raise ValueError("segment_size must be >= 2")


@dataclass(frozen=True)
class SegmentStat:
    lo: int
    hi: int  # half-open [lo, hi) on t
    primes_seen: int  # candidates after the base sieve (pi-count when f_1 = t)
    hits: int
    max_hit_t: int = 0


@dataclass
class SearchResult:
    q_count: int
    segments: list[SegmentStat]
    largest_hit_t: int
    largest_hit_values: list[int]
    elapsed_s: float


def test_value_prime(v: int, policy: PrimalityPolicy) -> bool:
    """Primality per policy; values beyond 2^64 fall back to the seeded
    probabilistic mode with the policy's rounds."""
    if v < 2:
        return False
    if policy.mode == "deterministic64" and v >= _U64:
        policy = PrimalityPolicy.probabilistic(policy.rounds, policy.seed)
    return is_prime(v, policy)


def small_value_cutoff(polys, bound: int) -> int:
    """Smallest T with |f(t)| > bound for every poly and every t >= T.

    Below T the pre-sieve is unsound (a value could *equal* a small prime),
    so those t are tested directly.
    """
    cutoff = 1
    for p in polys:
        if p.degree < 1 or p.leading_coefficient <= 0:
            raise ValueError(f"{p}: need positive degree and leading coefficient")
        if all(c >= 0 for c in p.coeffs[1:]):
            t = 1  # nondecreasing on t >= 0: simple advance
        else:
            candidates = [0.0]
            for shifted in (p.coeffs, (p.coeffs[0] + bound,) + p.coeffs[1:],
                            (p.coeffs[0] - bound,) + p.coeffs[1:]):
                roots = np.roots(list(reversed(shifted)))
                candidates.extend(z.real for z in roots if abs(z.imag) < 1e-6)
            t = max(1, math.ceil(max(candidates)))
        while p(t) <= bound:
            t += 1
        cutoff = max(cutoff, t)
    return cutoff


def _presieve_roots(polys, bound: int) -> list[tuple[int, list[int]]]:
    """For each prime r <= bound, the residues where some poly vanishes."""
    from .primality import primes_in

    table = []
    for r in primes_in(2, bound + 1):
        roots = set()
        for p in polys:
            reduced = [c % r for c in p.coeffs]
            for s in range(r):
                acc = 0
                for c in reversed(reduced):
                    acc = (acc * s + c) % r
                if acc == 0:
                    roots.add(s)
        if roots:
            table.append((r, sorted(roots)))
    return table


@dataclass
class _Scan:
    """Precomputed immutable scan state shared by all segments."""

    polys: tuple[IntPolynomial, ...]
    prime_driven: bool
    presieve: list[tuple[int, list[int]]]
    t_safe: int
    policy: PrimalityPolicy
    test_order: tuple[int, ...] = ()  # poly indices, typically-smallest value first

    @classmethod
    def for_task(cls, task: SearchTask, check=True) -> "_Scan":
        polys = task.spec.resolve_polynomials()
        if check:
            report = bunyakovsky_check(polys)
            if not report.fixed_divisor_free:
                raise FixedDivisorViolation(
                    f"family {task.spec} has fixed prime divisor {report.offending_prime}"
                )
        prime_driven = polys[0] == X
        sieved = polys[1:] if prime_driven else polys
        if task.presieve_bound >= 2:
            presieve = _presieve_roots(sieved, task.presieve_bound)
            t_safe = small_value_cutoff(sieved, task.presieve_bound)
        else:
            presieve, t_safe = [], 1
        # typical-magnitude order without evaluating the (possibly huge) polys
        order = tuple(
            sorted(range(len(polys)),
                   key=lambda i: (polys[i].degree, abs(polys[i].leading_coefficient)))
        )
        return cls(polys, prime_driven, presieve, t_safe, task.policy, order)

    def hit(self, t: int, skip_first: bool) -> bool:
        """Test the polynomials at t smallest-typical-value first, lazily:
        the expensive big values are only evaluated when the cheap ones
        are already prime."""
        for i in self.test_order:
            if skip_first and i == 0:
                continue
            if not test_value_prime(self.polys[i](t), self.policy):
                return False
        return True

    def run_segment(self, lo: int, hi: int) -> SegmentStat:
        """Count hits for t in [lo, hi)."""
        if self.prime_driven:
            seg = sieve_segment(lo, hi)
            candidates = seg.primes()
        else:
            candidates = np.arange(lo, hi, dtype=np.uint64)
        seen = len(candidates)
        if len(candidates) and self.presieve:
            keep_direct = candidates < self.t_safe
            bad = np.zeros(hi - lo, dtype=bool)
            for r, roots in self.presieve:
                for s in roots:
                    bad[(s - lo) % r :: r] = True
            keep = keep_direct | ~bad[(candidates - np.uint64(lo)).astype(np.int64)]
            candidates = candidates[keep]
        hits = 0
        max_hit = 0
        skip_first = self.prime_driven
        for t in candidates:
            t = int(t)
            if self.hit(t, skip_first):
                hits += 1
                max_hit = t
        return SegmentStat(lo, hi, seen, hits, max_hit)


def _segment_ranges(t_lo: int, t_hi: int, size: int, cuts=()) -> list[tuple[int, int]]:
    """[lo, hi) ranges covering [t_lo, t_hi], split by size and by cuts."""
    edges = {t_lo, t_hi + 1}
    edges.update(c + 1 for c in cuts if t_lo <= c <= t_hi)
    lo = t_lo
    while lo + size < t_hi + 1:
        lo += size
        edges.add(lo)
    edges = sorted(edges)
    return list(zip(edges[:-1], edges[1:]))


def _run_segment_task(args):
    scan, lo, hi = args
    return scan.run_segment(lo, hi)


class _Checkpoint:
    """Append-only JSONL record of completed segments."""

    def __init__(self, path: str, task: SearchTask):
        self.path = Path(path)
        # x is deliberately not part of the identity: extending a scan to a
        # larger bound reuses the finished segments
        self.header = {
            "family": str(task.spec),
            "segment_size": task.segment_size,
            "policy": [task.policy.mode, task.policy.rounds, task.policy.seed],
            "presieve_bound": task.presieve_bound,
        }
        self.done: dict[tuple[int, int], SegmentStat] = {}
        if self.path.exists():
            with self.path.open() as fh:
                lines = [json.loads(line) for line in fh if line.strip()]
            if not lines or lines[0] != self.header:
                raise ValueError(
                    f"checkpoint {path} belongs to a different task; refusing to resume"
                )
            for rec in lines[1:]:
                stat = SegmentStat(
                    rec["lo"], rec["hi"], rec["primes_seen"], rec["hits"], rec["max_hit_t"]
                )
                self.done[(stat.lo, stat.hi)] = stat
        else:
            with self.path.open("w") as fh:
                fh.write(json.dumps(self.header) + "\n")

    def record(self, stat: SegmentStat) -> None:
        with self.path.open("a") as fh:
            fh.write(
                json.dumps(
                    {
                        "lo": stat.lo,
                        "hi": stat.hi,
                        "primes_seen": stat.primes_seen,
                        "hits": stat.hits,
                        "max_hit_t": stat.max_hit_t,
                    }
                )
                + "\n"
            )


def _scan_ranges(task: SearchTask, scan: _Scan, ranges, progress=None) -> list[SegmentStat]:
    checkpoint = _Checkpoint(task.checkpoint_path, task) if task.checkpoint_path else None
    stats: dict[tuple[int, int], SegmentStat] = {}
    todo = []
    for lo, hi in ranges:
        if checkpoint and (lo, hi) in checkpoint.done:
            stats[(lo, hi)] = checkpoint.done[(lo, hi)]
        else:
            todo.append((lo, hi))
    done = len(ranges) - len(todo)
    hits_so_far = sum(s.hits for s in stats.values())

    def note(stat):
        nonlocal done, hits_so_far
        done += 1
        hits_so_far += stat.hits
        if progress:
            progress(f"segments {done}/{len(ranges)}, hits {hits_so_far}")

    if task.threads <= 1:
        for lo, hi in todo:
            stat = scan.run_segment(lo, hi)
            stats[(lo, hi)] = stat
            if checkpoint:
                checkpoint.record(stat)
            note(stat)
    else:
        with ProcessPoolExecutor(max_workers=task.threads) as pool:
            for stat in pool.map(_run_segment_task, [(scan, lo, hi) for lo, hi in todo]):
                stats[(stat.lo, stat.hi)] = stat
                if checkpoint:
                    checkpoint.record(stat)
                note(stat)
    return [stats[r] for r in ranges]


def count_fixed_divisor_family(polys, x: int, offending_prime: int,
                               policy: PrimalityPolicy = DEFAULT_POLICY) -> int:
    """Exact count for a family with a fixed prime divisor r0.

    r0 divides some f_i(t) at every t, so any hit needs that value to *be*
    r0; beyond the point where every |f_i| exceeds r0 no hits exist, and
    the finitely many small t are enumerated directly.
    """
    top = min(x, small_value_cutoff(polys, offending_prime) - 1)
    return sum(
        1
        for t in range(1, top + 1)
        if all(test_value_prime(p(t), policy) for p in polys)
    )


def count_constellation(task: SearchTask, progress=None) -> SearchResult:
    """Exact count of t <= x with every f_i(t) prime."""
    start = time.time()
    scan = _Scan.for_task(task)
    ranges = _segment_ranges(1, task.x, task.segment_size)
    stats = _scan_ranges(task, scan, ranges, progress)
    q = sum(s.hits for s in stats)
    largest = max((s.max_hit_t for s in stats), default=0)
    values = [p(largest) for p in scan.polys] if largest else []
    return SearchResult(q, stats, largest, values, time.time() - start)


def count_at_checkpoints(task: SearchTask, xs) -> list[tuple[int, int]]:
    """Cumulative counts Q(x) at each x in xs, from a single scan."""
    xs = sorted(int(x) for x in xs)
    if not xs or xs[-1] > task.x:
        raise ValueError("checkpoints must be nonempty and <= task.x")
    scan = _Scan.for_task(task)
    ranges = _segment_ranges(1, xs[-1], task.segment_size, cuts=xs)
    stats = _scan_ranges(task, scan, ranges)
    out = []
    acc = 0
    it = iter(stats)
    for x in xs:
        for s in it:
            acc += s.hits
            if s.hi == x + 1:
                break
        out.append((x, acc))
    return out


def segment_report(task: SearchTask, segment_bounds) -> list[dict]:
    """Rows (lo, hi, primes_seen, hits, ratio, max_hit) for [b_i, b_{i+1})
    segments, the last one closed at the top."""
    bounds = [int(b) for b in segment_bounds]
    if len(bounds) < 2 or any(b <= a for a, b in zip(bounds, bounds[1:])):
        raise ValueError("need at least two ascending bounds")
    scan = _Scan.for_task(task)
    rows = []
    for i, (lo, hi) in enumerate(zip(bounds[:-1], bounds[1:])):
        top = hi + 1 if i == len(bounds) - 2 else hi  # closed top on the last row
        ranges = _segment_ranges(max(lo, 1), top - 1, task.segment_size)
        stats = _scan_ranges(replace(task, checkpoint_path=None), scan, ranges)
        seen = sum(s.primes_seen for s in stats)
        hits = sum(s.hits for s in stats)
        rows.append(
            {
                "lo": lo,
                "hi": hi,
                "primes_seen": seen,
                "hits": hits,
                "ratio": hits / seen if seen else 0.0,
                "max_hit": max((s.max_hit_t for s in stats), default=0),
            }
        )
    return rows


def ratio_table(spec: FamilySpec, xs, C: float, *, formula: str = "classic",
                task: SearchTask | None = None, tol: float = None) -> list[dict]:
    """Rows (x, Q, E, E/Q) joining exact counts with the estimate."""
    from .estimates import bh_estimate, li_variant_estimate

    xs = sorted(int(x) for x in xs)
    if task is None:
        task = SearchTask(spec, xs[-1])
    counts = dict(count_at_checkpoints(task, xs))
    polys = spec.resolve_polynomials()
    rows = []
    for x in xs:
        if formula == "li":
            est = li_variant_estimate(C, polys, x, tol)
        else:
            est = bh_estimate(C, [p.degree for p in polys], x, tol)
        q = counts[x]
        rows.append({"x": x, "Q": q, "E": est.value, "ratio": est.value / q if q else math.inf})
    return rows


def value_bound_to_t_bound(poly: IntPolynomial, value_bound: int) -> int:
    """Largest t >= 1 with poly(t) <= value_bound (poly nondecreasing there);
    0 if even poly(1) exceeds the bound."""
    if poly(1) > value_bound:
        return 0
    hi = 1
    while poly(hi * 2) <= value_bound:
        hi *= 2
    lo, hi = hi, hi * 2  # poly(lo) <= bound < poly(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if poly(mid) <= value_bound:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Desk-scale checks
# ---------------------------------------------------------------------------

def _repunits_from_base(x: int, bound: int):
    v, n = 1 + x + x * x, 3
    while v <= bound:
        yield v, x, n
        v, n = v * x + 1, n + 1


def goormaghtigh_search(bound: int) -> list[tuple[int, tuple[int, int], tuple[int, int]]]:
    """All integers <= bound equal to two repunits of lengths >= 3 in
    different bases, via a sorted merge of the per-base streams."""
    bound = int(bound)
    if bound < 7:
        raise ValueError("bound must be >= 7 (the smallest length-3 repunit)")
    xmax = int(math.isqrt(bound))
    while 1 + xmax + xmax * xmax > bound:
        xmax -= 1
    streams = [_repunits_from_base(x, bound) for x in range(2, xmax + 1)]
    matches = []
    group: list[tuple[int, int, int]] = []
    for v, x, n in heap_merge(*streams):
        if group and v != group[0][0]:
            matches.extend(_emit_coincidences(group))
            group = []
        group.append((v, x, n))
    matches.extend(_emit_coincidences(group))
    return matches


def _emit_coincidences(group):
    out = []
    for i in range(len(group)):
        for j in range(i + 1, len(group)):
            v, x, n = group[i]
            _, y, k = group[j]
            if n != k:
                out.append((v, (x, n), (y, k)))
    return out


def feit_thompson_check(p: int, q: int) -> tuple[bool, int]:
    """Whether (p^q-1)/(p-1) divides (q^p-1)/(q-1), plus their gcd."""
    if p == q:
        raise ValueError("p and q must be distinct")
    for v in (p, q):
        if not test_value_prime(v, DEFAULT_POLICY):
            raise ValueError(f"{v} is not prime")
    a = (p**q - 1) // (p - 1)
    b = (q**p - 1) // (q - 1)
    return b % a == 0, math.gcd(a, b)


def feit_thompson_scan(q: int, pmax: int) -> list[int]:
    """Primes p <= pmax (p != q) where the repunit divisibility holds;
    conjecturally always empty."""
    from .primality import primes_in

    violations = []
    for p in primes_in(2, pmax + 1):
        if p == q:
            continue
        divides, _ = feit_thompson_check(p, q)
        if divides:
            violations.append(p)
    return violations
