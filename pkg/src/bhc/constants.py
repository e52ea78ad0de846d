"""Hardy-Littlewood constants as partial Euler products over primes.

log C = sum over primes r <= bound of [-k*ln(1-1/r) + ln(1-omega(r)/r)],
evaluated per sieve segment with numpy log1p, merged across segments in
fixed ascending order with Neumaier compensation.  The segmentation is
independent of the worker count, so multi-process runs reproduce the
single-process value bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .admissibility import FixedDivisorViolation, bunyakovsky_check
from .families import CUSTOM, SOPHIE_GERMAIN, FamilySpec
from .omega import (
    OmegaStrategy,
    closed_form_available,
    omega_brute,
    omega_closed,
    omega_generic,
    product_poly,
)
from .polynomials import IntPolynomial
from .primality import DEFAULT_SEGMENT_ODDS, sieve_segments


@dataclass(frozen=True)
class ConstantResult:
    value: float
    log_value: float
    prime_bound: int
    num_primes_used: int
    strategy: OmegaStrategy
    k: int


class _NeumaierSum:
    """Compensated running sum; deterministic for a fixed sequence of parts."""

    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, part: float) -> None:
        t = self.total + part
        if abs(self.total) >= abs(part):
            self.comp += (self.total - t) + part
        else:
            self.comp += (part - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


@dataclass
class _Job:
    polys: tuple[IntPolynomial, ...]
    strategy: OmegaStrategy
    k: int
    spec: FamilySpec | None
    kernel_coeffs: np.ndarray | None  # int64 product coefficients when usable


def _make_job(spec, polys, strategy) -> _Job:
    if polys is None:
        if spec is None:
            raise ValueError("need a family spec or a polynomial list")
        polys = spec.resolve_polynomials()
    polys = tuple(polys)
    if len(set(polys)) != len(polys):
        raise ValueError("polynomials must be pairwise distinct")
    if strategy is None:
        if spec is not None and closed_form_available(spec):
            strategy = OmegaStrategy.closed_form(spec)
        else:
            strategy = OmegaStrategy.generic()
    kernel_coeffs = None
    if strategy.mode == "generic" or (
        strategy.mode == "closed_form" and strategy.spec.kind == CUSTOM
    ):
        product = product_poly(polys)
        if all(abs(c) < _kernels.INT64_COEFF_LIMIT for c in product.coeffs):
            kernel_coeffs = np.array(product.coeffs, dtype=np.int64)
    return _Job(polys, strategy, len(polys), spec, kernel_coeffs)


def _omega_vector(job: _Job, primes: np.ndarray) -> np.ndarray:
    """Root counts for an int64 array of primes."""
    strategy = job.strategy
    if strategy.mode == "closed_form" and strategy.spec.kind != CUSTOM:
        spec = strategy.spec
        if spec.kind == SOPHIE_GERMAIN:
            return np.where(primes == 2, np.int64(1), np.int64(2))
        exponent = spec.half_power_exponent
        if exponent is not None:
            d = 1 << exponent
            w = np.where(primes % (2 * d) == 1, np.int64(d + 1), np.int64(1))
            w[primes == 2] = 1 if d == 1 else 0
            return w
        n = spec.n  # projective/unitary type (1, n), n prime
        w = np.where(primes % n == 1, np.int64(n), np.int64(1))
        w[primes == n] = 2
        return w
    if job.kernel_coeffs is not None and (
        len(primes) == 0 or int(primes[-1]) < _kernels.MODULUS_LIMIT
    ):
        return _kernels.omega_generic_batch(job.kernel_coeffs, primes)
    # slow exact path: huge coefficients or r >= 2^31
    if strategy.mode == "brute":
        f = product_poly(job.polys)
        return np.array([omega_brute(f, int(r)) for r in primes], dtype=np.int64)
    if strategy.mode == "closed_form":
        return np.array(
            [omega_closed(strategy.spec, int(r)) for r in primes], dtype=np.int64
        )
    f = product_poly(job.polys)
    return np.array([omega_generic(f, int(r)) for r in primes], dtype=np.int64)


def _segment_partial(job: _Job, primes: np.ndarray) -> float:
    if len(primes) == 0:
        return 0.0
    w = _omega_vector(job, primes)
    bad = np.flatnonzero(w >= primes)
    if len(bad):
        raise FixedDivisorViolation(
            f"omega(r) = r at r = {int(primes[bad[0]])}: fixed prime divisor"
        )
    rf = primes.astype(np.float64)
    terms = -job.k * np.log1p(-1.0 / rf) + np.log1p(-w.astype(np.float64) / rf)
    if not np.all(np.isfinite(terms)):
        raise AssertionError("non-finite Euler factor: omega computation is broken")
    return float(np.sum(terms))


def _partials_for_range(jobs, lo, hi, segment_odds):
    """Per segment in [lo, hi): (prime count, [partial log-sum per job])."""
    out = []
    for seg in sieve_segments(lo, hi, segment_odds):
        primes = seg.primes().astype(np.int64)
        out.append((len(primes), [_segment_partial(job, primes) for job in jobs]))
    return out


def _worker_partials(args):
    specs, polys_lists, strategies, lo, hi, segment_odds = args
    jobs = [
        _make_job(spec, polys, strategy)
        for spec, polys, strategy in zip(specs, polys_lists, strategies)
    ]
    return _partials_for_range(jobs, lo, hi, segment_odds)


def _segment_ranges(bound: int, segment_odds: int):
    step = 2 * segment_odds
    return [(lo, min(lo + step, bound + 1)) for lo in range(2, bound + 1, step)]


def _run_jobs(jobs, prime_bound, segment_odds, threads):
    sums = [_NeumaierSum() for _ in jobs]
    num_primes = 0
    if threads <= 1:
        for count, partials in _partials_for_range(jobs, 2, prime_bound + 1, segment_odds):
            num_primes += count
            for acc, part in zip(sums, partials):
                acc.add(part)
        return sums, num_primes
    ranges = _segment_ranges(prime_bound, segment_odds)
    chunks = [ranges[i : i + 8] for i in range(0, len(ranges), 8)]
    payload = (
        [job.spec for job in jobs],
        [job.polys for job in jobs],
        [job.strategy for job in jobs],
    )
    with ProcessPoolExecutor(max_workers=threads) as pool:
        args = [(*payload, chunk[0][0], chunk[-1][1], segment_odds) for chunk in chunks]
        for result in pool.map(_worker_partials, args):
            for count, partials in result:
                num_primes += count
                for acc, part in zip(sums, partials):
                    acc.add(part)
    return sums, num_primes


def constant(
    spec: FamilySpec | None = None,
    *,
    polys=None,
    prime_bound: int,
    strategy: OmegaStrategy | None = None,
    segment_odds: int = DEFAULT_SEGMENT_ODDS,
    threads: int = 1,
    check_admissibility: bool = True,
) -> ConstantResult:
    """Partial Euler product over primes r <= prime_bound.

    omega comes from the strategy: the family's closed form when the spec
    provides one, the generic gcd method otherwise.
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    job = _make_job(spec, polys, strategy)
    if check_admissibility:
        report = bunyakovsky_check(job.polys, job.strategy)
        if not report.fixed_divisor_free:
            raise FixedDivisorViolation(
                f"fixed prime divisor {report.offending_prime}: "
                "Euler product would diverge to zero"
            )
    sums, num_primes = _run_jobs([job], prime_bound, segment_odds, threads)
    log_value = sums[0].value
    return ConstantResult(
        value=math.exp(log_value),
        log_value=log_value,
        prime_bound=prime_bound,
        num_primes_used=num_primes,
        strategy=job.strategy,
        k=job.k,
    )


def constants_batch(
    specs,
    *,
    prime_bound: int,
    segment_odds: int = DEFAULT_SEGMENT_ODDS,
    threads: int = 1,
) -> list[ConstantResult]:
    """Constants for several families from a single prime pass."""
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    jobs = [_make_job(spec, None, None) for spec in specs]
    for job in jobs:
        report = bunyakovsky_check(job.polys, job.strategy)
        if not report.fixed_divisor_free:
            raise FixedDivisorViolation(
                f"{job.spec}: fixed prime divisor {report.offending_prime}"
            )
    sums, num_primes = _run_jobs(jobs, prime_bound, segment_odds, threads)
    return [
        ConstantResult(
            value=math.exp(acc.value),
            log_value=acc.value,
            prime_bound=prime_bound,
            num_primes_used=num_primes,
            strategy=job.strategy,
            k=job.k,
        )
        for acc, job in zip(sums, jobs)
    ]


def constant_series(
    spec: FamilySpec,
    prime_bound: int,
    checkpoints,
    *,
    strategy: OmegaStrategy | None = None,
    segment_odds: int = DEFAULT_SEGMENT_ODDS,
) -> list[tuple[int, float]]:
    """Partial-product values at each checkpoint, from one prime pass."""
    checkpoints = [int(c) for c in checkpoints]
    if not checkpoints:
        return []
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if checkpoints[-1] > prime_bound:
        raise ValueError("checkpoints must not exceed prime_bound")
    job = _make_job(spec, None, strategy)
    acc = _NeumaierSum()
    series: list[tuple[int, float]] = []
    pending = list(checkpoints)
    for seg in sieve_segments(2, checkpoints[-1] + 1, segment_odds):
        primes = seg.primes().astype(np.int64)
        start = 0
        while pending and pending[0] < seg.hi:
            cp = pending.pop(0)
            cut = int(np.searchsorted(primes, cp, side="right"))
            acc.add(_segment_partial(job, primes[start:cut]))
            start = cut
            series.append((cp, math.exp(acc.value)))
        if start < len(primes):
            acc.add(_segment_partial(job, primes[start:]))
    return series
