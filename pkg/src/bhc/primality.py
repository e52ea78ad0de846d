"""Prime generation and primality testing.

Two layers: a numpy segmented sieve of Eratosthenes for streaming primes in
64-bit ranges, and strong-pseudoprime (Miller-Rabin) testing for individual
integers of any size.  The deterministic mode uses the first twelve primes
as witnesses, a published set sufficient for every n < 2^64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DEFAULT_SEGMENT_ODDS = 1 << 20  # odd entries per segment, ~2^21 integers
_U64_LIMIT = 1 << 64

# published least strong pseudoprimes to the first k prime bases: below each
# bound the first k witnesses already decide exactly, so smaller n skip the
# rest of the set without changing any answer
_WITNESS_LADDER = (
    (2047, 1),
    (1373653, 2),
    (25326001, 3),
    (3215031751, 4),
    (2152302898747, 5),
    (3474749660383, 6),
    (341550071728321, 7),
    (3825123056546413051, 9),
    (_U64_LIMIT, 12),
)


@dataclass(frozen=True)
class PrimalityPolicy:
    """How is_prime decides: 'deterministic64' (n < 2^64 only) or
    'probabilistic' with seeded random witnesses."""

    mode: str = "deterministic64"
    rounds: int = 40
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("deterministic64", "probabilistic"):
            raise ValueError(f"unknown primality mode {self.mode!r}")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")

    @classmethod
    def deterministic64(cls) -> "PrimalityPolicy":
        return cls("deterministic64")

    @classmethod
    def probabilistic(cls, rounds: int = 40, seed: int = 0) -> "PrimalityPolicy":
        return cls("probabilistic", rounds=rounds, seed=seed)


DEFAULT_POLICY = PrimalityPolicy.deterministic64()


def _splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def _witness_for(n: int, seed: int, counter: int) -> int:
    """Counter-based witness in [2, n-2]: reproducible and call-order independent."""
    span = n - 3  # draw in [0, span), shift by 2
    words = max(1, (span.bit_length() + 63) // 64)
    state = seed ^ (n & 0xFFFFFFFFFFFFFFFF) ^ (counter << 32)
    draw = 0
    for w in range(words):
        draw = (draw << 64) | _splitmix64(state + w)
    return 2 + draw % span


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    """One strong-pseudoprime round; True means 'probably prime'."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> bool:
    """Primality of a nonnegative integer.

    'composite' answers are always correct.  'prime' answers are
    unconditionally correct in deterministic64 mode (n < 2^64 required)
    and hold with error probability <= 4^-rounds otherwise.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if policy.mode == "deterministic64":
        if n >= _U64_LIMIT:
            raise ValueError("deterministic64 policy only covers n < 2^64")
        for bound, count in _WITNESS_LADDER:
            if n < bound:
                break
        for a in DETERMINISTIC_WITNESSES[:count]:
            if a >= n:
                break
            if not _mr_round(n, a, d, s):
                return False
        return True
    for i in range(policy.rounds):
        if not _mr_round(n, _witness_for(n, policy.seed, i), d, s):
            return False
    return True


# ---------------------------------------------------------------------------
# Segmented sieve
# ---------------------------------------------------------------------------

_base_prime_cache: dict[str, np.ndarray] = {}


def _base_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain sieve; cached and grown on demand."""
    limit = max(limit, 1 << 10)
    cached = _base_prime_cache.get("primes")
    if cached is not None and _base_prime_cache["limit"] >= limit:
        return cached[cached <= limit]
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    primes = np.flatnonzero(mask).astype(np.uint64)
    _base_prime_cache["primes"] = primes
    _base_prime_cache["limit"] = limit
    return primes


@dataclass
class SieveSegment:
    """Composite marks for the odd numbers in [lo, hi).

    odd_composite[i] refers to first_odd + 2*i where first_odd is the
    smallest odd >= lo.
    """

    lo: int
    hi: int
    odd_composite: np.ndarray

    @property
    def first_odd(self) -> int:
        return self.lo | 1

    def primes(self) -> np.ndarray:
        """Ascending primes in [lo, hi) as a uint64 array."""
        odds = self.first_odd + 2 * np.flatnonzero(~self.odd_composite).astype(np.uint64)
        odds = odds[odds >= 3]  # 1 is not prime
        if self.lo <= 2 < self.hi:
            return np.concatenate(([np.uint64(2)], odds))
        return odds

    def __contains__(self, n: int) -> bool:
        if not self.lo <= n < self.hi:
            raise ValueError(f"{n} outside segment [{self.lo}, {self.hi})")
        if n < 2:
            return False
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        return not self.odd_composite[(n - self.first_odd) // 2]


def sieve_segment(lo: int, hi: int, base: np.ndarray | None = None) -> SieveSegment:
    """Sieve the odd numbers of [lo, hi) against base primes <= sqrt(hi)."""
    if lo > hi:
        raise ValueError("need lo <= hi")
    first_odd = lo | 1
    count = max((hi - first_odd + 1) // 2, 0)
    marks = np.zeros(count, dtype=bool)
    if count == 0:
        return SieveSegment(lo, hi, marks)
    if base is None:
        base = _base_primes(math.isqrt(max(hi - 1, 0)))
    for p in base[1:]:  # skip 2: only odds are represented
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        marks[(start - first_odd) // 2 :: p] = True
    if first_odd == 1:
        marks[0] = True
    return SieveSegment(lo, hi, marks)


def sieve_segments(
    lo: int, hi: int, segment_odds: int = DEFAULT_SEGMENT_ODDS
) -> Iterator[SieveSegment]:
    """Stream SieveSegments covering [lo, hi) in order."""
    if segment_odds < 2:
        raise ValueError("segment size too small")
    base = _base_primes(math.isqrt(max(hi - 1, 0)))
    step = 2 * segment_odds
    cur = lo
    while cur < hi:
        top = min(cur + step, hi)
        yield sieve_segment(cur, top, base)
        cur = top


def prime_array(lo: int, hi: int) -> np.ndarray:
    """All primes in [lo, hi) as one uint64 array (range must fit memory)."""
    chunks = [seg.primes() for seg in sieve_segments(lo, hi)]
    return np.concatenate(chunks) if chunks else np.empty(0, dtype=np.uint64)


def primes_in(lo: int, hi: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> Iterator[int]:
    """Ascending stream of primes in [lo, hi) as Python ints."""
    for seg in sieve_segments(lo, hi, segment_odds):
        for p in seg.primes():
            yield int(p)


def prime_count(x: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> int:
    """Exact pi(x): the number of primes <= x."""
    if x < 2:
        return 0
    total = 0
    for seg in sieve_segments(2, x + 1, segment_odds):
        total += len(seg.primes())
    return total
