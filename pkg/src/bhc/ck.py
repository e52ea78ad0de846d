"""Irregularity analysis of the half-power constants C(k).

The least prime r_k = 1 mod 2^(k+1) drives the size of C(k): primes below
r_k all push the Euler product up, and the Mertens sum of their reciprocals
gives the approximation C(k) ~ 4 e^(b-1/2) ln r_k with b the
Meissel-Mertens constant.  Plateaux happen exactly when r_(k+1) = r_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .families import FamilySpec
from .primality import DEFAULT_POLICY, is_prime

MEISSEL_MERTENS = 0.2614972128  # sum 1/r - ln ln x limit, to the usual 10 decimals


@dataclass(frozen=True)
class CkRecord:
    k: int
    r_k: int  # least prime = 1 mod 2^(k+1)
    q_k: int  # (r_k - 1) / 2^(k+1)
    c_approx: float
    c_exact: float | None = None


def least_prime_in_progression(modulus: int, residue: int) -> int:
    """Smallest prime p = residue mod modulus, by ascending scan."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    residue %= modulus
    if math.gcd(modulus, residue) != 1:
        raise ValueError(f"residue {residue} not coprime to modulus {modulus}")
    p = residue if residue > 1 else residue + modulus
    while True:
        if is_prime(p, DEFAULT_POLICY):
            return p
        p += modulus


def ck_approx(k: int, multiplier: float | None = None) -> float:
    """4 e^(b-1/2) ln r_k (the leading constant can be overridden)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if multiplier is None:
        multiplier = 4.0 * math.exp(MEISSEL_MERTENS - 0.5)
    return multiplier * math.log(least_prime_in_progression(1 << (k + 1), 1))


def rk_qk_table(
    k_max: int,
    *,
    exact_bound: int | None = None,
    threads: int = 1,
) -> list[CkRecord]:
    """Records for k = 1..k_max; joining the exact constants at a prime
    bound is optional because it is the only expensive part."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    exact: list[float | None] = [None] * k_max
    if exact_bound is not None:
        from .constants import constants_batch

        results = constants_batch(
            [FamilySpec.half_power(k) for k in range(1, k_max + 1)],
            prime_bound=exact_bound,
            threads=threads,
        )
        exact = [res.value for res in results]
    records = []
    for k in range(1, k_max + 1):
        modulus = 1 << (k + 1)
        r_k = least_prime_in_progression(modulus, 1)
        records.append(
            CkRecord(
                k=k,
                r_k=r_k,
                q_k=(r_k - 1) // modulus,
                c_approx=ck_approx(k),
                c_exact=exact[k - 1],
            )
        )
    return records
