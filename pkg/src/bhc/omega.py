"""Counting roots of f = prod f_i in the field of r elements.

Three interchangeable strategies:

* brute       -- evaluate f at every residue (oracle; capped at r <= 10^6)
* generic     -- deg gcd(f mod r, t^r - t) over F_r, exact for any prime r
* closed form -- per-family formulas where one is proven, plus the
                 Legendre-symbol formula for lists of degree <= 2 factors

All three agree for every prime r; a polynomial vanishing identically
mod r reports omega = r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .families import (
    CUSTOM,
    HALF_POWER,
    PROJECTIVE,
    SOPHIE_GERMAIN,
    SYMPLECTIC,
    UNITARY,
    FamilySpec,
)
from .polynomials import IntPolynomial, _is_small_prime

BRUTE_CAP = 10**6


class NonPrimeModulusError(ValueError):
    """A modular inverse failed: the modulus cannot be prime."""


class NoClosedFormError(ValueError):
    """The family has no proven closed-form root count."""


@dataclass(frozen=True)
class OmegaStrategy:
    mode: str  # "brute" | "generic" | "closed_form"
    spec: FamilySpec | None = None

    @classmethod
    def brute(cls) -> "OmegaStrategy":
        return cls("brute")

    @classmethod
    def generic(cls) -> "OmegaStrategy":
        return cls("generic")

    @classmethod
    def closed_form(cls, spec: FamilySpec) -> "OmegaStrategy":
        if not closed_form_available(spec):
            raise NoClosedFormError(f"no closed-form root count for family {spec}")
        return cls("closed_form", spec=spec)

    def describe(self) -> str:
        if self.mode == "closed_form":
            return f"closed_form({self.spec})"
        return self.mode


def closed_form_available(spec: FamilySpec) -> bool:
    """Family kinds whose root counts have a proven formula."""
    if spec.kind in (PROJECTIVE, UNITARY):
        return spec.e == 1 and _is_small_prime(spec.n)
    if spec.kind in (SOPHIE_GERMAIN, HALF_POWER, SYMPLECTIC):
        return True
    if spec.kind == CUSTOM:
        return all(1 <= p.degree <= 2 for p in spec.polys)
    return False


def product_poly(polys) -> IntPolynomial:
    return reduce(lambda a, b: a * b, polys)


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def omega_brute(f: IntPolynomial, r: int) -> int:
    """Count roots by direct evaluation at every residue (r <= 10^6)."""
    if r > BRUTE_CAP:
        raise ValueError(f"brute-force omega capped at r <= {BRUTE_CAP}, got {r}")
    coeffs = [c % r for c in f.coeffs]
    if not any(coeffs):
        return r
    t = np.arange(r, dtype=np.int64)
    acc = np.zeros(r, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * t + c) % r
    return int(np.count_nonzero(acc == 0))


# ---------------------------------------------------------------------------
# Generic: deg gcd(f mod r, t^r - t)
# ---------------------------------------------------------------------------

def _inv_mod(a: int, r: int) -> int:
    try:
        return pow(a, -1, r)
    except ValueError:
        raise NonPrimeModulusError(f"{a} has no inverse mod {r}: modulus not prime") from None


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mulmod(a: list[int], b: list[int], mod: list[int], r: int) -> list[int]:
    """a*b mod (monic mod poly) over F_r."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % r
    d = len(mod) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(d):
                out[i - d + j] = (out[i - d + j] - c * mod[j]) % r
    return _trim(out[:d])


def _gf_gcd(a: list[int], b: list[int], r: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = _inv_mod(b[-1], r)
        bm = [(c * inv) % r for c in b]
        # a mod bm
        d = len(bm) - 1
        rem = list(a)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                for j in range(d + 1):
                    rem[i - d + j] = (rem[i - d + j] - c * bm[j]) % r
        a, b = bm, _trim(rem[: max(d, 0)])
    return a


def omega_generic(f: IntPolynomial, r: int) -> int:
    """deg gcd(f mod r, t^r - t): the number of distinct roots in F_r.

    Returns r when f vanishes identically mod r.  Raises
    NonPrimeModulusError when an inverse fails, which cannot happen for
    prime r.
    """
    if r < 2:
        raise ValueError("modulus must be at least 2")
    a = _trim([c % r for c in f.coeffs])
    if not a:
        return r
    if len(a) == 1:
        return 0
    inv = _inv_mod(a[-1], r)
    a = [(c * inv) % r for c in a]
    if len(a) == 2:
        return 1  # monic linear: exactly one root
    # h = t^r mod a, by left-to-right binary exponentiation
    h = [0, 1]
    started = False
    for bit in bin(r)[2:]:
        if started:
            h = _gf_mulmod(h, h, a, r)
            if bit == "1":
                h = _gf_mulmod(h, [0, 1], a, r)
        else:
            started = True  # leading bit: h = t already
    g = list(h)
    while len(g) < 2:
        g.append(0)
    g[1] = (g[1] - 1) % r
    g = _trim(g)
    if not g:
        return len(a) - 1  # a divides t^r - t: splits into distinct linear factors
    return max(len(_gf_gcd(a, g, r)) - 1, 0)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def legendre_symbol(a: int, r: int) -> int:
    """(a|r) for odd prime r: 1 for residues, -1 for non-residues, 0 if r | a."""
    a %= r
    if a == 0:
        return 0
    s = pow(a, (r - 1) // 2, r)
    return 1 if s == 1 else -1


def _deg_le2_root_count(coeffs: list[int], r: int) -> int:
    """Roots of a polynomial of degree <= 2 given by reduced coeffs mod r."""
    c = _trim(list(coeffs))
    if not c:
        return r
    if len(c) == 1:
        return 0
    if len(c) == 2:
        return 1
    if r == 2:
        return sum(1 for t in (0, 1) if (c[0] + c[1] * t + c[2] * t * t) % 2 == 0)
    disc = (c[1] * c[1] - 4 * c[2] * c[0]) % r
    if disc == 0:
        return 1
    return 1 + legendre_symbol(disc, r)


def _custom_closed_count(polys, r: int) -> int:
    """Distinct roots of a product of degree <= 2 factors.

    Inclusion-exclusion over subsets; each subset contributes the root
    count of the gcd of its members, which again has degree <= 2.
    """
    reduced = [_trim([c % r for c in p.coeffs]) for p in polys]
    if any(not f for f in reduced):
        return r  # some factor vanishes identically
    n = len(reduced)
    total = 0
    for mask in range(1, 1 << n):
        g = None
        for i in range(n):
            if mask >> i & 1:
                g = reduced[i] if g is None else _gf_gcd(g, reduced[i], r)
        sign = -1 if bin(mask).count("1") % 2 == 0 else 1
        total += sign * _deg_le2_root_count(g, r)
    return total


def omega_closed(spec: FamilySpec, r: int) -> int:
    """Closed-form root count for a supported family at prime r."""
    if spec.kind in (PROJECTIVE, UNITARY):
        if not (spec.e == 1 and _is_small_prime(spec.n)):
            raise NoClosedFormError(f"no closed form for {spec}")
        n = spec.n
        if r == n:
            return 2
        return n if r % n == 1 else 1
    if spec.kind == SOPHIE_GERMAIN:
        return 1 if r == 2 else 2
    exponent = spec.half_power_exponent
    if exponent is not None:
        d = 1 << exponent
        if r == 2:
            # f_2 = t + 1 contributes the one even-field root when d = 1
            return 1 if d == 1 else 0
        return d + 1 if r % (2 * d) == 1 else 1
    if spec.kind == CUSTOM:
        if not closed_form_available(spec):
            raise NoClosedFormError(f"no closed form for {spec}")
        return _custom_closed_count(spec.polys, r)
    raise NoClosedFormError(f"no closed form for {spec}")


def omega_for(polys, r: int, strategy: OmegaStrategy) -> int:
    """Dispatch to the strategy; polys is the factor list."""
    if strategy.mode == "closed_form":
        return omega_closed(strategy.spec, r)
    f = product_poly(polys)
    if strategy.mode == "brute":
        return omega_brute(f, r)
    if strategy.mode == "generic":
        return omega_generic(f, r)
    raise ValueError(f"unknown omega strategy {strategy.mode!r}")
