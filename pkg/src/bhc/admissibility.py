"""The three classical admissibility conditions for a prime-seeking family:
positive leading coefficients, irreducibility (decided only where a proof
is known), and absence of a fixed prime divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import HALF_POWER, SYMPLECTIC, FamilySpec
from .omega import OmegaStrategy, closed_form_available, product_poly
from .polynomials import IntPolynomial, is_irreducible_repunit
from .primality import primes_in


class FixedDivisorViolation(ValueError):
    """A prime divides every value of the product polynomial."""


@dataclass(frozen=True)
class AdmissibilityReport:
    leading_positive: tuple[bool, ...]
    irreducible: tuple[bool | None, ...]  # None = unknown
    fixed_divisor_free: bool
    offending_prime: int | None = None

    @property
    def all_leading_positive(self) -> bool:
        return all(self.leading_positive)


def repunit_shape(p: IntPolynomial) -> tuple[int, int] | None:
    """(e, n) if p == 1 + t^e + ... + t^((n-1)e), else None."""
    support = [i for i, c in enumerate(p.coeffs) if c != 0]
    if len(support) < 2 or support[0] != 0:
        return None
    if any(p.coeffs[i] != 1 for i in support):
        return None
    e = support[1]
    if support != list(range(0, e * len(support), e)):
        return None
    return e, len(support)


def vanishes_identically(f: IntPolynomial, r: int) -> bool:
    """Whether f is zero as a function on F_r.

    Exponents fold as t^m = t^((m-1) mod (r-1) + 1) for m >= 1, so the
    check is linear in deg f even when roots cannot be enumerated.
    """
    folded = [0] * min(len(f.coeffs), r)
    for m, c in enumerate(f.coeffs):
        idx = 0 if m == 0 else (m - 1) % (r - 1) + 1
        folded[idx] = (folded[idx] + c) % r
    return not any(folded)


def _decide_irreducible(p: IntPolynomial, spec: FamilySpec | None) -> bool | None:
    if p.is_zero:
        raise ValueError("zero polynomial is not admissible")
    if p.degree == 1:
        return True
    shape = repunit_shape(p)
    if shape is not None:
        return is_irreducible_repunit(*shape)
    mirrored = repunit_shape(p.substitute_neg_t())
    if mirrored is not None and mirrored[0] % 2 == 1:
        # t -> -t is a ring automorphism, so irreducibility transfers
        return is_irreducible_repunit(*mirrored)
    if spec is not None and spec.kind in (HALF_POWER, SYMPLECTIC):
        polys = spec.resolve_polynomials()
        if p == polys[1]:
            # linear image of x^(2^K) + 1, a cyclotomic polynomial
            return True
    return None


def _smallest_prime_factor(n: int) -> int:
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def bunyakovsky_check(
    polys, strategy: OmegaStrategy | None = None
) -> AdmissibilityReport:
    """Check the admissibility conditions for a list of polynomials.

    The fixed-divisor test only needs primes r <= deg(prod f_i): beyond
    that a polynomial with unit content cannot vanish on all residues.
    """
    polys = tuple(polys)
    if not polys or any(p.is_zero for p in polys):
        raise ValueError("need nonzero polynomials")
    spec = strategy.spec if strategy is not None else None
    leading = tuple(p.leading_coefficient > 0 for p in polys)
    irreducible = tuple(_decide_irreducible(p, spec) for p in polys)

    content = 1
    for p in polys:
        content *= p.content()
    if abs(content) > 1:
        return AdmissibilityReport(
            leading, irreducible, False, _smallest_prime_factor(abs(content))
        )

    if spec is not None and spec.kind != "custom" and closed_form_available(spec):
        # formula families have omega(r) << r at every prime
        return AdmissibilityReport(leading, irreducible, True)

    product = product_poly(polys)
    f0 = product(0)
    f1 = product(1)
    for r in primes_in(2, product.degree + 1):
        if f0 % r or f1 % r:
            continue
        if vanishes_identically(product, r):
            return AdmissibilityReport(leading, irreducible, False, r)
    return AdmissibilityReport(leading, irreducible, True)
