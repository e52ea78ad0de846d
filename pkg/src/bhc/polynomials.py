"""Dense integer polynomials and the constructors for the prime families.

A polynomial is a tuple of arbitrary-precision coefficients, index i holding
the coefficient of t^i.  The zero polynomial is the empty tuple and has
degree -1.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class IntPolynomial:
    """Immutable dense polynomial over the integers.

    >>> IntPolynomial((1, 1, 1))     # 1 + t + t^2
    IntPolynomial('1 + t + t^2')
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def __call__(self, t: int) -> int:
        """Horner evaluation at an integer point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division; requires the divisor's leading coefficient to divide exactly at each step."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = divisor.degree
        lead = divisor.leading_coefficient
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q, r = divmod(rem[i], lead)
            if r != 0:
                raise ValueError("non-exact polynomial division")
            quot[i - d] = q
            for j, c in enumerate(divisor.coeffs):
                rem[i - d + j] -= q * c
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, divisor: "IntPolynomial") -> "IntPolynomial":
        quot, rem = self.divmod_exact(divisor)
        if not rem.is_zero:
            raise ValueError("non-exact polynomial division")
        return quot

    def substitute_neg_t(self) -> "IntPolynomial":
        """The polynomial f(-t)."""
        return IntPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_poly(self)!r})"


X = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))


def monomial(power: int, coeff: int = 1) -> IntPolynomial:
    return IntPolynomial((0,) * power + (coeff,))


def eval_poly(p: IntPolynomial, t: int) -> int:
    """Exact Horner evaluation (module-level alias for ``p(t)``)."""
    return p(t)


# ---------------------------------------------------------------------------
# Family constructors
# ---------------------------------------------------------------------------

def projective_poly(e: int, n: int) -> IntPolynomial:
    """1 + t^e + t^(2e) + ... + t^((n-1)e), the base-t^e repunit of length n."""
    if e < 1:
        raise ValueError(f"e must be >= 1, got {e}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    coeffs = [0] * ((n - 1) * e + 1)
    for i in range(n):
        coeffs[i * e] = 1
    return IntPolynomial(coeffs)


def unitary_poly(e: int, n: int) -> IntPolynomial:
    """1 - t^e + t^(2e) - ... + t^((n-1)e); n must be odd so the lead is +1."""
    if e < 1:
        raise ValueError(f"e must be >= 1, got {e}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    coeffs = [0] * ((n - 1) * e + 1)
    for i in range(n):
        coeffs[i * e] = 1 if i % 2 == 0 else -1
    return IntPolynomial(coeffs)


def sophie_germain_polys() -> tuple[IntPolynomial, IntPolynomial]:
    """The pair (t, 2t+1)."""
    return X, IntPolynomial((1, 2))


def half_power_poly(k: int) -> tuple[IntPolynomial, IntPolynomial]:
    """The pair (2t+1, ((2t+1)^(2^k) + 1) / 2), expanded exactly.

    The second polynomial is 1 + sum_{i=1}^{d} binom(d,i) 2^(i-1) t^i with
    d = 2^k; coefficients are built iteratively so k = 16 (degree 65536)
    stays cheap.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    d = 1 << k
    coeffs = [0] * (d + 1)
    coeffs[0] = 1
    binom = 1  # binom(d, i), updated in the loop
    pow2 = 1   # 2^(i-1)
    for i in range(1, d + 1):
        binom = binom * (d - i + 1) // i
        coeffs[i] = binom * pow2
        pow2 <<= 1
    return IntPolynomial((1, 2)), IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# Cyclotomic machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, by exact division of x^d - 1."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    num = monomial(d) - ONE
    for dd in range(1, d):
        if d % dd == 0:
            num = num // cyclotomic(dd)
    return num


def repunit_factorization(e: int, n: int) -> list[int]:
    """Cyclotomic indices of projective_poly(e, n): divisors of n*e not dividing e."""
    if e < 1 or n < 2:
        raise ValueError("need e >= 1 and n >= 2")
    ne = n * e
    return [d for d in range(1, ne + 1) if ne % d == 0 and e % d != 0]


def is_irreducible_repunit(e: int, n: int) -> bool:
    """Whether projective_poly(e, n) is irreducible: n prime and e a power of n."""
    if e < 1 or n < 2:
        raise ValueError("need e >= 1 and n >= 2")
    if not _is_small_prime(n):
        return False
    while e % n == 0:
        e //= n
    return e == 1


def _is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# Text form used by the CLI family grammar
# ---------------------------------------------------------------------------

def format_poly(p: IntPolynomial, var: str = "t") -> str:
    """Render as ``c0 + c1*t + c2*t^2 + ...`` (ascending powers, zero terms skipped)."""
    if p.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            pow_part = var if i == 1 else f"{var}^{i}"
            term = ("-" if c < 0 else "") + mag + pow_part
        if parts:
            parts.append(f"- {term[1:]}" if term.startswith("-") else f"+ {term}")
        else:
            parts.append(term)
    return " ".join(parts)


def parse_poly(text: str, var: str = "t") -> IntPolynomial:
    """Parse ``c0+c1*t+c2*t^2+...`` with optional signs, any term order.

    Accepted terms: ``5``, ``-3*t``, ``t^2``, ``-t``, ``+7*t^4``.
    """
    import re

    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    term_re = re.compile(
        rf"(?P<sign>[+-]?)(?:(?P<coeff>\d+)\*?)?(?:(?P<var>{re.escape(var)})(?:\^(?P<pow>\d+))?)?"
    )
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("var") is None:
            power = 0
        elif m.group("pow") is not None:
            power = int(m.group("pow"))
        else:
            power = 1
        coeffs[power] = coeffs.get(power, 0) + sign * coeff
        pos = m.end()
    out = [0] * (max(coeffs) + 1)
    for power, c in coeffs.items():
        out[power] = c
    return IntPolynomial(out)
