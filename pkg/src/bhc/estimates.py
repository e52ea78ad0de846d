"""Numerical evaluation of the constellation-count estimates.

Three forms: the integral estimate C/prod(deg) * int_2^x dt/(ln t)^k, its
closed-form simplification C/prod(deg) * x/(ln x)^k, and the variant that
replaces each 1/(d_i ln t) with 1/ln f_i(t), which matters for non-monic
polynomials.

Quadrature is adaptive Gauss-Kronrod (scipy QUADPACK) on panels split at
powers of ten so the dynamic range per panel stays small even at x = 1e11.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import quad

from .polynomials import IntPolynomial

CLASSIC = "classic"
SIMPLE = "simple"
LI_VARIANT = "li_variant"

DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True)
class EstimateResult:
    x: float
    value: float
    formula: str
    C_used: float
    abs_quadrature_error: float


def _panels(a: float, b: float) -> list[tuple[float, float]]:
    """Split [a, b] at the powers of ten strictly inside it."""
    cuts = [a]
    p = 10.0 ** math.floor(math.log10(a) + 1)
    while p < b:
        if p > a:
            cuts.append(p)
        p *= 10.0
    cuts.append(b)
    return list(zip(cuts[:-1], cuts[1:]))


def _integrate(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Adaptive quadrature of f over [a, b] with absolute error <= tol."""
    if b <= a:
        return 0.0, 0.0
    panels = _panels(a, b)
    epsabs = tol / len(panels)
    values, errors = [], []
    for lo, hi in panels:
        val, err = quad(f, lo, hi, epsabs=epsabs, epsrel=1e-13, limit=200)
        values.append(val)
        errors.append(err)
    total_err = math.fsum(errors)
    if total_err > tol:
        raise ArithmeticError(
            f"quadrature error {total_err:.3e} exceeds requested tolerance {tol:.3e}"
        )
    return math.fsum(values), total_err


def li_power_integral(x: float, k: int = 1, tol: float = None) -> float:
    """int_2^x dt/(ln t)^k; k = 1 is the offset logarithmic integral Li(x)."""
    value, _ = li_power_integral_with_error(x, k, tol)
    return value


def li_power_integral_with_error(
    x: float, k: int = 1, tol: float = None
) -> tuple[float, float]:
    if x < 2:
        raise ValueError(f"lower integration limit is 2, got x = {x}")
    if k < 1:
        raise ValueError("need k >= 1")
    if tol is not None and tol <= 0:
        raise ValueError("tolerance must be positive")
    if x == 2:
        return 0.0, 0.0
    if tol is None:
        # default: 1e-9 relative to a crude magnitude estimate
        rough = max(x / math.log(x) ** k, 1.0)
        tol = DEFAULT_REL_TOL * rough
    return _integrate(lambda t: math.log(t) ** -k, 2.0, float(x), tol)


def bh_estimate(C: float, degrees, x: float, tol: float = None) -> EstimateResult:
    """The integral estimate C / prod(deg f_i) * int_2^x dt/(ln t)^k."""
    degrees = list(degrees)
    if C <= 0:
        raise ValueError("constant must be positive")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must all be >= 1")
    deg_prod = math.prod(degrees)
    k = len(degrees)
    int_tol = tol * deg_prod / C if tol is not None else None
    integral, err = li_power_integral_with_error(x, k, int_tol)
    scale = C / deg_prod
    return EstimateResult(
        x=float(x),
        value=scale * integral,
        formula=CLASSIC,
        C_used=C,
        abs_quadrature_error=scale * err,
    )


def bh_estimate_simple(C: float, degrees, x: float) -> EstimateResult:
    """The closed form C / prod(deg f_i) * x / (ln x)^k; no quadrature."""
    degrees = list(degrees)
    if x <= 1:
        raise ValueError(f"need x > 1, got {x}")
    if C <= 0:
        raise ValueError("constant must be positive")
    value = C / math.prod(degrees) * x / math.log(x) ** len(degrees)
    return EstimateResult(
        x=float(x), value=value, formula=SIMPLE, C_used=C, abs_quadrature_error=0.0
    )


# ---------------------------------------------------------------------------
# Variant with 1/ln f_i(t) factors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _log_abs_coeffs(p: IntPolynomial):
    """(powers, log|a_i|) arrays for the nonzero coefficients."""
    import numpy as np

    powers = [i for i, c in enumerate(p.coeffs) if c != 0]
    logs = [math.log(abs(p.coeffs[i])) for i in powers]
    return np.array(powers, dtype=np.float64), np.array(logs, dtype=np.float64)


def log_poly_value(p: IntPolynomial, t: float) -> float:
    """ln p(t) in float, stable for polynomials far beyond float range.

    Tries float Horner first; on overflow falls back to a log-sum-exp over
    the monomials, which needs every coefficient nonnegative (true for all
    the huge-degree families here; mixed signs that overflow float are
    rejected rather than summed with cancellation).
    """
    if t <= 0:
        raise ValueError("need t > 0")
    acc = 0.0
    try:
        for c in reversed(p.coeffs):
            acc = acc * t + c
    except OverflowError:
        acc = math.inf
    if math.isfinite(acc):
        if acc <= 0:
            raise ValueError(f"polynomial value {acc} <= 0 at t = {t}: log undefined")
        return math.log(acc)
    if any(c < 0 for c in p.coeffs):
        raise ValueError("cannot evaluate log of a mixed-sign polynomial beyond float range")
    import numpy as np

    powers, logs = _log_abs_coeffs(p)
    terms = logs + powers * math.log(t)
    top = float(terms.max())
    return top + math.log(float(np.exp(terms - top).sum()))


def li_variant_estimate(C: float, polys, x: float, tol: float = None) -> EstimateResult:
    """C * int_2^x dt / prod_i ln f_i(t), the refinement for non-monic f_i."""
    polys = [p if isinstance(p, IntPolynomial) else IntPolynomial(p) for p in polys]
    if C <= 0:
        raise ValueError("constant must be positive")
    if x < 2:
        raise ValueError(f"lower integration limit is 2, got x = {x}")
    for p in polys:
        if p(2) < 2:
            raise ValueError(f"{p} takes a value < 2 at t = 2: 1/ln f is ill-defined")

    def integrand(t: float) -> float:
        denom = 1.0
        for p in polys:
            log_f = log_poly_value(p, t)
            if log_f <= 0:
                raise ValueError(f"ln {p} <= 0 at t = {t} inside [2, x]")
            denom *= log_f
        return 1.0 / denom

    if x == 2:
        return EstimateResult(2.0, 0.0, LI_VARIANT, C, 0.0)
    if tol is None:
        k = len(polys)
        rough = max(x / math.log(x) ** k, 1.0)
        tol = DEFAULT_REL_TOL * rough * C
    integral, err = _integrate(integrand, 2.0, float(x), tol / C)
    return EstimateResult(
        x=float(x),
        value=C * integral,
        formula=LI_VARIANT,
        C_used=C,
        abs_quadrature_error=C * err,
    )
