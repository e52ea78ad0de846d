"""Toolkit for constellation-prime heuristics: Euler-product constants,
integral estimates, and exact counts for the repunit-style polynomial
families attached to projective, unitary, and symplectic group degrees.
"""

from .admissibility import AdmissibilityReport, bunyakovsky_check
from .ck import CkRecord, ck_approx, least_prime_in_progression, rk_qk_table
from .constants import (
    ConstantResult,
    FixedDivisorViolation,
    constant,
    constant_series,
    constants_batch,
)
from .estimates import (
    EstimateResult,
    bh_estimate,
    bh_estimate_simple,
    li_power_integral,
    li_variant_estimate,
)
from .families import FamilySpec, format_family, parse_family
from .omega import (
    OmegaStrategy,
    closed_form_available,
    omega_brute,
    omega_closed,
    omega_generic,
)
from .polynomials import (
    IntPolynomial,
    cyclotomic,
    eval_poly,
    half_power_poly,
    is_irreducible_repunit,
    parse_poly,
    projective_poly,
    repunit_factorization,
    sophie_germain_polys,
    unitary_poly,
)
from .primality import (
    PrimalityPolicy,
    SieveSegment,
    is_prime,
    prime_count,
    primes_in,
)
from .search import (
    SearchResult,
    SearchTask,
    count_at_checkpoints,
    count_constellation,
    feit_thompson_check,
    feit_thompson_scan,
    goormaghtigh_search,
    ratio_table,
    segment_report,
)
from .tables import reproduce_table

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
