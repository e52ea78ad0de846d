"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test prints one PASS/FAIL line (run with -s to see them live).  The
constants criteria compare against the published table values verbatim;
where our exact partial products (independently validated against 50-digit
arithmetic) disagree with a published value beyond its stated tolerance,
the test fails honestly and the line carries both numbers.
"""

import math
import time

import pytest

from bhc.constants import constant, constants_batch
from bhc.estimates import bh_estimate, li_power_integral, li_variant_estimate
from bhc.families import FamilySpec
from bhc.polynomials import X, parse_poly
from bhc.search import (
    SearchTask,
    count_constellation,
    feit_thompson_scan,
    goormaghtigh_search,
)

TWIN2 = 2 * 0.66016181584686957393


def _criterion(cid: str, checks) -> None:
    failed = [c for c in checks if not c[1]]
    status = "PASS" if not failed else "FAIL"
    print(f"\nACCEPTANCE {cid}: {status}")
    for label, ok, detail in checks:
        print(f"  [{'ok' if ok else 'FAIL'}] {label}: {detail}")
    assert not failed, f"criterion {cid}: " + "; ".join(
        f"{label} ({detail})" for label, ok, detail in failed
    )


def _const_check(label, spec_or_polys, bound, want, tol, **kw):
    t0 = time.time()
    if isinstance(spec_or_polys, FamilySpec):
        res = constant(spec_or_polys, prime_bound=bound, **kw)
    else:
        res = constant(polys=spec_or_polys, prime_bound=bound, **kw)
    took = time.time() - t0
    ok = abs(res.value - want) <= tol
    return (label, ok,
            f"computed {res.value:.7f}, published {want}, tol {tol:g}, {took:.0f}s")


@pytest.mark.acceptance
def test_criterion_01_closed_form_constants():
    checks = [
        _const_check("C(1,3) at 1e9", FamilySpec.projective(1, 3), 10**9, 1.521730, 1e-5),
        _const_check("C(1,5) at 1e9", FamilySpec.projective(1, 5), 10**9, 2.571048, 1e-5),
        _const_check("C_sg at 1e9", FamilySpec.sophie_germain(), 10**9, TWIN2, 1e-5),
    ]
    _criterion("1 (closed-form constants)", checks)


@pytest.mark.acceptance
@pytest.mark.slow
def test_criterion_02_generic_constant_projective33():
    checks = [
        _const_check("C(3,3) at 1e9 (generic omega)", FamilySpec.projective(3, 3),
                     10**9, 2.086089, 1e-4),
    ]
    _criterion("2a (generic-omega constant, (3,3))", checks)


@pytest.mark.acceptance
def test_criterion_02_quadratic_constant():
    checks = [
        _const_check("C(32t^2+20t+1) at 1e8", [parse_poly("32*t^2+20*t+1")],
                     10**8, 4.721240, 1e-5),
    ]
    _criterion("2b (quadratic family constant)", checks)


@pytest.mark.acceptance
def test_criterion_03_half_power_constants():
    published = {
        1: 4.426783, 2: 10.433814, 3: 7.885346, 4: 14.642571,
        5: 14.424708, 6: 15.766564, 7: 12.357306, 8: 29.736770,
        9: 29.939460, 10: 32.071863, 11: 28.880619, 12: 33.684327,
        13: 33.856467, 14: 32.037016, 15: 23.187603, 16: 44.755201,
    }
    t0 = time.time()
    results = constants_batch(
        [FamilySpec.half_power(k) for k in range(1, 17)], prime_bound=10**9
    )
    took = time.time() - t0
    checks = []
    for k, res in enumerate(results, start=1):
        tol = 1e-5 if k <= 4 else 1e-4
        ok = abs(res.value - published[k]) <= tol
        checks.append(
            (f"C({k}) at 1e9", ok,
             f"computed {res.value:.6f}, published {published[k]}, tol {tol:g}")
        )
    print(f"  (single prime pass for all 16: {took:.0f}s)")
    _criterion("3 (half-power constants, one prime pass)", checks)


@pytest.mark.acceptance
def test_criterion_04_small_exact_counts():
    cases = [
        ("P(1,5)(10^4.5)", FamilySpec.projective(1, 5), 31622, 252),
        ("P(3,3)(1e3)", FamilySpec.projective(3, 3), 10**3, 10),
        ("SG Q(1e6)", FamilySpec.sophie_germain(), 10**6, 7746),
        ("SG Q(1e8)", FamilySpec.sophie_germain(), 10**8, 423140),
    ]
    checks = []
    for label, spec, x, want in cases:
        t0 = time.time()
        got = count_constellation(SearchTask(spec, x)).q_count
        checks.append((label, got == want, f"counted {got}, published {want}, {time.time()-t0:.0f}s"))
    _criterion("4 (small exact counts)", checks)


@pytest.mark.acceptance
@pytest.mark.slow
def test_criterion_05_medium_exact_counts():
    cases = [
        ("P(1,3)(1e9)", FamilySpec.projective(1, 3), 1974010),
        ("(t,3t-2) Q(1e9)", FamilySpec.custom([X, parse_poly("-2+3*t")]), 6484218),
        ("(t,3t^2-2) Q(1e9)", FamilySpec.custom([X, parse_poly("-2+3*t^2")]), 3203900),
        ("(3s+1,3s^2+2s+1) Q(1e9)",
         FamilySpec.custom([parse_poly("1+3*t"), parse_poly("1+2*t+3*t^2")]), 4893804),
        ("(3s-1,3s^2-2s+1) Q(1e9)",
         FamilySpec.custom([parse_poly("-1+3*t"), parse_poly("1-2*t+3*t^2")]), 4894315),
    ]
    checks = []
    for label, spec, want in cases:
        t0 = time.time()
        got = count_constellation(SearchTask(spec, 10**9)).q_count
        checks.append((label, got == want, f"counted {got}, published {want}, {time.time()-t0:.0f}s"))
    _criterion("5 (medium exact counts)", checks)


@pytest.mark.acceptance
def test_criterion_06_estimates():
    sg_polys = FamilySpec.sophie_germain().resolve_polynomials()
    cases = [
        ("int_2^1e9 dt/ln^2", li_power_integral(10**9, 2), 2594294.364, 0.01),
        ("E_(1,3)(1e9)", bh_estimate(1.521730, [1, 2], 10**9).value, 1973907.86, 0.5),
        ("E_(1,5)(10^4.5)", bh_estimate(2.571048, [1, 4], 10**4.5).value, 246.72, 0.05),
        ("E_(3,3)(1e3)", bh_estimate(2.086089, [1, 6], 10**3).value, 12.06, 0.02),
        ("SG variant E(1e8)", li_variant_estimate(TWIN2, sg_polys, 10**8).value, 423294.39, 1.0),
        ("SG variant E(1e10)", li_variant_estimate(TWIN2, sg_polys, 10**10).value, 26568824.04, 5.0),
        ("SG classic E(1e10)", bh_estimate(TWIN2, [1, 1], 10**10).value, 27411416.53, 10.0),
    ]
    checks = [
        (label, abs(got - want) <= tol, f"computed {got:.3f}, published {want}, tol {tol}")
        for label, got, want, tol in cases
    ]
    _criterion("6 (integral estimates)", checks)


@pytest.mark.acceptance
@pytest.mark.slow
def test_criterion_07_ratio_property_scaled():
    # the full 1e10 row takes hours and stays out of CI; the scaled row at
    # 1e8 must sit within 1% of the estimate
    spec = FamilySpec.projective(1, 3)
    C = constant(spec, prime_bound=10**9).value
    t0 = time.time()
    q = count_constellation(SearchTask(spec, 10**8)).q_count
    e = bh_estimate(C, [1, 2], 10**8).value
    ratio = e / q
    _criterion(
        "7 (scaled ratio property)",
        [("E/Q at 1e8", abs(ratio - 1) < 0.01,
          f"Q={q}, E={e:.1f}, ratio {ratio:.6f}, {time.time()-t0:.0f}s")],
    )


@pytest.mark.acceptance
@pytest.mark.slow
def test_criterion_08_half_power_count_1e9():
    t0 = time.time()
    got = count_constellation(SearchTask(FamilySpec.half_power(1), 10**9)).q_count
    _criterion(
        "8a (d=2 count at 1e9)",
        [("Q(1e9) for d=2", got == 5448994,
          f"counted {got}, published 5448994, {time.time()-t0:.0f}s")],
    )


@pytest.mark.acceptance
def test_criterion_08_half_power_counts_scaled_oracle():
    # independent oracle: trial division for 2t+1, library BPSW for the
    # huge second value; no sieve, no pre-filter, no shared code path
    import sympy

    from conftest import trial_division_prime

    x = 10**6
    t0 = time.time()
    f1_prime = [False] * (x + 1)
    for t in range(1, x + 1):
        f1_prime[t] = trial_division_prime(2 * t + 1)
    checks = []
    for k in range(1, 5):
        spec = FamilySpec.half_power(k)
        f2 = spec.resolve_polynomials()[1]
        want = sum(1 for t in range(1, x + 1) if f1_prime[t] and sympy.isprime(f2(t)))
        got = count_constellation(SearchTask(spec, x)).q_count
        checks.append(
            (f"d=2^{k} at 1e6 vs oracle", got == want, f"counted {got}, oracle {want}")
        )
    print(f"  (oracle + scan: {time.time()-t0:.0f}s)")
    _criterion("8b (scaled half-power counts vs independent oracle)", checks)


@pytest.mark.acceptance
def test_criterion_09_rk_qk_and_plateau():
    from bhc.ck import ck_approx, rk_qk_table

    records = rk_qk_table(16)
    want_r = [5, 17, 17, 97, 193, 257, 257, 7681, 12289, 12289, 12289, 40961,
              65537, 65537, 65537, 786433]
    want_q = [1, 2, 1, 3, 3, 2, 1, 15, 12, 6, 3, 5, 4, 2, 1, 6]
    checks = [
        ("r_k sequence", [r.r_k for r in records] == want_r, f"{[r.r_k for r in records]}"),
        ("q_k sequence", [r.q_k for r in records] == want_q, f"{[r.q_k for r in records]}"),
        ("plateau ck_approx(6) == ck_approx(7)", ck_approx(6) == ck_approx(7),
         f"{ck_approx(6):.6f} vs {ck_approx(7):.6f}"),
    ]
    _criterion("9 (irregularity records)", checks)


@pytest.mark.acceptance
def test_criterion_10_desk_scale_conjectures():
    t0 = time.time()
    found = goormaghtigh_search(10**8)
    expected = [(31, (2, 5), (5, 3)), (8191, (2, 13), (90, 3))]
    g_time = time.time() - t0
    t0 = time.time()
    violations = feit_thompson_scan(3, 10**4)
    checks = [
        ("repunit coincidences to 1e8", found == expected, f"{found}, {g_time:.0f}s"),
        ("no divisibility for q=3, p<=1e4", violations == [],
         f"violations {violations}, {time.time()-t0:.0f}s"),
    ]
    _criterion("10 (desk-scale conjecture checks)", checks)


@pytest.mark.acceptance
def test_criterion_11_property_suite():
    from bhc.omega import omega_brute, omega_closed, omega_generic, product_poly
    from bhc.polynomials import ONE, cyclotomic, projective_poly, repunit_factorization
    from bhc.primality import primes_in

    checks = []

    # omega strategy triple agreement at r <= 1e4
    agree = True
    for spec in (FamilySpec.projective(1, 3), FamilySpec.unitary(1, 5),
                 FamilySpec.sophie_germain(), FamilySpec.half_power(2),
                 FamilySpec.symplectic(1, 1),
                 FamilySpec.custom([parse_poly("1+3*t"), parse_poly("1+2*t+3*t^2")])):
        f = product_poly(spec.resolve_polynomials())
        for r in primes_in(2, 10**4 + 1):
            if not (omega_brute(f, r) == omega_generic(f, r) == omega_closed(spec, r)):
                agree = False
                break
    checks.append(("omega triple agreement r<=1e4", agree, "brute == generic == closed"))

    # cyclotomic product identity
    cyc = all(
        math.prod([cyclotomic(d) for d in repunit_factorization(e, n)], start=ONE)
        == projective_poly(e, n)
        for e in range(1, 13)
        for n in range(2, 13)
    )
    checks.append(("cyclotomic product identity e,n<=12", cyc, "exact polynomial equality"))

    # segment-size invariance of counts
    sizes = (10**4, 10**5, 10**6)
    counts = {
        s: count_constellation(SearchTask(FamilySpec.projective(1, 3), 10**6, segment_size=s)).q_count
        for s in sizes
    }
    checks.append(("segment-size invariance", len(set(counts.values())) == 1, f"{counts}"))

    # thread-count determinism of constants
    a = constant(FamilySpec.projective(1, 3), prime_bound=3 * 10**5, threads=1, segment_odds=2**14)
    b = constant(FamilySpec.projective(1, 3), prime_bound=3 * 10**5, threads=2, segment_odds=2**14)
    checks.append(("thread determinism of constants", a.log_value == b.log_value,
                   f"log diff {abs(a.log_value - b.log_value):.2e} (<=1e-12 required)"))

    # oracle equivalence of counts at x <= 1e4
    from conftest import naive_constellation_count

    oracle_ok = True
    for spec, x in [(FamilySpec.projective(1, 3), 10**4), (FamilySpec.sophie_germain(), 10**4),
                    (FamilySpec.half_power(1), 2000),
                    (FamilySpec.custom([X, parse_poly("-2+3*t")]), 5000)]:
        got = count_constellation(SearchTask(spec, x)).q_count
        if got != naive_constellation_count(spec.resolve_polynomials(), x):
            oracle_ok = False
    checks.append(("count oracle equivalence x<=1e4", oracle_ok, "naive double loop"))

    # mirror and symplectic equalities, constants and counts
    mirror = all(
        constant(FamilySpec.projective(1, n), prime_bound=10**5).log_value
        == constant(FamilySpec.unitary(1, n), prime_bound=10**5).log_value
        for n in (3, 5, 7)
    )
    checks.append(("projective/unitary constant bit-equality", mirror, "n in {3,5,7} at 1e5"))
    sympl = (
        constant(FamilySpec.symplectic(1, 1), prime_bound=10**5).log_value
        == constant(FamilySpec.half_power(2), prime_bound=10**5).log_value
        and count_constellation(SearchTask(FamilySpec.symplectic(1, 1), 3000)).q_count
        == count_constellation(SearchTask(FamilySpec.half_power(2), 3000)).q_count
    )
    checks.append(("symplectic == half-power (constants and counts)", sympl, "j+k = 2"))

    _criterion("11 (property suite)", checks)
