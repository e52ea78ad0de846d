import json

import pytest

from bhc.constants import FixedDivisorViolation
from bhc.families import FamilySpec
from bhc.polynomials import X, parse_poly
from bhc.primality import PrimalityPolicy
from bhc.search import (
    SearchTask,
    count_at_checkpoints,
    count_constellation,
    feit_thompson_check,
    feit_thompson_scan,
    goormaghtigh_search,
    ratio_table,
    segment_report,
    small_value_cutoff,
    value_bound_to_t_bound,
)
from conftest import naive_constellation_count

PAPER_FAMILIES = [
    (FamilySpec.projective(1, 3), 2000),
    (FamilySpec.projective(1, 5), 1000),
    (FamilySpec.projective(3, 3), 300),
    (FamilySpec.unitary(1, 3), 2000),
    (FamilySpec.unitary(1, 5), 500),
    (FamilySpec.sophie_germain(), 10**4),
    (FamilySpec.half_power(1), 1000),
    (FamilySpec.half_power(2), 500),
    (FamilySpec.symplectic(1, 1), 500),
    (FamilySpec.custom([X, parse_poly("-2+3*t")]), 2000),
    (FamilySpec.custom([X, parse_poly("-2+3*t^2")]), 1000),
    (FamilySpec.custom([parse_poly("32*t^2+20*t+1")]), 1000),
    (FamilySpec.custom([parse_poly("1+3*t"), parse_poly("1+2*t+3*t^2")]), 1000),
    (FamilySpec.custom([parse_poly("-1+3*t"), parse_poly("1-2*t+3*t^2")]), 1000),
]


@pytest.mark.parametrize("spec,x", PAPER_FAMILIES, ids=lambda v: str(v))
def test_counts_match_naive_double_loop(spec, x):
    got = count_constellation(SearchTask(spec, x)).q_count
    assert got == naive_constellation_count(spec.resolve_polynomials(), x)


def test_counts_match_independent_library_primality():
    import sympy

    spec = FamilySpec.projective(1, 3)
    got = count_constellation(SearchTask(spec, 10**4)).q_count
    polys = spec.resolve_polynomials()
    want = naive_constellation_count(polys, 10**4, primality=sympy.isprime)
    assert got == want


def test_sophie_germain_small_paper_rows():
    task = SearchTask(FamilySpec.sophie_germain(), 10**5)
    rows = dict(count_at_checkpoints(task, [100, 1000, 10**4, 10**5]))
    assert rows == {100: 10, 1000: 37, 10**4: 190, 10**5: 1171}


def test_result_invariants():
    res = count_constellation(SearchTask(FamilySpec.sophie_germain(), 5000))
    assert res.q_count == sum(s.hits for s in res.segments)
    assert res.largest_hit_t <= 5000
    t = res.largest_hit_t
    assert res.largest_hit_values == [t, 2 * t + 1]


def test_monotone_in_x():
    counts = [
        count_constellation(SearchTask(FamilySpec.sophie_germain(), x)).q_count
        for x in (100, 500, 1000, 5000)
    ]
    assert counts == sorted(counts)


def test_segment_partition_invariance():
    counts = {
        size: count_constellation(
            SearchTask(FamilySpec.projective(1, 3), 10**6, segment_size=size)
        ).q_count
        for size in (10**4, 10**5, 10**6)
    }
    assert len(set(counts.values())) == 1


def test_presieve_disabled_identical():
    for spec in (FamilySpec.sophie_germain(), FamilySpec.half_power(1)):
        a = count_constellation(SearchTask(spec, 3 * 10**4)).q_count
        b = count_constellation(SearchTask(spec, 3 * 10**4, presieve_bound=0)).q_count
        assert a == b, str(spec)


def test_thread_count_invariance():
    one = count_constellation(
        SearchTask(FamilySpec.sophie_germain(), 10**5, segment_size=10**4, threads=1)
    )
    two = count_constellation(
        SearchTask(FamilySpec.sophie_germain(), 10**5, segment_size=10**4, threads=2)
    )
    assert one.q_count == two.q_count
    assert one.largest_hit_t == two.largest_hit_t


def test_conjunction_order_independent():
    a = FamilySpec.custom([X, parse_poly("-2+3*t")])
    b = FamilySpec.custom([parse_poly("-2+3*t"), X])
    ca = count_constellation(SearchTask(a, 10**4)).q_count
    cb = count_constellation(SearchTask(b, 10**4)).q_count
    assert ca == cb


def test_symplectic_equals_half_power_counts():
    for (j, k), x in [((1, 0), 10**4), ((1, 1), 3000), ((2, 1), 500)]:
        a = count_constellation(SearchTask(FamilySpec.symplectic(j, k), x)).q_count
        b = count_constellation(SearchTask(FamilySpec.half_power(j + k), x)).q_count
        assert a == b, (j, k)


def test_policy_switch_beyond_64_bits():
    # half-power exponent 2: f_2(t) ~ 8 t^4 passes 2^64 near t ~ 2^15.3
    spec = FamilySpec.half_power(2)
    det = count_constellation(SearchTask(spec, 10**5)).q_count
    prob = count_constellation(
        SearchTask(spec, 10**5, policy=PrimalityPolicy.probabilistic(rounds=40, seed=9))
    ).q_count
    assert det == prob
    assert det == naive_constellation_count(spec.resolve_polynomials(), 10**5, _sympy_isprime())


def _sympy_isprime():
    import sympy

    return sympy.isprime


def test_fixed_divisor_family_rejected():
    with pytest.raises(FixedDivisorViolation):
        count_constellation(SearchTask(FamilySpec.custom([X, parse_poly("1+t")]), 100))


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "scan.jsonl")
    spec = FamilySpec.sophie_germain()
    full = count_constellation(SearchTask(spec, 10**5, segment_size=10**4))
    # run the first three segments only, then resume
    task = SearchTask(spec, 3 * 10**4, segment_size=10**4, checkpoint_path=path)
    count_constellation(task)
    lines = [json.loads(line) for line in open(path)]
    assert len(lines) == 1 + 3  # header + three segments
    resumed = count_constellation(
        SearchTask(spec, 10**5, segment_size=10**4, checkpoint_path=path)
    )
    assert resumed.q_count == full.q_count
    lines = [json.loads(line) for line in open(path)]
    assert len(lines) == 1 + 10  # three reused, seven appended


def test_checkpoint_task_mismatch_rejected(tmp_path):
    path = str(tmp_path / "scan.jsonl")
    count_constellation(SearchTask(FamilySpec.sophie_germain(), 10**4, checkpoint_path=path))
    with pytest.raises(ValueError):
        count_constellation(SearchTask(FamilySpec.projective(1, 3), 10**4, checkpoint_path=path))


def test_small_value_cutoff_guards_presieve():
    # 1 + t + t^2 exceeds 257 from t = 16 on
    assert small_value_cutoff([parse_poly("1+t+t^2")], 257) == 16
    assert small_value_cutoff([X], 257) == 258
    # mixed-sign polynomial dips back below the bound around its vertex
    dip = parse_poly("10000-200*t+t^2")  # (t-100)^2 + 0: min 0 at t=100
    cut = small_value_cutoff([dip], 50)
    assert cut > 107  # (t-100)^2 > 50 needs t >= 108
    assert all(dip(t) > 50 for t in range(cut, cut + 500))


def test_segment_report_rows():
    task = SearchTask(FamilySpec.projective(1, 3), 10**4)
    rows = segment_report(task, [2, 5000, 10**4])
    assert len(rows) == 2
    assert rows[0]["primes_seen"] == 669  # pi(5000) - pi(1)
    assert sum(r["hits"] for r in rows) == count_constellation(task).q_count
    assert rows[1]["max_hit"] <= 10**4
    with pytest.raises(ValueError):
        segment_report(task, [10])


def test_ratio_table_joins_counts_and_estimates():
    rows = ratio_table(FamilySpec.sophie_germain(), [1000, 10**4], 2 * 0.66016181584686957393,
                       formula="li")
    assert [r["Q"] for r in rows] == [37, 190]
    assert rows[1]["E"] == pytest.approx(194.58, abs=0.05)
    assert rows[0]["ratio"] == pytest.approx(39.10 / 37, abs=0.01)


def test_value_bound_to_t_bound():
    f2 = FamilySpec.projective(1, 3).resolve_polynomials()[1]
    t = value_bound_to_t_bound(f2, 10**18)
    assert f2(t) <= 10**18 < f2(t + 1)
    assert value_bound_to_t_bound(f2, 2) == 0
    assert value_bound_to_t_bound(parse_poly("t"), 10) == 10


# ---------------------------------------------------------------------------
# Desk-scale conjecture checks
# ---------------------------------------------------------------------------

def test_goormaghtigh_both_known_coincidences():
    # 8191 = rep(2,13) = rep(90,3) already lies below 1e4
    found = goormaghtigh_search(10**4)
    assert found == [(31, (2, 5), (5, 3)), (8191, (2, 13), (90, 3))]
    assert goormaghtigh_search(10**6) == found
    assert goormaghtigh_search(8190) == [(31, (2, 5), (5, 3))]
    with pytest.raises(ValueError):
        goormaghtigh_search(6)


def test_goormaghtigh_values_really_are_repunits():
    for value, (x, n), (y, k) in goormaghtigh_search(10**5):
        assert value == (x**n - 1) // (x - 1) == (y**k - 1) // (y - 1)
        assert n != k and n >= 3 and k >= 3


def test_feit_thompson_examples():
    divides, gcd = feit_thompson_check(2, 3)
    assert not divides and (2**3 - 1) == 7 and (3**2 - 1) // 2 == 4
    divides, gcd = feit_thompson_check(3, 5)
    assert not divides and gcd == 1
    # orientation check: swapping p and q asks whether 4 divides 7 instead
    divides, gcd = feit_thompson_check(3, 2)
    assert not divides and gcd == 1
    with pytest.raises(ValueError):
        feit_thompson_check(5, 5)
    with pytest.raises(ValueError):
        feit_thompson_check(4, 7)


def test_feit_thompson_scan_q3():
    assert feit_thompson_scan(3, 500) == []


@pytest.mark.slow
def test_unitary_mirror_count_at_1e9():
    # same harness as the repunit count: alternating values up to ~1e18
    got = count_constellation(SearchTask(FamilySpec.unitary(1, 3), 10**9)).q_count
    assert got == 1973762
