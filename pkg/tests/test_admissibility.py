import pytest

from bhc.admissibility import (
    bunyakovsky_check,
    repunit_shape,
    vanishes_identically,
)
from bhc.families import FamilySpec
from bhc.omega import OmegaStrategy
from bhc.polynomials import (
    IntPolynomial,
    X,
    half_power_poly,
    parse_poly,
    projective_poly,
    unitary_poly,
)


def test_fixed_divisor_free_examples():
    assert bunyakovsky_check([X, parse_poly("2+t")]).fixed_divisor_free
    rep = bunyakovsky_check([X, parse_poly("1+t")])
    assert not rep.fixed_divisor_free and rep.offending_prime == 2
    rep = bunyakovsky_check([parse_poly("2+t+t^2")])
    assert not rep.fixed_divisor_free and rep.offending_prime == 2


def test_offending_prime_vanishes_identically():
    rep = bunyakovsky_check([X, parse_poly("1+t")])
    product = X * parse_poly("1+t")
    assert vanishes_identically(product, rep.offending_prime)
    assert not vanishes_identically(product, 3)


def test_content_fixed_divisor():
    rep = bunyakovsky_check([parse_poly("3+3*t^2")])
    assert not rep.fixed_divisor_free and rep.offending_prime == 3


def test_leading_positive():
    rep = bunyakovsky_check([X, parse_poly("1-t^2")])
    assert rep.leading_positive == (True, False)
    assert not rep.all_leading_positive


def test_irreducibility_decisions():
    rep = bunyakovsky_check([X, projective_poly(1, 3)])
    assert rep.irreducible == (True, True)
    rep = bunyakovsky_check([X, projective_poly(2, 3)])
    assert rep.irreducible == (True, False)
    # mirrored repunit with odd e decides via the t -> -t substitution
    rep = bunyakovsky_check([X, unitary_poly(1, 3)])
    assert rep.irreducible == (True, True)
    rep = bunyakovsky_check([X, unitary_poly(3, 3)])
    assert rep.irreducible == (True, True)
    rep = bunyakovsky_check([X, unitary_poly(2, 3)])
    assert rep.irreducible == (True, None)  # even e: unknown
    # degree-2 custom with no known shape stays unknown
    rep = bunyakovsky_check([parse_poly("32*t^2+20*t+1")])
    assert rep.irreducible == (None,)


def test_half_power_tag_decides_irreducibility():
    spec = FamilySpec.half_power(3)
    strategy = OmegaStrategy.closed_form(spec)
    rep = bunyakovsky_check(spec.resolve_polynomials(), strategy)
    assert rep.irreducible == (True, True)
    # same polynomials without the tag: only the linear one is decided
    rep = bunyakovsky_check(spec.resolve_polynomials())
    assert rep.irreducible == (True, None)


def test_repunit_shape_detection():
    assert repunit_shape(projective_poly(4, 5)) == (4, 5)
    assert repunit_shape(parse_poly("1+t")) == (1, 2)
    assert repunit_shape(parse_poly("1+2*t")) is None
    assert repunit_shape(parse_poly("t+t^2")) is None
    assert repunit_shape(half_power_poly(2)[1]) is None


def test_all_paper_families_admissible():
    for spec in [
        FamilySpec.projective(1, 3),
        FamilySpec.projective(3, 3),
        FamilySpec.projective(9, 3),
        FamilySpec.unitary(1, 5),
        FamilySpec.sophie_germain(),
        FamilySpec.half_power(4),
        FamilySpec.symplectic(1, 2),
        FamilySpec.custom([X, parse_poly("-2+3*t")]),
        FamilySpec.custom([parse_poly("1+3*t"), parse_poly("1+2*t+3*t^2")]),
    ]:
        rep = bunyakovsky_check(spec.resolve_polynomials())
        assert rep.fixed_divisor_free, str(spec)
        assert rep.all_leading_positive, str(spec)


def test_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        bunyakovsky_check([X, IntPolynomial(())])
