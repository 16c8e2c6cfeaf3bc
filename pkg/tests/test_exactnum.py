import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spaceform_euler.errors import ExtensionResidue, NotInvertible, PiExponentMismatch, ZeroDenominator
from spaceform_euler.exactnum import (
    LAMBDA,
    PiGraded,
    QuadExt,
    RatFunc,
    UniPoly,
    as_rational,
    from_json,
    gamma_half,
    pi_graded_mul,
    quadext_inverse,
    ratfunc_normalize,
    sphere_volume,
    to_json,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_polys = st.lists(st.integers(-6, 6), min_size=0, max_size=5).map(UniPoly)


def nonzero_polys():
    return small_polys.filter(lambda p: not p.is_zero())


def test_unipoly_drops_trailing_zeros():
    p = UniPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert UniPoly([]).degree == -1
    assert UniPoly([0, 0]).is_zero()


def test_unipoly_divmod_round_trip():
    a = UniPoly([1, -3, 0, 2])
    b = UniPoly([-1, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_normalize_cancels_common_factor():
    num, den = ratfunc_normalize(UniPoly([-1, 0, 1]), UniPoly([-1, 1]))
    assert num == UniPoly([1, 1])
    assert den == UniPoly([1])


def test_normalize_zero_numerator():
    num, den = ratfunc_normalize(UniPoly([]), UniPoly([2, 0, 0, 1]))
    assert num.is_zero()
    assert den == UniPoly([1])


def test_normalize_keeps_coprime_pair_up_to_sign():
    f = RatFunc(UniPoly([0, 8]), UniPoly([1, 0, -3]))
    assert f.den.lead > 0
    assert f == 8 * LAMBDA / (1 - 3 * LAMBDA * LAMBDA)
    assert f(Fraction(1)) == Fraction(-4)


def test_normalize_rejects_zero_denominator():
    with pytest.raises(ZeroDenominator):
        RatFunc(UniPoly([1]), UniPoly([]))


def test_canonical_denominator_has_unit_content():
    f = RatFunc(UniPoly([2]), UniPoly([4, 6]))
    coeffs = f.den.coeffs
    assert all(Fraction(c).denominator == 1 for c in coeffs)
    assert math.gcd(*[int(c) for c in coeffs]) == 1
    assert f.den.lead > 0


@given(nonzero_polys(), nonzero_polys(), st.lists(rationals, min_size=5, max_size=5))
@settings(max_examples=60, deadline=None)
def test_normalize_idempotent_and_preserves_values(num, den, points):
    f = RatFunc(num, den)
    assert RatFunc(f.num, f.den) == f
    for x in points:
        if den(x) != 0 and f.den(x) != 0:
            assert f(x) == Fraction(num(x)) / Fraction(den(x))


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@given(nonzero_polys(), nonzero_polys(), nonzero_polys())
@settings(max_examples=40, deadline=None)
def test_ratfunc_field_axioms(p, q, r):
    f, g, h = RatFunc(p, q), RatFunc(q, r), RatFunc(r, p)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * f.inverse() == 1


def test_quadext_inverse_examples():
    assert quadext_inverse(QuadExt(1, 0)) == QuadExt(1, 0)
    assert quadext_inverse(QuadExt(0, 1)) == QuadExt(0, Fraction(1, 3))
    assert quadext_inverse(QuadExt(2, 1)) == QuadExt(2, -1)
    assert QuadExt(2, 1) * QuadExt(2, -1) == 1


def test_quadext_zero_norm_not_invertible():
    with pytest.raises(NotInvertible):
        quadext_inverse(QuadExt(0, 0))


def test_quadext_project():
    assert QuadExt(Fraction(5, 2), 0).project() == Fraction(5, 2)
    with pytest.raises(ExtensionResidue):
        QuadExt(1, 1).project()


@given(rationals, rationals, rationals, rationals)
def test_quadext_matches_float_evaluation(a, b, c, d):
    x, y = QuadExt(a, b), QuadExt(c, d)
    fx, fy = float(x), float(y)
    prod = x * y
    assert math.isclose(float(prod), fx * fy, rel_tol=1e-12, abs_tol=1e-9)
    if x.norm() != 0:
        assert x * x.inverse() == 1
        assert math.isclose(float(y / x), fy / fx, rel_tol=1e-12, abs_tol=1e-9)


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_quadext_ring_axioms(a, b, c, d, e, f):
    x, y, z = QuadExt(a, b), QuadExt(c, d), QuadExt(e, f)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_quadext_over_ratfunc():
    s3 = QuadExt(0, 1)
    lam = QuadExt(LAMBDA, 0)
    x = (lam - s3) / (s3 * lam + 1)
    assert x(Fraction(0)) == QuadExt(0, -1)


def test_pi_graded_mul_examples():
    assert pi_graded_mul(PiGraded(4, 1), PiGraded(Fraction(1, 2), -1)) == PiGraded(2, 0)
    assert pi_graded_mul(PiGraded(2, 2), PiGraded(3, 3)) == PiGraded(6, 5)
    omega2 = sphere_volume(2)
    assert omega2 * omega2 == PiGraded(16, 4)


def test_pi_graded_rejects_mixed_sums():
    with pytest.raises(PiExponentMismatch):
        PiGraded(1, 2) + PiGraded(1, 4)
    # zero absorbs regardless of exponent
    assert PiGraded(0) + PiGraded(3, 4) == PiGraded(3, 4)
    assert PiGraded(0, 7).half_exp == 0


def test_gamma_half_values():
    assert gamma_half(1) == PiGraded(1, 1)  # Γ(1/2) = √π
    assert gamma_half(3) == PiGraded(Fraction(1, 2), 1)
    assert gamma_half(4) == PiGraded(1)
    assert gamma_half(10) == PiGraded(24)


def test_sphere_volumes():
    assert sphere_volume(1) == PiGraded.pi(1, 2)
    assert sphere_volume(2) == PiGraded.pi(1, 4)
    assert sphere_volume(3) == PiGraded.pi(2, 2)
    assert sphere_volume(4) == PiGraded.pi(2, Fraction(8, 3))
    for m in range(1, 12):
        expected = 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)
        assert math.isclose(float(sphere_volume(m)), expected, rel_tol=1e-13)


def test_json_round_trip():
    values = [
        Fraction(-7, 3),
        UniPoly([1, Fraction(1, 2), -3]),
        (1 + LAMBDA) / (2 - LAMBDA * LAMBDA),
        QuadExt(Fraction(1, 2), -2),
        PiGraded(Fraction(8, 3), 4),
    ]
    for v in values:
        assert from_json(to_json(v)) == v
    assert to_json(Fraction(-7, 3)) == {"num": "-7", "den": "3"}
    assert to_json(QuadExt(1, 2))["d"] == 3


def test_as_rational_parses_strings():
    assert as_rational("7/10") == Fraction(7, 10)
    with pytest.raises(TypeError):
        as_rational(0.5)
