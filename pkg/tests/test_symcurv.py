import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spaceform_euler.errors import CurvatureZero, DomainError, EvenDimension, OddDimension
from spaceform_euler.exactnum import LAMBDA, QuadExt, UniPoly, sphere_volume
from spaceform_euler.symcurv import (
    CurvatureSpec,
    all_symmetric,
    closed_coefficients_even,
    double_factorial,
    elementary_symmetric,
    mean_curvature,
    odd_coefficients,
    recurrence_rhs,
    star_identity_lhs,
    star_identity_residual,
    symmetric_by_newton,
    symmetric_by_subsets,
    weil_coefficients,
    weil_invariant,
    weil_invariant_h_form,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=9)

G4_AT_2 = [Fraction(2), Fraction(1, 3), Fraction(-1, 2), Fraction(-3)]


def g4_m2_spec():
    return CurvatureSpec(1, tuple((v, 2) for v in G4_AT_2))


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(11) == 10395
    with pytest.raises(DomainError):
        double_factorial(-3)


def test_spec_counts_multiplicities():
    spec = CurvatureSpec(0, ((1, 3), (2, 1)))
    assert spec.n == 4
    assert spec.eigenvalues() == [1, 1, 1, 2]
    with pytest.raises(DomainError):
        CurvatureSpec(0, ((1, 0),))


def test_elementary_symmetric_examples():
    assert elementary_symmetric(CurvatureSpec.uniform(1, 4), 2) == 6
    assert elementary_symmetric(g4_m2_spec(), 2) == Fraction(-383, 36)
    assert elementary_symmetric(CurvatureSpec.uniform(1, 4), 7) == 0


def test_g4_m1_symbolic_s2_is_constant():
    lam = LAMBDA
    values = [lam, (lam - 1) / (lam + 1), -1 / lam, (lam + 1) / (1 - lam)]
    s = all_symmetric(CurvatureSpec.from_values(values, 1))
    assert s[2] == -6
    assert s[4] == 1


def test_all_symmetric_examples():
    assert all_symmetric(CurvatureSpec.uniform(0, 5)) == [1, 0, 0, 0, 0, 0]
    s = all_symmetric(g4_m2_spec())
    assert s[4] == Fraction(1270, 36)
    assert s[6] == Fraction(-383, 36) == s[2]
    assert s[8] == 1


def test_g4_m2_against_newton_and_pairwise_sum():
    values = g4_m2_spec().eigenvalues()
    pairwise = sum(values[i] * values[j] for i in range(8) for j in range(i + 1, 8))
    assert pairwise == Fraction(-383, 36)
    assert symmetric_by_newton(values) == all_symmetric(g4_m2_spec())


@given(st.lists(rationals, min_size=1, max_size=12))
@settings(max_examples=60, deadline=None)
def test_all_symmetric_is_product_expansion(values):
    s = all_symmetric(CurvatureSpec.from_values(values))
    product = UniPoly([1])
    for v in values:
        product = product * UniPoly([1, v])
    assert UniPoly(s) == product
    assert s == symmetric_by_newton(values)


@given(st.lists(rationals, min_size=1, max_size=7), st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_subsets_oracle(values, i):
    assert elementary_symmetric(CurvatureSpec.from_values(values), i) == symmetric_by_subsets(values, i)


def test_mean_curvature():
    assert mean_curvature(CurvatureSpec.uniform(1, 4), 2) == 1
    assert mean_curvature(CurvatureSpec.uniform(Fraction(3, 2), 5), 3) == Fraction(27, 8)
    assert mean_curvature(g4_m2_spec(), 2) == Fraction(-383, 1008)
    assert mean_curvature(g4_m2_spec(), 0) == 1
    with pytest.raises(DomainError):
        mean_curvature(g4_m2_spec(), 9)


def test_weil_examples():
    c, a, b = Fraction(2), Fraction(3), Fraction(-5, 7)
    assert weil_invariant(CurvatureSpec.from_values([a, b], c)) == c + a * b
    for n in (2, 4, 6, 8):
        l = n // 2
        assert weil_invariant(CurvatureSpec.uniform(0, n, c)) == double_factorial(n - 1) * c**l
    with pytest.raises(OddDimension):
        weil_invariant(CurvatureSpec.uniform(1, 3, 1))


def test_weil_g3_family_at_one():
    s3 = QuadExt(0, 1)
    spec = CurvatureSpec(1, ((QuadExt(1), 2), (s3 - 2, 2), (-2 - s3, 2)))
    s = all_symmetric(spec)
    assert [s[2], s[4], s[6]] == [3, 3, 1]
    assert weil_invariant(spec) == 48
    closed = 24 * (1 + LAMBDA * LAMBDA) ** 3 / (1 - 3 * LAMBDA * LAMBDA) ** 2
    assert closed(Fraction(1)) == 48


def test_weil_coefficients():
    assert weil_coefficients(2) == [3, 1, 3]
    assert weil_coefficients(4) == [105, 15, 9, 15, 105]
    assert weil_coefficients(6) == [10395, 945, 315, 225, 315, 945, 10395]


@given(st.lists(rationals, min_size=1, max_size=5), rationals)
@settings(max_examples=40, deadline=None)
def test_s_form_equals_h_form(half, c):
    values = half + half[::-1]
    spec = CurvatureSpec.from_values(values, c)
    assert weil_invariant(spec) == weil_invariant_h_form(spec)


def test_star_identity_worked_example():
    values = [1, 2, 3, 4]
    assert star_identity_lhs(values, 1) == 35
    assert star_identity_residual(values, 1) == 0


def test_star_identity_equal_values():
    assert star_identity_residual([Fraction(3, 2)] * 6, 2) == 0


def test_star_identity_rejects_bad_q():
    with pytest.raises(DomainError):
        star_identity_residual([1, 2, 3, 4], 2)


@given(st.lists(rationals, min_size=6, max_size=6), st.sampled_from([1, 2]))
@settings(max_examples=60, deadline=None)
def test_star_identity_random(values, q):
    assert star_identity_residual(values, q) == 0


def test_closed_coefficients_small_cases():
    c = Fraction(3, 5)
    b0 = Fraction(7)
    assert closed_coefficients_even(2, c, b0).b == (b0, 0, b0 / c)
    c = Fraction(2)
    sol = closed_coefficients_even(4, c, c**2 * 3)
    assert sol.b == (3 * c**2, 0, c, 0, 3)
    with pytest.raises(CurvatureZero):
        closed_coefficients_even(4, 0, 1)
    with pytest.raises(OddDimension):
        closed_coefficients_even(5, 1, 1)


@pytest.mark.parametrize("l", [1, 2, 3, 4, 5, 6])
def test_closed_coefficients_reproduce_weil_weights(l):
    c = Fraction(3, 2)
    sol = closed_coefficients_even(2 * l, c, c**l * double_factorial(2 * l - 1))
    expected = [w * c ** (l - p) for p, w in enumerate(weil_coefficients(l))]
    assert list(sol.b[::2]) == expected
    assert all(r == 0 for r in recurrence_rhs(list(sol.b), c))


def test_odd_coefficients_examples():
    sol = odd_coefficients(1, 1)
    assert sol.b[1] * sphere_volume(1) == -1
    assert sol.c_rhs[0] * sphere_volume(2) == 2
    sol = odd_coefficients(3, 1)
    assert sol.c_rhs[0] * sphere_volume(4) == 2
    assert all(r == 0 for r in sol.c_rhs[1:])
    assert all(b == 0 for b in sol.b[::2])
    with pytest.raises(EvenDimension):
        odd_coefficients(4, 1)


@pytest.mark.parametrize("k", range(5))
def test_odd_coefficient_constant_identity(k):
    c = Fraction(-2, 3)
    sol = odd_coefficients(2 * k + 1, c)
    assert sol.c_rhs[0] * sphere_volume(2 * k + 2) == 2 * c ** (k + 1)


def test_float_specs_are_accepted():
    spec = CurvatureSpec.from_values([0.5, 2.0, -1.0, 3.0], 1.0)
    exact = CurvatureSpec.from_values([Fraction(1, 2), 2, -1, 3], 1)
    assert math.isclose(weil_invariant(spec), float(weil_invariant(exact)))
