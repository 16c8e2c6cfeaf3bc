import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spaceform_euler.errors import DimensionTooLarge, DomainError, OddDimension
from spaceform_euler.exactnum import LAMBDA, QuadExt
from spaceform_euler.isopar import exact_ladder
from spaceform_euler.pfaffian import (
    CurvatureMatrix,
    EvenForm,
    SkewMatrix,
    curvature_pfaffian,
    determinant,
    even_form_oracle,
    matching_sum,
    pfaffian_det_check,
    pfaffian_laplace,
)
from spaceform_euler.symcurv import CurvatureSpec, double_factorial, weil_invariant

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def skew(n, values):
    return SkewMatrix(n, tuple(values[: n * (n - 1) // 2]))


def test_two_by_two():
    a = Fraction(5, 3)
    assert pfaffian_laplace(SkewMatrix.from_rows([[0, a], [-a, 0]])) == a


def test_four_by_four_formula():
    a, b, c, d, e, f = [Fraction(k, 7) for k in (3, -2, 5, 11, 1, -4)]
    X = SkewMatrix(4, (a, b, c, d, e, f))
    assert pfaffian_laplace(X) == a * f - b * e + c * d
    assert pfaffian_laplace(X) ** 2 == determinant(X.rows())


def test_block_diagonal_is_multiplicative():
    a, b = Fraction(2), Fraction(-7, 5)
    rows = [[0, a, 0, 0], [-a, 0, 0, 0], [0, 0, 0, b], [0, 0, -b, 0]]
    assert pfaffian_laplace(SkewMatrix.from_rows(rows)) == a * b


def test_empty_and_odd():
    assert pfaffian_laplace(SkewMatrix(0, ())) == 1
    with pytest.raises(OddDimension):
        pfaffian_laplace(SkewMatrix(3, (1, 2, 3)))
    with pytest.raises(DomainError):
        SkewMatrix.from_rows([[0, 1], [1, 0]])


def test_zero_matrix_check():
    assert pfaffian_det_check(SkewMatrix(6, (0,) * 15)) == 0


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pf_squared_is_det(n):
    rng = random.Random(n)
    for _ in range(10):
        X = SkewMatrix.from_function(n, lambda i, j: Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        assert pfaffian_det_check(X) == 0


@given(st.lists(rationals, min_size=15, max_size=15), st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_expansion_row_does_not_matter(values, row):
    X = skew(6, values)
    assert pfaffian_laplace(X, row=row) == pfaffian_laplace(X)


def test_curvature_pfaffian_n2():
    c, a, b = Fraction(2), Fraction(3), Fraction(-1, 4)
    assert curvature_pfaffian(CurvatureMatrix(c, [a, b])) == c + a * b
    assert even_form_oracle(CurvatureMatrix(c, [a, b])) == c + a * b


@given(st.lists(rationals, min_size=2, max_size=8).filter(lambda v: len(v) % 2 == 0))
@settings(max_examples=30, deadline=None)
def test_flat_case_is_product(values):
    n = len(values)
    prod = Fraction(1)
    for v in values:
        prod *= v
    assert curvature_pfaffian(CurvatureMatrix(0, values)) == double_factorial(n - 1) * prod


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_one_distinct_curvature(l):
    c, lam, mu = Fraction(1, 2), Fraction(3), Fraction(-2, 5)
    n = 2 * l
    expected = double_factorial(n - 1) * (c + lam * mu) * (c + mu * mu) ** (l - 1)
    assert curvature_pfaffian(CurvatureMatrix(c, [lam] + [mu] * (n - 1))) == expected


def test_n4_matches_explicit_polynomial():
    c = Fraction(3, 2)
    l1, l2, l3, l4 = Fraction(1), Fraction(-2), Fraction(5, 3), Fraction(1, 7)
    pairs = l1 * l2 + l1 * l3 + l1 * l4 + l2 * l3 + l2 * l4 + l3 * l4
    expected = 3 * c**2 + c * pairs + 3 * l1 * l2 * l3 * l4
    M = CurvatureMatrix(c, [l1, l2, l3, l4])
    assert curvature_pfaffian(M) == expected == even_form_oracle(M)


@given(st.lists(rationals, min_size=6, max_size=6), rationals)
@settings(max_examples=30, deadline=None)
def test_three_engines_agree(values, c):
    M = CurvatureMatrix(c, values)
    full = (1 << 6) - 1
    laplace = pfaffian_laplace(M.form_matrix()).coefficient(full)
    assert laplace == curvature_pfaffian(M) == even_form_oracle(M)


@given(st.integers(1, 5).flatmap(lambda l: st.lists(rationals, min_size=2 * l, max_size=2 * l)), rationals)
@settings(max_examples=40, deadline=None)
def test_pfaffian_equals_weil(values, c):
    spec = CurvatureSpec.from_values(values, c)
    assert curvature_pfaffian(CurvatureMatrix.from_spec(spec)) == weil_invariant(spec)


def test_curvature_matrix_pf_squared_is_det():
    M = CurvatureMatrix(Fraction(2, 3), [Fraction(1), Fraction(-3, 2), Fraction(4), Fraction(1, 5)])
    assert pfaffian_det_check(M.scalar_matrix()) == 0


def test_form_oracle_on_g3_ladder_at_one():
    values = [v(1) for v in exact_ladder(3)]
    values = [v if isinstance(v, QuadExt) else QuadExt(v) for v in values]
    M = CurvatureMatrix(1, [v for v in values for _ in range(2)])
    assert even_form_oracle(M) == 48
    assert curvature_pfaffian(M) == 48


def test_form_oracle_size_guard():
    with pytest.raises(DimensionTooLarge):
        even_form_oracle(CurvatureMatrix(1, [1] * 10))


def test_even_forms_commute_and_wedge_signs():
    e12 = EvenForm({0b0011: 1})
    e34 = EvenForm({0b1100: 1})
    e13 = EvenForm({0b0101: 1})
    e24 = EvenForm({0b1010: 1})
    assert e12 * e34 == e34 * e12 == EvenForm({0b1111: 1})
    # e1∧e3∧e2∧e4 = -e1234
    assert e13 * e24 == EvenForm({0b1111: -1})
    assert e12 * e12 == EvenForm()


def test_laplace_over_ratfuncs():
    lam = LAMBDA
    M = CurvatureMatrix(1, [lam, -1 / lam])
    assert curvature_pfaffian(M) == 0


def test_matching_sum_counts_matchings():
    for n in (2, 4, 6, 8):
        assert matching_sum(n, lambda i, j: 1) == double_factorial(n - 1)
