import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spaceform_euler import quadrature
from spaceform_euler.errors import DomainError, MeshTooCoarse, OddDimension, UnsupportedVariant
from spaceform_euler.exactnum import PiGraded, QuadExt, sphere_volume
from spaceform_euler.spaceform import (
    AbstractCPC,
    CliffordProduct,
    EllipsoidNumeric,
    GeodesicSphere,
    ellipsoid_curvature_integrals,
    euler_characteristic_closed,
    euler_characteristic_int,
    invariance_residual,
    model_curvatures,
    model_from_json,
    parallel_exact,
    reilly_residual_exact,
    reilly_residual_numeric,
)
from spaceform_euler.symcurv import CurvatureSpec

positive_q = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20)
unit_q = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50)


def test_sphere_volume_values():
    assert sphere_volume(1) == PiGraded.pi(1, 2)
    assert sphere_volume(2) == PiGraded.pi(1, 4)
    assert sphere_volume(3) == PiGraded.pi(2, 2)
    with pytest.raises(DomainError):
        sphere_volume(0)


def test_clifford_1_1_satisfies_product_relation():
    spec, _ = model_curvatures(CliffordProduct(1, 1, Fraction(3, 5)))
    (lam, _), (mu, _) = spec.entries
    assert 1 + lam * mu == 0
    assert lam < 0 < mu


def test_equator_in_s3():
    M = GeodesicSphere.spherical_latitude(2, Fraction(1, 2))
    spec, vol = model_curvatures(M)
    assert spec.entries == ((0, 2),)
    assert vol == sphere_volume(2)


def test_clifford_2_2_closed_forms():
    r = Fraction(3, 5)
    spec, vol = model_curvatures(CliffordProduct(2, 2, r))
    assert spec.entries[0][0] == Fraction(-4, 3)
    assert spec.entries[1][0] == Fraction(3, 4)
    assert vol == sphere_volume(2) ** 2 * r**2 * (1 - r * r)


def test_clifford_2_2_at_inverse_root_two():
    # r = 1/√2 is irrational, so assemble the model from its curvatures ±1 and volume ω₂²/4
    vol = sphere_volume(2) ** 2 / 4
    assert vol == PiGraded.pi(2, 4)
    M = AbstractCPC(CurvatureSpec(1, ((-1, 2), (1, 2))), vol)
    assert euler_characteristic_int(M) == 4


def test_clifford_irrational_cosine_stays_exact():
    spec, vol = model_curvatures(CliffordProduct(2, 2, Fraction(1, 2)))
    assert isinstance(spec.entries[0][0], QuadExt)
    assert euler_characteristic_closed(CliffordProduct(2, 2, Fraction(1, 2))) == 4


@given(st.sampled_from([2, 4, 6, 8]), positive_q)
@settings(max_examples=40, deadline=None)
def test_euclidean_spheres_have_chi_two(n, r):
    chi = euler_characteristic_closed(GeodesicSphere.euclidean(n, r))
    assert chi.half_exp == 0 and chi.coeff == 2


@given(st.sampled_from([2, 4, 6]), st.fractions(-5, 5, max_denominator=7), positive_q)
@settings(max_examples=40, deadline=None)
def test_geodesic_spheres_any_space_form(n, c, lam):
    if c + lam * lam <= 0 or not _sqrt_rational(c + lam * lam):
        return
    assert euler_characteristic_int(GeodesicSphere(n, c, lam)) == 2


def _sqrt_rational(q):
    return math.isqrt(q.numerator) ** 2 == q.numerator and math.isqrt(q.denominator) ** 2 == q.denominator


@pytest.mark.parametrize("n", [2, 4, 6])
def test_geodesic_sphere_with_irrational_radius(n):
    assert euler_characteristic_int(GeodesicSphere(n, -1, Fraction(3))) == 2


@given(unit_q)
@settings(max_examples=30, deadline=None)
def test_clifford_parity_table(r):
    for (p, q), chi in {(1, 1): 0, (1, 3): 0, (3, 3): 0, (2, 2): 4, (2, 4): 4, (4, 4): 4, (0, 4): 2, (6, 0): 2}.items():
        assert euler_characteristic_closed(CliffordProduct(p, q, r)) == chi


def test_odd_dimension_rejected():
    with pytest.raises(OddDimension):
        euler_characteristic_closed(GeodesicSphere.euclidean(3, 1))


def test_ellipsoid_has_no_closed_curvatures():
    with pytest.raises(UnsupportedVariant):
        model_curvatures(EllipsoidNumeric(1, 2, 3))


def test_parallel_exact_preserves_integral():
    M = CliffordProduct(2, 2, Fraction(3, 5))
    moved = parallel_exact(M, Fraction(3, 5), Fraction(4, 5))
    assert isinstance(moved, AbstractCPC)
    assert euler_characteristic_closed(moved) == 4
    with pytest.raises(DomainError):
        parallel_exact(M, Fraction(1, 2), Fraction(1, 2))


def test_parallel_sphere_in_euclidean_space():
    M = GeodesicSphere.euclidean(4, 2)
    moved = parallel_exact(M, 1, Fraction(3))
    spec, vol = model_curvatures(moved)
    assert spec.entries == ((Fraction(1, 5), 4),)
    assert vol == sphere_volume(4) * 5**4


@pytest.mark.parametrize("n", range(1, 9))
def test_reilly_symbolic(n):
    for i in range(n + 1):
        assert reilly_residual_exact(n, i).residual == 0


def test_reilly_worked_example():
    check = reilly_residual_exact(2, 0, Fraction(1, 4))
    assert check.lhs == check.rhs == PiGraded.pi(1, 4)


def test_reilly_top_index_uses_lower_term():
    check = reilly_residual_exact(3, 3)
    assert check.residual == 0


def test_reilly_float_angle():
    check = reilly_residual_exact(4, 2, math.pi / 3)
    assert abs(check.residual) <= 1e-12


def test_reilly_rejects_bad_index():
    with pytest.raises(DomainError):
        reilly_residual_exact(3, 4)


def test_quadrature_gate():
    assert quadrature.quadrature_gate() <= quadrature.GATE_TOLERANCE
    with pytest.raises(MeshTooCoarse):
        quadrature.quadrature_gate(4)


def test_unit_sphere_integrals():
    values = ellipsoid_curvature_integrals(EllipsoidNumeric(1, 1, 1)).values
    for got, expected in zip(values, (4 * math.pi, 8 * math.pi, 4 * math.pi)):
        assert abs(got - expected) <= 1e-9


def test_radius_two_sphere_gauss_integral():
    assert abs(ellipsoid_curvature_integrals(EllipsoidNumeric(2, 2, 2)).values[2] - 4 * math.pi) <= 1e-9


@pytest.mark.parametrize("axes", [(1, 1, 2), (1, 2, 3), (0.5, 1.5, 0.8)])
def test_ellipsoid_gauss_bonnet(axes):
    chi = ellipsoid_curvature_integrals(EllipsoidNumeric(*axes)).values[2] / (2 * math.pi)
    assert abs(chi - 2) <= 1e-6


def test_mesh_too_coarse():
    with pytest.raises(MeshTooCoarse):
        quadrature.curvature_integrals(1, 1, 6, resolution=8)


@pytest.mark.parametrize("axes,i", [((1, 1, 1), 1), ((1, 1, 2), 0), ((1, 2, 3), 2), ((1, 2, 3), 1)])
def test_reilly_numeric(axes, i):
    check = reilly_residual_numeric(EllipsoidNumeric(*axes), i)
    assert check.residual <= 1e-6
    assert check.passed


def test_invariance_exact_models():
    sphere = invariance_residual(GeodesicSphere.spherical_latitude(2, Fraction(1, 4)))
    assert math.isclose(sphere.value, 4 * math.pi, rel_tol=1e-12)
    assert sphere.passed
    clifford = invariance_residual(CliffordProduct(2, 2, Fraction(2, 5)))
    assert math.isclose(clifford.value, 16 * math.pi**2, rel_tol=1e-12)
    assert clifford.passed
    assert invariance_residual(CliffordProduct(1, 3, Fraction(1, 2))).passed


def test_invariance_ellipsoid():
    check = invariance_residual(EllipsoidNumeric(1, 2, 3))
    assert check.passed
    assert abs(check.chi_estimate - 2) <= 1e-6


def test_threaded_map_keeps_order(monkeypatch):
    monkeypatch.setenv("SPACEFORM_EULER_THREADS", "4")
    assert quadrature.max_threads() == 4
    assert quadrature.map_parallel(lambda x: x * x, list(range(10))) == [x * x for x in range(10)]
    serial = quadrature.curvature_integrals(1, 2, 3, t=0.01).values
    monkeypatch.setenv("SPACEFORM_EULER_THREADS", "1")
    assert quadrature.curvature_integrals(1, 2, 3, t=0.01).values == serial


def test_shape_operator_orientation():
    sample = quadrature.sample_ellipsoid(1.0, 1.0, 1.0, 16, 16)
    assert np.allclose(sample.k1, 1.0) and np.allclose(sample.k2, 1.0)


def test_model_from_json():
    assert euler_characteristic_int(model_from_json({"variant": "clifford", "p": 2, "q": 2, "r": "7/10"})) == 4
    assert euler_characteristic_int(model_from_json({"variant": "geodesic_sphere", "n": 4, "radius": "3"})) == 2
    cpc = model_from_json({"variant": "abstract_cpc", "c": 0, "entries": [["1", 2]], "vol": {"coeff": {"num": "4", "den": "1"}, "pi_half_exp": 2}})
    assert euler_characteristic_int(cpc) == 2
    with pytest.raises(UnsupportedVariant):
        model_from_json({"variant": "torus"})


def test_abstract_cpc_needs_positive_volume():
    with pytest.raises(DomainError):
        AbstractCPC(CurvatureSpec.uniform(1, 2), PiGraded(-1))
