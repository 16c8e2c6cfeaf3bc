"""Hypersurface models in space forms N(c) and the checks run on them.

Orientation convention: A = ∇n with n the outward normal, so a round sphere
of radius r in R^{n+1} has λ = 1/r, and parallel hypersurfaces at signed
distance t satisfy λ(t)' = -(c + λ²).  For a geodesic sphere of latitude ρ
in the unit sphere this gives λ = cot ρ with deformation speed +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from . import quadrature
from .errors import (
    DomainError,
    NonIntegerResult,
    OddDimension,
    UnsupportedVariant,
)
from .exactnum import (
    LAMBDA,
    PiGraded,
    QuadExt,
    RatFunc,
    as_rational,
    from_json,
    is_rational_square,
    sphere_volume,
    to_float,
)
from .symcurv import CurvatureSpec, all_symmetric, weil_invariant

__all__ = [
    "SpaceForm",
    "GeodesicSphere",
    "CliffordProduct",
    "AbstractCPC",
    "EllipsoidNumeric",
    "HypersurfaceModel",
    "DeformationFamily",
    "sphere_volume",
    "model_curvatures",
    "euler_characteristic_closed",
    "euler_characteristic_int",
    "parallel_exact",
    "reilly_residual_exact",
    "reilly_residual_numeric",
    "invariance_residual",
    "ellipsoid_curvature_integrals",
    "model_from_json",
    "ReillyCheck",
    "NumericCheck",
    "InvarianceCheck",
]


@dataclass(frozen=True)
class SpaceForm:
    c: Fraction
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise DomainError("ambient dimension must be at least 2")


def rational_power_sqrt(base: Fraction, twice_exp: int) -> Any:
    """base^(twice_exp / 2) exactly, as a Fraction or a QuadExt over √base."""
    base = as_rational(base)
    if base <= 0:
        raise DomainError(f"need a positive base, got {base}")
    if twice_exp % 2 == 0:
        return base ** (twice_exp // 2)
    if is_rational_square(base):
        root = Fraction(math.isqrt(base.numerator), math.isqrt(base.denominator))
        return root**twice_exp
    # base^(k + 1/2) = base^k * √base
    k = (twice_exp - 1) // 2
    return QuadExt(0, base**k, base)


_RATIONAL_COT = {
    Fraction(1, 4): Fraction(1),
    Fraction(1, 2): Fraction(0),
    Fraction(3, 4): Fraction(-1),
}


@dataclass(frozen=True)
class GeodesicSphere:
    """Geodesic n-sphere with principal curvature ``curvature`` in N(c).

    In every space form its volume is ω_n (c + λ²)^(-n/2).
    """

    n: int
    c: Fraction
    curvature: Fraction

    variant = "geodesic_sphere"

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "curvature", as_rational(self.curvature))
        if self.n < 1:
            raise DomainError("n must be positive")
        if self.c + self.curvature**2 <= 0:
            raise DomainError("c + λ² must be positive for a geodesic sphere")

    @classmethod
    def euclidean(cls, n: int, radius: Any) -> "GeodesicSphere":
        r = as_rational(radius)
        if r <= 0:
            raise DomainError("radius must be positive")
        return cls(n, Fraction(0), 1 / r)

    @classmethod
    def spherical_latitude(cls, n: int, rho_over_pi: Any) -> "GeodesicSphere":
        """Latitude ρ = rho_over_pi·π in the unit sphere; cot ρ must be rational."""
        key = as_rational(rho_over_pi)
        if key not in _RATIONAL_COT:
            raise DomainError(f"cot({key}π) is not rational; give the curvature directly")
        return cls(n, Fraction(1), _RATIONAL_COT[key])

    def ambient(self) -> SpaceForm:
        return SpaceForm(self.c, self.n + 1)


@dataclass(frozen=True)
class CliffordProduct:
    """S^p_r × S^q_{√(1-r²)} in the unit sphere S^{p+q+1}.

    A zero-dimensional factor is read as a single point, so (0, n) is a
    geodesic sphere.
    """

    p: int
    q: int
    r: Fraction

    variant = "clifford"

    def __post_init__(self):
        object.__setattr__(self, "r", as_rational(self.r))
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise DomainError("need p, q ≥ 0 and p + q ≥ 1")
        if not 0 < self.r < 1:
            raise DomainError("Clifford radius must lie in (0, 1)")

    @property
    def n(self) -> int:
        return self.p + self.q

    def ambient(self) -> SpaceForm:
        return SpaceForm(Fraction(1), self.n + 1)


@dataclass(frozen=True)
class AbstractCPC:
    """A hypersurface with constant principal curvatures and a given volume."""

    spec: CurvatureSpec
    vol: PiGraded

    variant = "abstract_cpc"

    def __post_init__(self):
        if to_float(self.vol.coeff) <= 0:
            raise DomainError("volume must be positive")

    @property
    def n(self) -> int:
        return self.spec.n

    def ambient(self) -> SpaceForm:
        return SpaceForm(as_rational(self.spec.c), self.n + 1)


@dataclass(frozen=True)
class EllipsoidNumeric:
    a: float
    b: float
    c: float
    resolution: int = quadrature.DEFAULT_RESOLUTION

    variant = "ellipsoid"
    n = 2

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise DomainError("semi-axes must be positive")

    def ambient(self) -> SpaceForm:
        return SpaceForm(Fraction(0), 3)


HypersurfaceModel = Union[GeodesicSphere, CliffordProduct, AbstractCPC, EllipsoidNumeric]


@dataclass(frozen=True)
class DeformationFamily:
    """Parallel deformation with unit normal speed g(X, n) ≡ 1."""

    base: Any
    kind: str = "parallel_normal"


def model_curvatures(M: HypersurfaceModel) -> tuple[CurvatureSpec, PiGraded]:
    if isinstance(M, GeodesicSphere):
        spec = CurvatureSpec.uniform(M.curvature, M.n, M.c)
        vol = sphere_volume(M.n) * rational_power_sqrt(M.c + M.curvature**2, -M.n)
        return spec, vol
    if isinstance(M, CliffordProduct):
        r2 = M.r * M.r
        s2 = 1 - r2
        s = rational_power_sqrt(s2, 1)
        lam = -s / M.r  # first factor
        mu = M.r / s
        entries = []
        if M.p:
            entries.append((lam, M.p))
        if M.q:
            entries.append((mu, M.q))
        spec = CurvatureSpec(Fraction(1), tuple(entries))
        vol = PiGraded(1)
        if M.p:
            vol = vol * sphere_volume(M.p) * M.r**M.p
        if M.q:
            vol = vol * sphere_volume(M.q) * rational_power_sqrt(s2, M.q)
        return spec, vol
    if isinstance(M, AbstractCPC):
        return M.spec, M.vol
    if isinstance(M, EllipsoidNumeric):
        raise UnsupportedVariant("ellipsoid curvatures vary pointwise; use the quadrature engine")
    raise UnsupportedVariant(f"unknown model {M!r}")


def _project(x: Any) -> Any:
    while isinstance(x, QuadExt):
        x = x.project()
    return x


def euler_characteristic_closed(M: HypersurfaceModel) -> PiGraded:
    """χ = 𝒫 · vol / (2^l π^l) for a constant-curvature closed model."""
    spec, vol = model_curvatures(M)
    if spec.n % 2:
        raise OddDimension(f"χ formula needs even n, got {spec.n}")
    l = spec.n // 2
    chi = PiGraded(weil_invariant(spec)) * vol / PiGraded.pi(l, 2**l)
    if chi.half_exp != 0:
        raise NonIntegerResult(f"χ kept a π power: {chi}")
    try:
        value = as_rational(_project(chi.coeff))
    except Exception as exc:  # ExtensionResidue or non-constant
        raise NonIntegerResult(f"χ is not rational: {chi}") from exc
    if value.denominator != 1:
        raise NonIntegerResult(f"χ = {value} is not an integer")
    return PiGraded(value)


def euler_characteristic_int(M: HypersurfaceModel) -> int:
    return int(euler_characteristic_closed(M).coeff)


def parallel_exact(M: HypersurfaceModel, cs: Any, sn: Any) -> AbstractCPC:
    """Parallel hypersurface at the distance t with cs_c(t) = cs, sn_c(t) = sn.

    Requires cs² + c·sn² = 1 exactly (e.g. a Pythagorean angle when c = 1).
    """
    spec, vol = model_curvatures(M)
    cs, sn = as_rational(cs), as_rational(sn)
    c = spec.c
    if cs * cs + c * sn * sn != 1:
        raise DomainError("cs² + c sn² must equal 1")
    entries = []
    factor: Any = 1
    for lam, m in spec.entries:
        stretch = cs + lam * sn
        if stretch == 0:
            raise DomainError("parallel hypersurface hits a focal point")
        entries.append(((lam * cs - c * sn) / stretch, m))
        factor = factor * stretch**m
    return AbstractCPC(CurvatureSpec(c, tuple(entries)), vol * factor)


def _float_spec_parallel(spec: CurvatureSpec, t: float) -> tuple[list[tuple[float, int]], float]:
    c = to_float(spec.c)
    if c > 0:
        k = math.sqrt(c)
        cs, sn = math.cos(k * t), math.sin(k * t) / k
    elif c < 0:
        k = math.sqrt(-c)
        cs, sn = math.cosh(k * t), math.sinh(k * t) / k
    else:
        cs, sn = 1.0, t
    entries, factor = [], 1.0
    for lam, m in spec.entries:
        lam = float(lam)
        stretch = cs + lam * sn
        entries.append(((lam * cs - c * sn) / stretch, m))
        factor *= stretch**m
    return entries, factor


# --------------------------------------------------------------------------
# Reilly's first variation formula


@dataclass(frozen=True)
class ReillyCheck:
    lhs: Any
    rhs: Any
    residual: Any
    exact: bool


def _reilly_rhs_poly(n: int, i: int, c: Any, s: list[Any]) -> Any:
    up = s[i + 1] if i + 1 <= n else 0
    down = s[i - 1] if i >= 1 else 0
    return (i + 1) * up - c * (n - i + 1) * down


def reilly_residual_exact(n: int, i: int, rho: Any = None) -> ReillyCheck:
    """Reilly's formula on parallel geodesic spheres λ(t) = cot(ρ + t) in S^{n+1}.

    ``rho=None`` works symbolically in x = cot ρ after factoring out
    ω_n sin^n ρ; the residual is then a rational function that must vanish.
    ``rho`` given as a Fraction means ρ = rho·π (cot ρ must be rational);
    a float is evaluated with math.
    """
    if not 0 <= i <= n:
        raise DomainError(f"i must lie in 0..{n}, got {i}")
    c = 1
    if rho is None or isinstance(rho, (Fraction, int)) and not isinstance(rho, bool):
        x = LAMBDA if rho is None else _RATIONAL_COT.get(as_rational(rho))
        if x is None:
            raise DomainError(f"cot({rho}π) is not rational")
        s = [LAMBDA * 0 + v for v in all_symmetric(CurvatureSpec.uniform(LAMBDA, n, c))]
        p = s[i]
        # d/dρ cot ρ = -(1 + cot²ρ),  d/dρ sin^n ρ = n cot ρ sin^n ρ
        lhs_poly = -(1 + LAMBDA * LAMBDA) * p.derivative() + n * LAMBDA * p
        rhs_poly = _reilly_rhs_poly(n, i, c, s)
        if rho is None:
            return ReillyCheck(lhs_poly, rhs_poly, lhs_poly - rhs_poly, True)
        scale = sphere_volume(n) * rational_power_sqrt(1 + x * x, -n)
        lhs = scale * lhs_poly(x)
        rhs = scale * rhs_poly(x)
        return ReillyCheck(lhs, rhs, lhs - rhs, True)

    rho = float(rho)
    omega = float(sphere_volume(n))
    cot, sin, cos = math.cos(rho) / math.sin(rho), math.sin(rho), math.cos(rho)
    binom = math.comb(n, i)
    # d/dρ [C(n,i) cot^i ρ sin^n ρ]
    d_cot = -1.0 / sin**2
    lhs = binom * (i * cot ** (i - 1) * d_cot * sin**n if i else 0.0)
    lhs += binom * cot**i * n * sin ** (n - 1) * cos
    lhs *= omega
    s_vals = [math.comb(n, k) * cot**k for k in range(n + 1)]
    rhs = _reilly_rhs_poly(n, i, c, s_vals) * omega * sin**n
    return ReillyCheck(lhs, rhs, lhs - rhs, False)


@dataclass(frozen=True)
class NumericCheck:
    lhs: float
    rhs: float
    residual: float
    h: float
    residual_half_step: float
    richardson_lhs: float
    order_confirmed: bool
    err_estimate: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance and self.order_confirmed


def _richardson_ok(r_h: float, r_half: float, floor: float) -> bool:
    """Residuals consistent with O(h²): quartering on halving, or both at the noise floor."""
    if r_h <= floor and r_half <= floor:
        return True
    return r_half <= r_h / 4.0 * 1.5 + floor


def ellipsoid_curvature_integrals(M: EllipsoidNumeric, t: float = 0.0) -> quadrature.CurvatureIntegrals:
    quadrature.quadrature_gate(M.resolution)
    return quadrature.curvature_integrals(M.a, M.b, M.c, M.resolution, t)


def reilly_residual_numeric(M: EllipsoidNumeric, i: int, h: float = 1e-3, tol: float = 1e-5) -> NumericCheck:
    """Central-difference d/dt ∫S_i vol_t against the quadrature of (i+1)S_{i+1}.

    With c = 0 and n = 2 the S_{i-1} term is absent and S_3 = 0.
    """
    if not 0 <= i <= 2:
        raise DomainError("ellipsoid has n = 2, so 0 ≤ i ≤ 2")
    base = ellipsoid_curvature_integrals(M)
    ts = [h, -h, h / 2, -h / 2]
    vals = quadrature.map_parallel(lambda t: ellipsoid_curvature_integrals(M, t).values[i], ts)
    lhs_h = (vals[0] - vals[1]) / (2 * h)
    lhs_half = (vals[2] - vals[3]) / h
    rhs = (i + 1) * base.values[i + 1] if i + 1 <= 2 else 0.0
    r_h, r_half = abs(lhs_h - rhs), abs(lhs_half - rhs)
    err = max(base.err_estimate) / h + 1e-13 * max(abs(v) for v in base.values) / h
    return NumericCheck(
        lhs=lhs_h,
        rhs=rhs,
        residual=r_h,
        h=h,
        residual_half_step=r_half,
        richardson_lhs=(4 * lhs_half - lhs_h) / 3,
        order_confirmed=_richardson_ok(r_h, r_half, 10 * err),
        err_estimate=err,
        tolerance=tol,
    )


@dataclass(frozen=True)
class InvarianceCheck:
    value: float
    derivative: float
    relative: float
    tolerance: float
    chi_estimate: float
    exact_chi: Any = None

    @property
    def passed(self) -> bool:
        return self.relative <= self.tolerance


def invariance_residual(M: HypersurfaceModel, h: float = 1e-3, tol: float = 1e-8) -> InvarianceCheck:
    """Central difference of ∫𝒫 vol along the parallel family through M.

    ``relative`` is |d/dt ∫𝒫 vol| / max(|∫𝒫 vol|, (2π)^l).
    """
    if isinstance(M, EllipsoidNumeric):
        vals = quadrature.map_parallel(lambda t: ellipsoid_curvature_integrals(M, t).values[2], [0.0, h, -h])
        value = vals[0]
        deriv = (vals[1] - vals[2]) / (2 * h)
        return InvarianceCheck(value, deriv, abs(deriv) / max(abs(value), 2 * math.pi), tol, value / (2 * math.pi))

    spec, vol = model_curvatures(M)
    if spec.n % 2:
        raise OddDimension("invariance check needs even n")
    l = spec.n // 2
    fspec = CurvatureSpec(to_float(spec.c), tuple((float(v), m) for v, m in spec.entries))
    vol_f = float(vol)

    def integral(t: float) -> float:
        entries, factor = _float_spec_parallel(fspec, t)
        return float(weil_invariant(CurvatureSpec(fspec.c, tuple(entries)))) * vol_f * factor

    value, up, down = integral(0.0), integral(h), integral(-h)
    deriv = (up - down) / (2 * h)
    # drift is measured in units of χ so that χ = 0 families are not divided by noise
    scale = max(abs(value), (2 * math.pi) ** l)
    chi = euler_characteristic_int(M)
    return InvarianceCheck(
        value, deriv, abs(deriv) / scale, tol, value / (2 * math.pi) ** l, exact_chi=chi
    )


# --------------------------------------------------------------------------
# JSON descriptors


def model_from_json(obj: dict) -> HypersurfaceModel:
    variant = obj.get("variant")
    if variant in ("geodesic_sphere", "sphere"):
        n = int(obj["n"])
        if "radius" in obj:
            return GeodesicSphere.euclidean(n, obj["radius"])
        if "latitude_over_pi" in obj:
            return GeodesicSphere.spherical_latitude(n, obj["latitude_over_pi"])
        return GeodesicSphere(n, as_rational(obj.get("c", 0)), as_rational(obj["curvature"]))
    if variant == "clifford":
        return CliffordProduct(int(obj["p"]), int(obj["q"]), as_rational(obj["r"]))
    if variant == "abstract_cpc":
        entries = tuple((as_rational(v), int(m)) for v, m in obj["entries"])
        spec = CurvatureSpec(as_rational(obj.get("c", 0)), entries)
        vol = obj["vol"]
        vol = from_json(vol) if isinstance(vol, dict) else PiGraded(as_rational(vol))
        return AbstractCPC(spec, vol)
    if variant == "ellipsoid":
        a, b, c = (float(x) for x in obj["axes"])
        return EllipsoidNumeric(a, b, c, int(obj.get("resolution", quadrature.DEFAULT_RESOLUTION)))
    raise UnsupportedVariant(f"unknown model variant {variant!r}")
