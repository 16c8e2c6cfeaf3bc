"""Boundary identities for even-dimensional domains with odd-dimensional boundary.

Caps and bands live in the round sphere S^{n+1}_r (c = 1/r²).  They are
described by rational cosines of their bounding colatitudes, which keeps
every volume and boundary integral in ℚ·π^k: with n = 2k+1 odd, all sine
powers that appear are even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import DegenerateBand, DomainError, OddDimension, SignError, ZeroCurvature
from .exactnum import PiGraded, UniPoly, as_rational, sphere_volume
from .symcurv import double_factorial

__all__ = [
    "BoundedDomain",
    "CapSpec",
    "CylinderSpec",
    "SteinerTerms",
    "steiner_terms",
    "steiner_residual",
    "blaschke_residual",
    "spherical_cap",
    "spherical_cylinder",
    "full_sphere_domain",
    "euclidean_ball_integral",
    "euclidean_boundary_chi",
    "gauss_kronecker_chi",
    "hopf_volume",
    "cos_of_angle",
]

_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
}


def cos_of_angle(phi_over_pi: Any) -> Fraction:
    """cos(φ) for the rational multiples of π whose cosine is rational."""
    key = as_rational(phi_over_pi)
    if key not in _RATIONAL_COS:
        raise DomainError(f"cos({key}π) is irrational; pass the cosine directly")
    return _RATIONAL_COS[key]


@dataclass(frozen=True)
class BoundedDomain:
    """Q of dimension n+1 in N(c) with odd-dimensional boundary ∂Q (dim n = 2k+1)."""

    c: Any
    n: int
    vol_Q: PiGraded
    chi_Q: int
    boundary_odd_integrals: tuple  # ∫_{∂Q} S_{2j+1}, j = 0..k

    def __post_init__(self):
        if self.n % 2 == 0:
            raise DomainError(f"boundary dimension must be odd, got {self.n}")
        object.__setattr__(self, "boundary_odd_integrals", tuple(self.boundary_odd_integrals))
        if len(self.boundary_odd_integrals) != self.k + 1:
            raise DomainError(f"need {self.k + 1} boundary integrals, got {len(self.boundary_odd_integrals)}")

    @property
    def k(self) -> int:
        return (self.n - 1) // 2


@dataclass(frozen=True)
class CapSpec:
    """Geodesic ball {φ ≤ φ1} in S^{2k+2}_r, given by cos φ1."""

    r: Fraction
    cos_phi1: Fraction
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "r", as_rational(self.r))
        object.__setattr__(self, "cos_phi1", as_rational(self.cos_phi1))
        if self.r <= 0:
            raise DomainError("radius must be positive")
        if not -1 < self.cos_phi1 < 1:
            raise DomainError("need 0 < φ1 < π")
        if self.k < 0:
            raise DomainError("k must be non-negative")


@dataclass(frozen=True)
class CylinderSpec:
    """Band {φ2 ≤ φ ≤ φ1} in S^{2k+2}_r, 0 < φ2 ≤ φ1 < π, given by cosines."""

    r: Fraction
    cos_phi1: Fraction
    cos_phi2: Fraction
    k: int = 0

    def __post_init__(self):
        for name in ("r", "cos_phi1", "cos_phi2"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.r <= 0:
            raise DomainError("radius must be positive")
        if not -1 < self.cos_phi1 <= self.cos_phi2 < 1:
            raise DomainError("need 0 < φ2 ≤ φ1 < π")
        if self.k < 0:
            raise DomainError("k must be non-negative")


@dataclass(frozen=True)
class SteinerTerms:
    lhs: PiGraded
    rhs: PiGraded

    @property
    def residual(self) -> PiGraded:
        return self.lhs - self.rhs


def steiner_terms(Q: BoundedDomain) -> SteinerTerms:
    """Both sides of c^{k+1}vol(Q) + (1/n!!) Σ (2j)!!(2k-2j-1)!! c^{k-j} ∫S_{2j+1} = χ(Q)ω_{2k+2}/2."""
    if Q.c == 0:
        raise ZeroCurvature("c = 0 is handled by euclidean_boundary_chi")
    k = Q.k
    lhs = PiGraded(Q.c ** (k + 1)) * Q.vol_Q
    boundary = PiGraded(0)
    for j, integral in enumerate(Q.boundary_odd_integrals):
        weight = double_factorial(2 * j) * double_factorial(2 * k - 2 * j - 1)
        boundary = boundary + PiGraded(weight * Q.c ** (k - j)) * integral
    lhs = lhs + boundary / double_factorial(Q.n)
    rhs = PiGraded(Fraction(Q.chi_Q, 2)) * sphere_volume(2 * k + 2)
    return SteinerTerms(lhs, rhs)


def steiner_residual(Q: BoundedDomain) -> PiGraded:
    return steiner_terms(Q).residual


def blaschke_residual(Q: BoundedDomain) -> PiGraded:
    """Surface case n = 1: c·area + ∫κ_g - 2πχ."""
    if Q.n != 1:
        raise DomainError("the planar-boundary identity needs n = 1")
    return PiGraded(Q.c) * Q.vol_Q + Q.boundary_odd_integrals[0] - PiGraded.pi(1, 2 * Q.chi_Q)


def _sin_power_integral(k: int, cos_lo: Fraction, cos_hi: Fraction) -> Fraction:
    """∫ sin^{2k+1} t dt over the angles with cos t running from cos_hi down to cos_lo."""
    # substitute u = cos t: ∫_{cos_lo}^{cos_hi} (1 - u²)^k du
    poly = UniPoly([1, 0, -1]) ** k
    antider = UniPoly([0] + [Fraction(c) / (i + 1) for i, c in enumerate(poly.coeffs)])
    return Fraction(antider(cos_hi)) - Fraction(antider(cos_lo))


def _latitude_integrals(k: int, r: Fraction, cos_phi: Fraction, sign: int) -> list[PiGraded]:
    """∫ S_{2j+1} over the latitude sphere at cos φ, outward normal pointing toward larger φ when sign = +1.

    The latitude S^n has radius r sin φ and umbilic curvature cot φ / r.
    """
    n = 2 * k + 1
    omega = sphere_volume(n)
    out = []
    for j in range(k + 1):
        sin_sq = 1 - cos_phi * cos_phi
        value = math.comb(n, 2 * j + 1) * r ** (n - 2 * j - 1) * cos_phi ** (2 * j + 1) * sin_sq ** (k - j)
        out.append(PiGraded(sign * value) * omega)
    return out


def spherical_cap(spec: CapSpec) -> BoundedDomain:
    """The geodesic ball around the north pole; χ = 1."""
    k, r = spec.k, spec.r
    n = 2 * k + 1
    vol = PiGraded(r ** (n + 1) * _sin_power_integral(k, spec.cos_phi1, Fraction(1))) * sphere_volume(n)
    integrals = _latitude_integrals(k, r, spec.cos_phi1, +1)
    return BoundedDomain(1 / (r * r), n, vol, 1, tuple(integrals))


def spherical_cylinder(spec: CylinderSpec) -> BoundedDomain:
    """A latitude band; χ = χ(S^n) = 0.

    The lower circle's outward normal points away from the north pole and
    the upper circle's toward it, so their curvature integrals carry
    opposite signs.
    """
    if spec.cos_phi1 == spec.cos_phi2:
        raise DegenerateBand("φ1 = φ2 gives an empty band")
    k, r = spec.k, spec.r
    n = 2 * k + 1
    vol = PiGraded(r ** (n + 1) * _sin_power_integral(k, spec.cos_phi1, spec.cos_phi2)) * sphere_volume(n)
    lower = _latitude_integrals(k, r, spec.cos_phi1, +1)
    upper = _latitude_integrals(k, r, spec.cos_phi2, -1)
    integrals = [a + b for a, b in zip(lower, upper)]
    return BoundedDomain(1 / (r * r), n, vol, 0, tuple(integrals))


def full_sphere_domain(k: int, r: Any) -> BoundedDomain:
    """S^{2k+2}_r itself: empty boundary, χ = 2."""
    r = as_rational(r)
    n = 2 * k + 1
    vol = PiGraded(r ** (n + 1)) * sphere_volume(n + 1)
    return BoundedDomain(1 / (r * r), n, vol, 2, tuple(PiGraded(0) for _ in range(k + 1)))


def euclidean_ball_integral(k: int, r: Any = 1) -> PiGraded:
    """∫ S_{2k+1} over the round sphere of radius r bounding a ball in R^{2k+2}."""
    r = as_rational(r)
    n = 2 * k + 1
    # S_{2k+1} = r^{-n} times area ω_n r^n
    return PiGraded(r**-n * r**n) * sphere_volume(n)


def _pi_scaled(factor: Fraction, pi_power: int, integral: Any) -> Any:
    if isinstance(integral, float):
        return float(factor) * integral / math.pi**pi_power
    value = PiGraded(factor) * PiGraded.pi(-pi_power) * PiGraded._coerce(integral)
    if value.half_exp != 0:
        raise DomainError(f"the result {value} still carries a power of π")
    return as_rational(value.coeff)


def euclidean_boundary_chi(k: int, integral: Any) -> Any:
    """χ(Q) = k!/(2π^{k+1}) ∫_{∂Q} S_{2k+1}, for Q ⊂ R^{2k+2}."""
    return _pi_scaled(Fraction(math.factorial(k), 2), k + 1, integral)


def gauss_kronecker_chi(l: int, integral: Any) -> Any:
    """χ(M) = (2l-1)!!/(2^l π^l) ∫_M S_{2l}, for closed M^{2l} ⊂ R^{2l+1}; floats accepted."""
    return _pi_scaled(Fraction(double_factorial(2 * l - 1), 2**l), l, integral)


def hopf_volume(m: int, chi: int) -> PiGraded:
    """Volume of a finite-volume hyperbolic m-manifold: (-1)^{m/2} ω_m χ / 2."""
    if m % 2:
        raise OddDimension(f"m must be even, got {m}")
    sign = -1 if (m // 2) % 2 else 1
    if sign * chi <= 0:
        raise SignError(f"(-1)^(m/2)·χ = {sign * chi} is not positive")
    return PiGraded(Fraction(sign * chi, 2)) * sphere_volume(m)
