"""Curvature integrals over an ellipsoid in R^3.

The surface is parametrised by colatitude φ and longitude θ.  Integration
is Gauss–Legendre in φ (nodes are interior, so the poles are never
sampled) times the periodic trapezoid rule in θ on a half-step-offset grid.
Both are spectrally accurate for the smooth integrands involved.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, MeshTooCoarse

DEFAULT_RESOLUTION = 256
GATE_TOLERANCE = 1e-10


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("SPACEFORM_EULER_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SurfaceSample:
    """Principal-curvature data at every quadrature node."""

    k1: np.ndarray
    k2: np.ndarray
    weight: np.ndarray  # quadrature weight times area element

    def integrate(self, values: np.ndarray) -> float:
        # numpy's sum is pairwise, so the reduction order is fixed
        return float(np.sum(values * self.weight))


@lru_cache(maxsize=8)
def _nodes(n_phi: int, n_theta: int):
    x, w = np.polynomial.legendre.leggauss(n_phi)
    phi = 0.5 * np.pi * (x + 1.0)
    w_phi = 0.5 * np.pi * w
    theta = (np.arange(n_theta) + 0.5) * (2.0 * np.pi / n_theta)
    w_theta = np.full(n_theta, 2.0 * np.pi / n_theta)
    return phi, w_phi, theta, w_theta


@lru_cache(maxsize=32)
def sample_ellipsoid(a: float, b: float, c: float, n_phi: int, n_theta: int) -> SurfaceSample:
    """Shape operator A = dN (outward N) from the two fundamental forms."""
    if min(a, b, c) <= 0:
        raise DomainError("semi-axes must be positive")
    phi, w_phi, theta, w_theta = _nodes(n_phi, n_theta)
    P, T = np.meshgrid(phi, theta, indexing="ij")
    sp, cp, st, ct = np.sin(P), np.cos(P), np.sin(T), np.cos(T)
    zero = np.zeros_like(P)

    X = np.stack([a * sp * ct, b * sp * st, c * cp])
    Xp = np.stack([a * cp * ct, b * cp * st, -c * sp])
    Xt = np.stack([-a * sp * st, b * sp * ct, zero])
    Xpp = -X
    Xpt = np.stack([-a * cp * st, b * cp * ct, zero])
    Xtt = np.stack([-a * sp * ct, -b * sp * st, zero])

    W = np.cross(Xp, Xt, axis=0)
    area = np.linalg.norm(W, axis=0)
    N = W / area
    if np.any(np.einsum("i...,i...->...", N, X) <= 0):
        raise DomainError("normal orientation is not outward")

    E = np.einsum("i...,i...->...", Xp, Xp)
    F = np.einsum("i...,i...->...", Xp, Xt)
    G = np.einsum("i...,i...->...", Xt, Xt)
    L = -np.einsum("i...,i...->...", N, Xpp)
    M = -np.einsum("i...,i...->...", N, Xpt)
    Nn = -np.einsum("i...,i...->...", N, Xtt)

    det_i = E * G - F * F
    mean_sum = (E * Nn - 2.0 * F * M + G * L) / det_i  # trace of I^{-1} II
    gauss = (L * Nn - M * M) / det_i
    disc = np.sqrt(np.maximum(mean_sum**2 - 4.0 * gauss, 0.0))
    k1 = 0.5 * (mean_sum + disc)
    k2 = 0.5 * (mean_sum - disc)

    weight = area * np.outer(w_phi, w_theta)
    return SurfaceSample(k1, k2, weight)


def parallel_symmetric(sample: SurfaceSample, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """S_0..S_2 of the parallel surface at distance t and its area factor.

    Curvatures of the parallel surface are λ/(1 + tλ); the area element
    scales by (1 + tλ_1)(1 + tλ_2).
    """
    f1 = 1.0 + t * sample.k1
    f2 = 1.0 + t * sample.k2
    if np.any(f1 <= 0) or np.any(f2 <= 0):
        raise DomainError(f"parallel surface at distance {t} is singular")
    l1, l2 = sample.k1 / f1, sample.k2 / f2
    return np.ones_like(l1), l1 + l2, l1 * l2, f1 * f2


@dataclass(frozen=True)
class CurvatureIntegrals:
    values: tuple[float, float, float]
    err_estimate: tuple[float, float, float]
    resolution: int


def curvature_integrals(
    a: float, b: float, c: float, resolution: int = DEFAULT_RESOLUTION, t: float = 0.0, tol: float = 1e-8
) -> CurvatureIntegrals:
    """∫ S_i vol for i = 0, 1, 2 over the parallel surface at distance t.

    The error estimate is the change against half resolution; exceeding
    ``tol`` (relative to the integral scale) raises MeshTooCoarse.
    """

    def at(res: int) -> list[float]:
        sample = sample_ellipsoid(float(a), float(b), float(c), res, res)
        s0, s1, s2, jac = parallel_symmetric(sample, t)
        return [sample.integrate(s * jac) for s in (s0, s1, s2)]

    if resolution < 4:
        raise DomainError("resolution must be at least 4")
    full = at(resolution)
    half = at(resolution // 2)
    errs = tuple(abs(f - h) for f, h in zip(full, half))
    scale = max(abs(full[0]), 1.0)
    if max(errs) > tol * scale:
        raise MeshTooCoarse(f"quadrature self-error {max(errs):.3e} exceeds {tol:.1e}")
    return CurvatureIntegrals(tuple(full), errs, resolution)


def map_parallel(fn, args: list) -> list:
    """Evaluate ``fn`` over ``args`` with at most SPACEFORM_EULER_THREADS workers, keeping order."""
    workers = min(max_threads(), len(args))
    if workers <= 1:
        return [fn(x) for x in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


def quadrature_gate(resolution: int = DEFAULT_RESOLUTION) -> float:
    """Check sphere areas against 4πr²; returns the worst relative error."""
    worst = 0.0
    for r in (0.5, 1.0, 2.0):
        sample = sample_ellipsoid(r, r, r, resolution, resolution)
        area = sample.integrate(np.ones_like(sample.k1))
        worst = max(worst, abs(area - 4.0 * np.pi * r * r) / (4.0 * np.pi * r * r))
    if worst > GATE_TOLERANCE:
        raise MeshTooCoarse(f"sphere area off by {worst:.3e} at resolution {resolution}")
    return worst
