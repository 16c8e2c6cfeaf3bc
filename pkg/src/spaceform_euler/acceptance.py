"""The acceptance criteria as runnable checks.

Each check returns a :class:`CriterionResult`; a check passes only when
every assertion holds and it finishes inside its time budget.  The CLI
``selftest`` and the test suite both run these.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import isopar, oddsteiner, pfaffian, spaceform, symcurv
from .exactnum import LAMBDA, PiGraded, RatFunc, sphere_volume

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.name}: {self.detail} ({self.elapsed:.2f}s / {self.budget:g}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "elapsed_s": round(self.elapsed, 3),
            "budget_s": self.budget,
        }


class _Failed(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _Failed(message)


def _rand_q(rng: random.Random, span: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


# 1 ---------------------------------------------------------------------------


def sphere_chi(seed: int) -> str:
    radii = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 7), Fraction(5, 3)]
    for n in (2, 4, 6, 8):
        for r in radii:
            chi = spaceform.euler_characteristic_closed(spaceform.GeodesicSphere.euclidean(n, r))
            _require(chi.half_exp == 0 and chi.coeff == 2, f"χ(S^{n}_{r}) = {chi}")
    return "χ = 2 for n ∈ {2,4,6,8} at 5 radii"


# 2 ---------------------------------------------------------------------------


def clifford_table(seed: int) -> str:
    expected = {(1, 1): 0, (1, 3): 0, (3, 3): 0, (2, 2): 4, (2, 4): 4, (4, 4): 4, (0, 2): 2, (0, 4): 2, (0, 6): 2}
    grid = [Fraction(k, 21) for k in range(1, 21)]
    for (p, q), chi in expected.items():
        for r in grid:
            got = spaceform.euler_characteristic_closed(spaceform.CliffordProduct(p, q, r))
            _require(got == chi, f"χ(S^{{{p},{q}}}_{r}) = {got}, expected {chi}")
    return f"{len(expected)} pairs x {len(grid)} radii exact"


# 3 ---------------------------------------------------------------------------


def _random_skew(rng: random.Random, n: int) -> pfaffian.SkewMatrix:
    return pfaffian.SkewMatrix.from_function(n, lambda i, j: _rand_q(rng))


def pfaffian_suite(seed: int) -> str:
    rng = random.Random(seed)
    for t in range(200):
        X = _random_skew(rng, (2, 4, 6, 8)[t % 4])
        _require(pfaffian.pfaffian_det_check(X) == 0, f"Pf² ≠ det for {X}")
    for t in range(60):
        n = (2, 4, 6)[t % 3]
        M = pfaffian.CurvatureMatrix(_rand_q(rng), [_rand_q(rng) for _ in range(n)])
        full = (1 << n) - 1
        laplace = pfaffian.pfaffian_laplace(M.form_matrix(), row=t % n).coefficient(full)
        matching = pfaffian.curvature_pfaffian(M)
        oracle = pfaffian.even_form_oracle(M)
        _require(laplace == matching == oracle, f"engines disagree at n={n}: {laplace}, {matching}, {oracle}")
    for t in range(200):
        n = 2 * (1 + t % 5)
        spec = symcurv.CurvatureSpec.from_values([_rand_q(rng) for _ in range(n)], _rand_q(rng))
        M = pfaffian.CurvatureMatrix.from_spec(spec)
        _require(pfaffian.curvature_pfaffian(M) == symcurv.weil_invariant(spec), f"Pf(Ω) ≠ 𝒫 for {spec}")
    return "200 Pf²=det, 60 three-engine agreements, 200 Pf(Ω)=𝒫"


# 4 ---------------------------------------------------------------------------


def star_identity(seed: int) -> str:
    rng = random.Random(seed + 4)
    checked = 0
    for t in range(200):
        l = (2, 3, 4)[t % 3]
        values = [_rand_q(rng) for _ in range(2 * l)]
        for q in range(1, l):
            _require(symcurv.star_identity_residual(values, q) == 0, f"residual ≠ 0 for {values}, q={q}")
            checked += 1
    return f"{checked} (tuple, q) pairs with zero residual"


# 5 ---------------------------------------------------------------------------


def reilly(seed: int) -> str:
    for n in range(1, 9):
        for i in range(n + 1):
            check = spaceform.reilly_residual_exact(n, i)
            _require(check.residual == 0, f"symbolic residual n={n}, i={i}: {check.residual}")
    worst = 0.0
    for axes in ((1.0, 1.0, 2.0), (1.0, 2.0, 3.0)):
        M = spaceform.EllipsoidNumeric(*axes)
        for i in range(3):
            check = spaceform.reilly_residual_numeric(M, i, h=1e-3, tol=1e-5)
            _require(check.passed, f"ellipsoid {axes} i={i}: residual {check.residual:.3e}, order ok {check.order_confirmed}")
            worst = max(worst, check.residual)
    return f"exact for n ≤ 8; ellipsoid worst residual {worst:.1e} ≤ 1e-5"


# 6 ---------------------------------------------------------------------------


def _integral_exact(M) -> PiGraded:
    spec, vol = spaceform.model_curvatures(M)
    weil = spaceform._project(symcurv.weil_invariant(spec))
    prod = PiGraded(weil) * vol
    return prod.map_coeff(spaceform._project)


def invariance(seed: int) -> str:
    models = [
        spaceform.GeodesicSphere.euclidean(4, 2),
        spaceform.GeodesicSphere(2, 1, Fraction(1, 2)),
        spaceform.CliffordProduct(2, 2, Fraction(3, 5)),
        spaceform.CliffordProduct(1, 3, Fraction(1, 2)),
    ]
    for M in models:
        before = _integral_exact(M)
        c = M.ambient().c
        cs, sn = (Fraction(1), Fraction(1, 5)) if c == 0 else (Fraction(24, 25), Fraction(7, 25))
        after = _integral_exact(spaceform.parallel_exact(M, cs, sn))
        _require(before == after, f"∫𝒫 changed along the parallel family of {M}: {before} → {after}")
        numeric = spaceform.invariance_residual(M)
        _require(numeric.passed, f"numeric drift {numeric.relative:.2e} for {M}")
    E = spaceform.EllipsoidNumeric(1.0, 2.0, 3.0)
    integrals = spaceform.ellipsoid_curvature_integrals(E)
    chi = integrals.values[2] / (2 * math.pi)
    _require(abs(chi - 2) <= 1e-6, f"ellipsoid (1/2π)∫S₂ = {chi!r}")
    drift = spaceform.invariance_residual(E)
    _require(drift.passed, f"ellipsoid drift {drift.relative:.2e}")
    return f"exact for spheres and Clifford; ellipsoid (1/2π)∫S₂ = {chi:.12f}"


# 7 ---------------------------------------------------------------------------


def coefficients(seed: int) -> str:
    for n in range(2, 13, 2):
        for c in (Fraction(1), Fraction(-1), Fraction(2, 3)):
            sol = symcurv.closed_coefficients_even(n, c, Fraction(1))
            _require(all(r == 0 for r in symcurv.recurrence_rhs(list(sol.b), c)), f"n={n}, c={c}")
    for k in range(5):
        for c in (Fraction(1), Fraction(-2), Fraction(1, 3)):
            sol = symcurv.odd_coefficients(2 * k + 1, c)
            _require(sol.c_rhs[0] * sphere_volume(2 * k + 2) == 2 * c ** (k + 1), f"k={k}, c={c}")
            _require(all(r == 0 for r in sol.c_rhs[1:]), f"k={k}: nonzero tail")
    return "even n ≤ 12 annihilated; c₀ω_{2k+2} = 2c^{k+1} for k ≤ 4"


# 8 ---------------------------------------------------------------------------

IMPLEMENTED_FAMILIES = [
    (1, 1, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 3), (2, 3, 5), (3, 1, 1), (3, 2, 2), (3, 4, 4),
    (3, 8, 8), (4, 1, 1), (4, 1, 2), (4, 2, 2), (4, 3, 4), (6, 1, 1), (6, 2, 2),
]


def isopar_identities(seed: int) -> str:
    for g, m1, m2 in IMPLEMENTED_FAMILIES:
        residuals = isopar.cartan_residual(isopar.IsoparFamily(g, m1, m2))
        _require(all(r == 0 for r in residuals), f"Cartan residual for {(g, m1, m2)}: {residuals}")
    lam2 = LAMBDA * LAMBDA
    d3 = isopar.chi_density(isopar.IsoparFamily(3, 2))
    _require(d3 * PiGraded.pi(3, 8) == 24 * (1 + lam2) ** 3 / (1 - 3 * lam2) ** 2, f"g=3 density {d3}")
    weil6 = isopar.family_weil(isopar.IsoparFamily(6, 2))
    s, t = lam2 - 3, 3 * lam2 - 1
    _require(weil6 * lam2 * s * s * t * t == 5760 * (1 + lam2) ** 6, "g=6 numerator identity")
    _require(isopar.compare_closed_forms(6, 2).match, "g=6 density differs from the closed form")
    for g, m1, m2 in ((4, 1, 1), (6, 1, 1), (2, 1, 1), (2, 1, 3), (2, 3, 5)):
        d = isopar.chi_density(isopar.IsoparFamily(g, m1, m2))
        _require(d.is_zero(), f"density of {(g, m1, m2)} is {d}")
    return f"Cartan ≡ 0 on {len(IMPLEMENTED_FAMILIES)} families; g=3, g=6 closed forms exact; vanishing cases ≡ 0"


# 9 ---------------------------------------------------------------------------


def g4_discrepancy(seed: int) -> str:
    family = isopar.IsoparFamily(4, 2)
    at2 = isopar.family_weil(family, Fraction(2))
    by_newton, by_product = isopar.oracle_weil_at(family, Fraction(2))
    _require(at2 == by_newton == by_product == Fraction(625, 3), f"𝒫(2) = {at2}, oracles {by_newton}, {by_product}")
    symbolic = isopar.family_weil(family)
    _require(symbolic(Fraction(2)) == at2, "symbolic 𝒫 disagrees with direct evaluation")
    report = isopar.compare_closed_forms(4, 2)
    expected_diff = isopar.chi_density(family) - isopar.paper_density(family)
    _require(report.difference == expected_diff, "report difference is not the exact subtraction")
    _require(report.verdict == ("Match" if expected_diff.is_zero() else "Mismatch"), "verdict inconsistent")
    payload = report.to_json()
    _require("computed_density" in payload and "paper_density" in payload, "report omits a side")
    return f"𝒫(2) = 625/3 by three routes; report {report.verdict}, difference {report.difference}"


# 10 --------------------------------------------------------------------------


def steiner_suite(seed: int) -> str:
    rng = random.Random(seed + 10)
    count = 0
    while count < 50:
        r = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        a = Fraction(rng.randint(-11, 11), 12)
        b = Fraction(rng.randint(-11, 11), 12)
        k = rng.randint(0, 2)
        if count % 2 == 0:
            Q = oddsteiner.spherical_cap(oddsteiner.CapSpec(r, a, k))
        else:
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)
            Q = oddsteiner.spherical_cylinder(oddsteiner.CylinderSpec(r, lo, hi, k))
        _require(oddsteiner.steiner_residual(Q) == 0, f"residual ≠ 0 for {Q}")
        if k == 0:
            _require(oddsteiner.blaschke_residual(Q) == 0, f"surface identity fails for {Q}")
        count += 1
    for k in range(4):
        _require(oddsteiner.euclidean_boundary_chi(k, oddsteiner.euclidean_ball_integral(k)) == 1, f"ball χ, k={k}")
    _require(oddsteiner.hopf_volume(2, -2) == PiGraded.pi(1, 4), "hopf_volume(2, -2) ≠ 4π")
    return "50 caps/bands exact; ball χ = 1; hopf_volume(2, -2) = 4π"


# 11 --------------------------------------------------------------------------


def volume_limit(seed: int) -> str:
    vol = isopar.volume_given_chi(isopar.IsoparFamily(3, 2), 6)
    coeff = vol.coeff
    _require(isinstance(coeff, RatFunc) and not coeff.has_pole_at(0), f"volume {vol} is singular at λ = 0")
    limit = PiGraded(coeff(Fraction(0)), vol.half_exp)
    _require(limit == PiGraded.pi(3, 2), f"limit is {limit}")
    return f"vol = {vol}; λ → 0 gives {limit}"


CRITERIA: list[tuple[int, str, Callable[[int], str], float]] = [
    (1, "sphere Euler characteristic", sphere_chi, 1.0),
    (2, "Clifford table", clifford_table, 1.0),
    (3, "Pfaffian suite", pfaffian_suite, 30.0),
    (4, "star identity", star_identity, 5.0),
    (5, "Reilly exact and numeric", reilly, 60.0),
    (6, "parallel invariance", invariance, 60.0),
    (7, "recurrence coefficients", coefficients, 1.0),
    (8, "isoparametric identities", isopar_identities, 30.0),
    (9, "g=4 m=2 discrepancy protocol", g4_discrepancy, 10.0),
    (10, "Steiner and odd-dimensional suite", steiner_suite, 5.0),
    (11, "volume limit", volume_limit, 1.0),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    _, name, fn, budget = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        detail = fn(seed)
        ok = True
    except _Failed as exc:
        detail, ok = str(exc), False
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, detail = False, f"{detail}; exceeded time budget"
    return CriterionResult(number, name, ok, detail, elapsed, budget)


def run_all(seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(c[0], seed) for c in CRITERIA]
