"""Isoparametric hypersurfaces: curvature ladders, Cartan's identity and χ/vol.

Every g ≥ 3 computation runs in ℚ(λ)(√3) (QuadExt over RatFunc) and is
projected back to ℚ(λ) at the end; a surviving √3 part raises
ExtensionResidue.  Printed intermediate polynomials live in
:data:`PRINTED` and are only ever compared against, never computed with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import (
    CoincidentCurvatures,
    DomainError,
    ExcludedParameter,
    ExtensionResidue,
    OddDimension,
    UnsupportedG,
    ZeroDenominator,
    ZeroDensity,
)
from .exactnum import LAMBDA, PiGraded, QuadExt, RatFunc, UniPoly, as_rational, sphere_volume, to_json
from .symcurv import CurvatureSpec, all_symmetric, symmetric_by_newton, weil_invariant

__all__ = [
    "ALLOWED_G",
    "IsoparFamily",
    "ClosedFormReport",
    "munzner_validate",
    "cot_multiples",
    "exact_ladder",
    "family_spec",
    "cartan_residual",
    "family_weil",
    "chi_density",
    "paper_density",
    "compare_closed_forms",
    "volume_given_chi",
    "palindromic_residuals",
    "density_table",
    "oracle_weil_at",
    "numeric_ladder",
    "ladder_at_float",
    "weil_is_even",
    "PRINTED",
]

ALLOWED_G = (1, 2, 3, 4, 6)
SQRT3 = QuadExt(0, 1, 3)


def _poly(*coeffs: int) -> RatFunc:
    """RatFunc from coefficients listed by increasing degree."""
    return RatFunc(UniPoly(coeffs))


@dataclass(frozen=True)
class IsoparFamily:
    """g distinct principal curvatures with alternating multiplicities m1, m2.

    For g ≥ 3 the ambient curvature is 1.
    """

    g: int
    m1: int
    m2: int | None = None
    c: Fraction = Fraction(1)

    def __post_init__(self):
        if self.m2 is None:
            object.__setattr__(self, "m2", self.m1)
        object.__setattr__(self, "c", as_rational(self.c))
        ok, why = munzner_validate(self.g, self.m1, self.m2)
        if not ok:
            raise DomainError("; ".join(why))
        if self.g >= 3 and self.c != 1:
            raise DomainError("families with g ≥ 3 are normalised to c = 1")
        if self.g == 2 and self.c <= 0:
            raise DomainError("the g = 2 ladder needs c > 0")

    @property
    def multiplicities(self) -> list[int]:
        return [self.m1 if i % 2 == 0 else self.m2 for i in range(self.g)]

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def label(self) -> str:
        m = f"{self.m1}" if self.m1 == self.m2 else f"{self.m1},{self.m2}"
        return f"g={self.g},m=({m})"


def munzner_validate(g: int, m1: int, m2: int | None = None) -> tuple[bool, list[str]]:
    """Check (g, m1, m2) against Münzner's and Cartan's restrictions."""
    m2 = m1 if m2 is None else m2
    why = []
    if g not in ALLOWED_G:
        why.append(f"g = {g} is not one of {ALLOWED_G}")
    if m1 < 1 or m2 < 1:
        why.append("multiplicities must be positive")
    if g in (1, 3) and m1 != m2:
        why.append(f"g = {g} is odd, so m_i = m_(i+2 mod g) forces equal multiplicities")
    if g == 3 and m1 == m2 and m1 not in (1, 2, 4, 8):
        why.append("g = 3 requires m ∈ {1, 2, 4, 8}")
    if g == 6 and (m1 != m2 or m1 > 2):
        why.append("g = 6 requires m1 = m2 ≤ 2")
    return not why, why


def cot_multiples(g: int) -> list[Any]:
    """Exact cot(kπ/g) for k = 1..g-1 (Fraction or element of ℚ(√3))."""
    table = {
        2: [Fraction(0)],
        3: [SQRT3 / 3, -SQRT3 / 3],
        4: [Fraction(1), Fraction(0), Fraction(-1)],
        6: [SQRT3, SQRT3 / 3, Fraction(0), -SQRT3 / 3, -SQRT3],
    }
    if g not in table:
        raise UnsupportedG(f"no cot ladder for g = {g}")
    return table[g]


def exact_ladder(g: int, lam: Any = LAMBDA) -> list[Any]:
    """λ_i = cot(ε + (i-1)π/g) as functions of λ = cot ε.

    Uses cot(a + b) = (cot a cot b - 1)/(cot a + cot b).  ``lam`` may be the
    indeterminate or an exact number; denominators vanishing at a number
    raise ExcludedParameter.
    """
    ks = cot_multiples(g)
    if g in (3, 6):
        lam = QuadExt(lam, 0, 3)
    out = [lam]
    for k in ks:
        den = lam + k
        if den == 0:
            raise ExcludedParameter(f"λ = {lam} puts a curvature at infinity")
        out.append((lam * k - 1) / den)
    return out


def family_spec(family: IsoparFamily, lam: Any = LAMBDA) -> CurvatureSpec:
    if family.g == 1:
        values = [lam]
    elif family.g == 2:
        if lam == 0:
            raise ExcludedParameter("λ = 0 puts the second curvature at infinity")
        values = [lam, -family.c / lam]
    else:
        values = exact_ladder(family.g, lam)
        if not isinstance(lam, RatFunc):
            if any(v == 0 for v in values):
                raise ExcludedParameter(f"λ = {lam} makes a principal curvature vanish")
    for i in range(len(values)):
        for j in range(i):
            if values[i] == values[j]:
                raise CoincidentCurvatures(f"λ_{j + 1} = λ_{i + 1}")
    return CurvatureSpec(family.c, tuple(zip(values, family.multiplicities)))


def cartan_residual(family: IsoparFamily, lam: Any = LAMBDA) -> list[Any]:
    """Σ_{j≠i} m_j (c + λ_j λ_i)/(λ_i - λ_j) for every distinct λ_i."""
    spec = family_spec(family, lam)
    out = []
    for i, (li, _) in enumerate(spec.entries):
        total: Any = 0
        for j, (lj, mj) in enumerate(spec.entries):
            if j == i:
                continue
            diff = li - lj
            if diff == 0:
                raise CoincidentCurvatures(f"λ_{i + 1} = λ_{j + 1}")
            total = total + mj * (family.c + lj * li) / diff
        out.append(total)
    if family.g == 2:
        a, b = spec.entries[0][0], spec.entries[1][0]
        if family.c + a * b != 0:
            raise ArithmeticError("g = 2 ladder violates c + λ_1 λ_2 = 0")
    return out


def _project(x: Any) -> Any:
    if isinstance(x, QuadExt):
        if x.b != 0:
            raise ExtensionResidue(f"√3 terms failed to cancel: {x}")
        return x.a
    return x


def family_symmetric(family: IsoparFamily, lam: Any = LAMBDA) -> list[Any]:
    return all_symmetric(family_spec(family, lam))


def family_weil(family: IsoparFamily, lam: Any = LAMBDA) -> Any:
    """𝒫 of the family as an element of ℚ(λ) (or ℚ at a number)."""
    spec = family_spec(family, lam)
    if spec.n % 2:
        raise OddDimension(f"n = {spec.n} is odd")
    return _project(weil_invariant(spec))


def chi_density(family: IsoparFamily, lam: Any = LAMBDA) -> PiGraded:
    """χ/vol = 𝒫 / (2^l π^l)."""
    if family.n % 2:
        raise OddDimension(f"n = {family.n} is odd")
    l = family.n // 2
    weil = family_weil(family, lam)
    return PiGraded(weil, 0) / PiGraded.pi(l, 2**l)


def volume_given_chi(family: IsoparFamily, chi: int, lam: Any = LAMBDA) -> PiGraded:
    """vol = χ 2^l π^l / 𝒫, with χ supplied by the caller."""
    density = chi_density(family, lam)
    if density.is_zero():
        raise ZeroDensity(f"χ/vol vanishes for {family.label}")
    return PiGraded(as_rational(chi)) / density


# --------------------------------------------------------------------------
# printed closed forms


def _family_ratfunc_density(coeff: RatFunc, pi_power: int) -> PiGraded:
    return PiGraded(coeff, -2 * pi_power)


def paper_density(family: IsoparFamily) -> PiGraded:
    """χ/vol exactly as printed for the tabulated families."""
    lam = LAMBDA
    g, m1, m2, c = family.g, family.m1, family.m2, family.c
    if family.n % 2:
        raise OddDimension(f"n = {family.n} is odd")
    if g == 1:
        l = m1 // 2
        return PiGraded(2 * (c + lam * lam) ** l) / sphere_volume(m1)
    if g == 2:
        if m1 % 2:
            return PiGraded(0)
        lam2 = -c / lam
        num = 4 * (c + lam * lam) ** (m1 // 2) * (c + lam2 * lam2) ** (m2 // 2)
        return PiGraded(num) / (sphere_volume(m1) * sphere_volume(m2))
    key = (g, m1)
    if key == (3, 2):
        return _family_ratfunc_density(3 * (1 + lam * lam) ** 3 / (1 - 3 * lam * lam) ** 2, 3)
    if key in ((4, 1), (6, 1)):
        return PiGraded(0)
    if key == (4, 2) and m2 == 2:
        num = _poly(1, 0, -116, 0, 316, 0, -116, 0, 1)
        return _family_ratfunc_density(3 * num / (4 * lam * lam * (1 - lam * lam) ** 2), 4)
    if key == (6, 2):
        den = lam * lam * (1 - 3 * lam * lam) ** 2 * (3 - lam * lam) ** 2
        return _family_ratfunc_density(90 * (1 + lam * lam) ** 6 / den, 6)
    raise DomainError(f"no printed closed form for {family.label}")


def _g6_aux():
    lam = LAMBDA
    s = lam * lam - 3
    t = 3 * lam * lam - 1
    p = QuadExt(0, lam * lam + 1, 3) - 4 * lam
    pbar = QuadExt(0, lam * lam + 1, 3) + 4 * lam
    return lam, s, t, p, pbar


def _printed_g4_m2():
    lam = LAMBDA
    den = lam * lam * (1 - lam * lam) ** 2
    return {
        "S2": _poly(1, 0, -24, 0, 62, 0, -24, 0, 1) / den,
        "S4": _poly(-2, 0, 62, 0, -152, 0, 62, 0, -2) / den,
    }


def _printed_g6_m2():
    lam, s, t, _, _ = _g6_aux()
    den = lam * lam * s * s * t * t

    def sym(a, b, c_, d):  # a(λ^12+1) + b(λ^10+λ^2) + c(λ^8+λ^4) + d λ^6
        return _poly(a, 0, b, 0, c_, 0, d, 0, c_, 0, b, 0, a)

    return {
        "S2": sym(9, -540, 4095, -7608) / den,
        "S4": sym(-60, 4095, -30600, 57210) / den,
        "S6": 2 * sym(59, -3804, 28605, -53336) / den,
    }


PRINTED = {
    (4, 2): _printed_g4_m2,
    (6, 2): _printed_g6_m2,
}


@dataclass
class ClosedFormReport:
    family: str
    computed_weil: Any
    computed_density: PiGraded
    paper_density: PiGraded
    difference: PiGraded
    verdict: str
    checks: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.verdict == "Match"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "verdict": self.verdict,
            "computed_weil": to_json(self.computed_weil),
            "computed_weil_str": str(self.computed_weil),
            "computed_density": to_json(self.computed_density),
            "computed_density_str": str(self.computed_density),
            "paper_density": to_json(self.paper_density),
            "paper_density_str": str(self.paper_density),
            "difference": to_json(self.difference),
            "difference_str": str(self.difference),
            "checks": {
                k: {"holds": v["holds"], **{kk: str(vv) for kk, vv in v.items() if kk != "holds"}}
                for k, v in self.checks.items()
            },
        }


def _check(computed: Any, expected: Any) -> dict:
    return {"holds": computed == expected, "computed": computed, "expected": expected}


def _intermediate_checks(family: IsoparFamily) -> dict:
    key = (family.g, family.m1) if family.m1 == family.m2 else None
    checks: dict = {}
    if key is None or family.g <= 2:
        return checks
    s = [_project(v) for v in family_symmetric(family)]
    lam = LAMBDA
    if key == (3, 2):
        ladder = exact_ladder(3)
        A = _project(ladder[1] + ladder[2])
        B = _project(ladder[1] * ladder[2])
        checks["A=8λ/(1-3λ²)"] = _check(A, 8 * lam / (1 - 3 * lam * lam))
        checks["B=(λ²-3)/(1-3λ²)"] = _check(B, (lam * lam - 3) / (1 - 3 * lam * lam))
        checks["S2=λ²+4λA+A²+2B"] = _check(s[2], lam * lam + 4 * lam * A + A * A + 2 * B)
        checks["S4=λ²(A²+2B)+4λAB+B²"] = _check(s[4], lam * lam * (A * A + 2 * B) + 4 * lam * A * B + B * B)
        checks["S6=λ²B²"] = _check(s[6], lam * lam * B * B)
    elif key == (4, 1):
        checks["S2=-6"] = _check(s[2], -6)
        checks["S4=1"] = _check(s[4], 1)
        checks["3S0+S2+3S4=0"] = _check(3 * s[0] + s[2] + 3 * s[4], 0)
    elif key == (4, 2):
        printed = _printed_g4_m2()
        checks["S2 printed"] = _check(s[2], printed["S2"])
        checks["S4 printed"] = _check(s[4], printed["S4"])
        checks["S6=S2"] = _check(s[6], s[2])
        checks["S8=1"] = _check(s[8], 1)
        definition = 210 + 30 * s[2] + 9 * s[4]
        checks["𝒫=105(S0+S8)+15(S2+S6)+9S4"] = _check(family_weil(family), definition)
        checks["𝒫=210+90S2+9S4 (printed)"] = _check(family_weil(family), 210 + 90 * s[2] + 9 * s[4])
    elif key == (6, 1):
        checks["S4=-S2"] = _check(s[4], -s[2])
        checks["S6=-S0=-1"] = _check(s[6], -1)
    elif key == (6, 2):
        _, sv, tv, p, pbar = _g6_aux()
        ladder = exact_ladder(6)
        checks["λ2=p/s"] = _check(ladder[1], p / sv)
        checks["λ3=p/t"] = _check(ladder[2], p / tv)
        checks["pp̄=3λ⁴-10λ²+3"] = _check(_project(p * pbar), _poly(3, 0, -10, 0, 3))
        checks["st=3λ⁴-10λ²+3"] = _check(sv * tv, _poly(3, 0, -10, 0, 3))
        checks["p-p̄=-8λ"] = _check(_project(p - pbar), -8 * lam)
        printed = _printed_g6_m2()
        for name in ("S2", "S4", "S6"):
            checks[f"{name} printed"] = _check(s[int(name[1:])], printed[name])
        checks["S8=S4"] = _check(s[8], s[4])
        checks["S10=S2"] = _check(s[10], s[2])
        checks["S12=1"] = _check(s[12], 1)
        weil = family_weil(family)
        checks["𝒫λ²s²t²=5760(1+λ²)⁶"] = _check(weil * lam * lam * sv * sv * tv * tv, 5760 * (1 + lam * lam) ** 6)
    return checks


def compare_closed_forms(g: int, m1: int, m2: int | None = None, c: Any = 1) -> ClosedFormReport:
    """Exact comparison of the computed χ/vol with the printed closed form."""
    family = IsoparFamily(g, m1, m2, c)
    computed = chi_density(family)
    printed = paper_density(family)
    diff = _sub_density(computed, printed)
    return ClosedFormReport(
        family=family.label,
        computed_weil=family_weil(family),
        computed_density=computed,
        paper_density=printed,
        difference=diff,
        verdict="Match" if diff.is_zero() else "Mismatch",
        checks=_intermediate_checks(family),
    )


def _sub_density(a: PiGraded, b: PiGraded) -> PiGraded:
    return a - b


def palindromic_residuals(family: IsoparFamily) -> list[Any]:
    """For ladders closed under λ ↦ -1/λ: S_{n-k} - S_n (-1)^k S_k, all zero."""
    if family.g % 2:
        raise DomainError("needs an even g")
    s = [_project(v) for v in family_symmetric(family)]
    n = family.n
    return [s[n - k] - s[n] * (-1) ** k * s[k] for k in range(n + 1)]


def oracle_weil_at(family: IsoparFamily, lam: Fraction) -> tuple[Any, Any]:
    """𝒫 at a number from explicit eigenvalues via Newton identities and via subsets-free product."""
    spec = family_spec(family, as_rational(lam))
    values = spec.eigenvalues()
    l = spec.n // 2
    weights = [
        math.prod(range(2 * l - 2 * p - 1, 0, -2)) * math.prod(range(2 * p - 1, 0, -2)) for p in range(l + 1)
    ]
    newton = symmetric_by_newton(values)
    product = all_symmetric(CurvatureSpec.from_values(values, spec.c))
    by_newton = sum((w * spec.c ** (l - p) * newton[2 * p] for p, w in enumerate(weights)), Fraction(0))
    by_product = sum((w * spec.c ** (l - p) * product[2 * p] for p, w in enumerate(weights)), Fraction(0))
    return _project(by_newton), _project(by_product)


def density_table(family: IsoparFamily, grid: list[Fraction]) -> list[dict]:
    """Rows of λ, exact χ/vol and its float value; singular λ are flagged."""
    symbolic = chi_density(family)
    rows = []
    for x in grid:
        x = as_rational(x)
        try:
            family_spec(family, x)
            value = symbolic.coeff(x) if isinstance(symbolic.coeff, RatFunc) else symbolic.coeff
            pg = PiGraded(value, symbolic.half_exp)
            rows.append({"lambda": str(x), "density": str(pg), "density_float": float(pg), "excluded": False})
        except (ExcludedParameter, CoincidentCurvatures, ZeroDenominator):
            rows.append({"lambda": str(x), "density": "", "density_float": float("nan"), "excluded": True})
    return rows


def numeric_ladder(g: int, eps: float) -> list[float]:
    """cot(ε + (i-1)π/g) straight from the trigonometric definition."""
    if g not in (2, 3, 4, 6):
        raise UnsupportedG(f"no cot ladder for g = {g}")
    return [1.0 / math.tan(eps + i * math.pi / g) for i in range(g)]


def ladder_at_float(g: int, x: float) -> list[float]:
    """The exact ladder evaluated at a float λ."""
    out = []
    for v in exact_ladder(g):
        if isinstance(v, QuadExt):
            a = v.a(x) if isinstance(v.a, RatFunc) else float(v.a)
            b = v.b(x) if isinstance(v.b, RatFunc) else float(v.b)
            out.append(float(a) + float(b) * math.sqrt(3))
        else:
            out.append(float(v(x)))
    return out


def weil_is_even(family: IsoparFamily) -> bool:
    """Whether the computed 𝒫 is a rational function of λ² alone."""
    weil = family_weil(family)
    if not isinstance(weil, RatFunc):
        return True
    return weil.num.is_even() and weil.den.is_even()
