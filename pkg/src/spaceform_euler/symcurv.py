"""Symmetric functions of principal curvatures.

Every routine here is generic over the scalar ring: Fraction, RatFunc,
QuadExt (over either), or float for numeric cross-checks.  Integers are
accepted wherever a ring element is expected.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import CurvatureZero, DomainError, EvenDimension, OddDimension
from .exactnum import PiGraded, sphere_volume

__all__ = [
    "CurvatureSpec",
    "CoefficientSolution",
    "double_factorial",
    "elementary_symmetric",
    "all_symmetric",
    "symmetric_by_newton",
    "symmetric_by_subsets",
    "mean_curvature",
    "weil_coefficients",
    "weil_invariant",
    "weil_invariant_h_form",
    "star_identity_lhs",
    "star_identity_residual",
    "recurrence_rhs",
    "closed_coefficients_even",
    "odd_coefficients",
]


def _is_float(x: Any) -> bool:
    return isinstance(x, float)


@dataclass(frozen=True)
class CurvatureSpec:
    """Ambient curvature ``c`` plus principal curvatures with multiplicities."""

    c: Any
    entries: tuple[tuple[Any, int], ...]
    n: int = field(init=False)

    def __post_init__(self):
        entries = tuple((v, int(m)) for v, m in self.entries)
        if any(m < 1 for _, m in entries):
            raise DomainError("multiplicities must be positive")
        n = sum(m for _, m in entries)
        if n < 1:
            raise DomainError("a hypersurface needs at least one principal curvature")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_values(cls, values: Iterable[Any], c: Any = 0) -> "CurvatureSpec":
        return cls(c, tuple((v, 1) for v in values))

    @classmethod
    def uniform(cls, value: Any, n: int, c: Any = 0) -> "CurvatureSpec":
        return cls(c, ((value, n),))

    def eigenvalues(self) -> list[Any]:
        return [v for v, m in self.entries for _ in range(m)]

    def map(self, fn) -> "CurvatureSpec":
        """Apply ``fn`` to c and every distinct curvature (e.g. evaluation at λ)."""
        return CurvatureSpec(fn(self.c), tuple((fn(v), m) for v, m in self.entries))


@dataclass(frozen=True)
class CoefficientSolution:
    """Coefficients b_0..b_n and right-hand sides c_0..c_n of the recurrence

    ``j b_{j-1} - c (n-j) b_{j+1} = c_j`` (with b_{-1} = b_{n+1} = 0).
    """

    b: tuple
    c_rhs: tuple
    n: int
    curvature: Any


def double_factorial(k: int) -> int:
    if k < -1:
        raise DomainError(f"double factorial undefined for {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def all_symmetric(spec: CurvatureSpec) -> list[Any]:
    """S_0..S_n by expanding ∏ (1 + λ x)^m one factor at a time."""
    s: list[Any] = [1]
    for value, mult in spec.entries:
        factor = [1]
        power: Any = 1
        for k in range(1, mult + 1):
            power = power * value
            factor.append(math.comb(mult, k) * power)
        out: list[Any] = [0] * (len(s) + mult)
        for i, si in enumerate(s):
            for k, fk in enumerate(factor):
                out[i + k] = out[i + k] + si * fk
        s = out
    return s


def elementary_symmetric(spec: CurvatureSpec, i: int) -> Any:
    if i < 0:
        raise DomainError("S_i needs i ≥ 0")
    if i > spec.n:
        return 0
    return all_symmetric(spec)[i]


def symmetric_by_newton(values: Sequence[Any]) -> list[Any]:
    """Independent oracle: S_k from power sums via Newton's identities."""
    n = len(values)
    power_sums = [None]
    current = list(values)
    for _ in range(n):
        total: Any = 0
        for v in current:
            total = total + v
        power_sums.append(total)
        current = [c * v for c, v in zip(current, values)]
    e: list[Any] = [Fraction(1)]
    for k in range(1, n + 1):
        acc: Any = 0
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / k)
    return e


def symmetric_by_subsets(values: Sequence[Any], i: int) -> Any:
    """Brute force: sum of products over all i-subsets."""
    total: Any = 0
    for combo in itertools.combinations(values, i):
        prod: Any = 1
        for v in combo:
            prod = prod * v
        total = total + prod
    return total


def mean_curvature(spec: CurvatureSpec, i: int) -> Any:
    if not 0 <= i <= spec.n:
        raise DomainError(f"H_i needs 0 ≤ i ≤ n = {spec.n}, got {i}")
    s = elementary_symmetric(spec, i)
    return _div_int(s, math.comb(spec.n, i))


def _div_int(x: Any, k: int) -> Any:
    if isinstance(x, int):
        return Fraction(x, k)
    return x / k


def _pow(c: Any, k: int) -> Any:
    out: Any = 1
    for _ in range(k):
        out = out * c
    return out


def weil_coefficients(l: int) -> list[int]:
    """Integer weights (2l-2p-1)!!(2p-1)!! of S_{2p} c^{l-p}, p = 0..l."""
    return [double_factorial(2 * l - 2 * p - 1) * double_factorial(2 * p - 1) for p in range(l + 1)]


def _weil_s_form(spec: CurvatureSpec, s: list[Any]) -> Any:
    l = spec.n // 2
    total: Any = 0
    for p, w in enumerate(weil_coefficients(l)):
        total = total + w * _pow(spec.c, l - p) * s[2 * p]
    return total


def weil_invariant_h_form(spec: CurvatureSpec) -> Any:
    """(2l-1)!! Σ binom(l,p) c^{l-p} H_{2p}."""
    if spec.n % 2:
        raise OddDimension(f"the invariant needs even n, got {spec.n}")
    l = spec.n // 2
    s = all_symmetric(spec)
    total: Any = 0
    for p in range(l + 1):
        h = _div_int(s[2 * p], math.comb(spec.n, 2 * p))
        total = total + math.comb(l, p) * _pow(spec.c, l - p) * h
    return double_factorial(2 * l - 1) * total


def weil_invariant(spec: CurvatureSpec) -> Any:
    """The Allendoerfer–Weil integrand 𝒫 of an even-dimensional hypersurface.

    Both the S-form and the H-form are evaluated; they must agree.
    """
    if spec.n % 2:
        raise OddDimension(f"the invariant needs even n, got {spec.n}")
    s_form = _weil_s_form(spec, all_symmetric(spec))
    h_form = weil_invariant_h_form(spec)
    if _is_float(s_form) or _is_float(h_form):
        if not math.isclose(float(s_form), float(h_form), rel_tol=1e-9, abs_tol=1e-9):
            raise ArithmeticError(f"S-form {s_form} and H-form {h_form} disagree")
    elif s_form != h_form:
        raise ArithmeticError(f"S-form {s_form} and H-form {h_form} disagree")
    return s_form


def star_identity_lhs(values: Sequence[Any], q: int) -> Any:
    n = len(values)
    if n % 2 or n < 4:
        raise DomainError("the identity needs 2l values with l ≥ 2")
    l = n // 2
    if not 1 <= q <= l - 1:
        raise DomainError(f"q must lie in 1..{l - 1}, got {q}")
    first, rest = values[0], list(values[1:])
    total: Any = 0
    for j in range(len(rest)):
        others = rest[:j] + rest[j + 1 :]
        s = all_symmetric(CurvatureSpec.from_values(others)) if others else [1]
        s_top = s[2 * q] if 2 * q < len(s) else 0
        total = total + _div_int(s_top, 2 * l - 2 * q - 1)
        total = total + _div_int(first * rest[j] * s[2 * q - 2], 2 * q - 1)
    return total


def star_identity_residual(values: Sequence[Any], q: int) -> Any:
    """LHS minus S_{2q}(λ_1..λ_{2l}); exactly zero."""
    lhs = star_identity_lhs(values, q)
    return lhs - all_symmetric(CurvatureSpec.from_values(values))[2 * q]


def recurrence_rhs(b: Sequence[Any], c: Any) -> list[Any]:
    """c_j = j b_{j-1} - c (n-j) b_{j+1} for j = 0..n."""
    n = len(b) - 1
    out = []
    for j in range(n + 1):
        below = b[j - 1] if j >= 1 else 0
        above = b[j + 1] if j + 1 <= n else 0
        out.append(j * below - c * (n - j) * above)
    return out


def closed_coefficients_even(n: int, c: Any, b0: Any) -> CoefficientSolution:
    """Kernel of the recurrence for even n and c ≠ 0.

    b_{2p} = (2p-1)!! b_0 / (c^p (n-1)(n-3)...(n-2p+1)), odd entries vanish.
    """
    if n % 2:
        raise OddDimension(f"n must be even, got {n}")
    if c == 0:
        raise CurvatureZero("with c = 0 only b_n survives; no closed form in b_0")
    b: list[Any] = [0] * (n + 1)
    for p in range(n // 2 + 1):
        falling = 1
        for i in range(1, p + 1):
            falling *= n - 2 * i + 1
        b[2 * p] = b0 * Fraction(double_factorial(2 * p - 1), falling) / _pow(c, p)
    rhs = recurrence_rhs(b, c)
    if any(r != 0 for r in rhs):
        raise ArithmeticError(f"closed form leaves residual {rhs}")
    return CoefficientSolution(tuple(b), tuple(rhs), n, c)


def odd_coefficients(n: int, c: Any) -> CoefficientSolution:
    """Odd-n solution with c_j = 0 for j > 0; b entries carry 1/ω_n exactly."""
    if n % 2 == 0:
        raise EvenDimension(f"n must be odd, got {n}")
    if c == 0:
        raise CurvatureZero("the odd-dimensional solution needs c ≠ 0")
    omega = sphere_volume(n)
    denom = double_factorial(n - 1)
    b: list[Any] = [PiGraded(0)] * (n + 1)
    for j in range((n - 1) // 2 + 1):
        coeff = Fraction(double_factorial(n - 2 * j - 2) * double_factorial(2 * j), denom)
        b[2 * j + 1] = -PiGraded(coeff * _pow(c, (n - 2 * j - 1) // 2)) / omega
    c0 = PiGraded(Fraction(double_factorial(n), denom) * _pow(c, (n + 1) // 2)) / omega
    rhs = recurrence_rhs(b, c)
    if rhs[0] != c0 or any(r != 0 for r in rhs[1:]):
        raise ArithmeticError(f"odd solution leaves residual {rhs}")
    if c0 * sphere_volume(n + 1) != 2 * _pow(c, (n + 1) // 2):
        raise ArithmeticError("c_0 ω_{n+1} ≠ 2 c^{(n+1)/2}")
    return CoefficientSolution(tuple(b), tuple(rhs), n, c)
