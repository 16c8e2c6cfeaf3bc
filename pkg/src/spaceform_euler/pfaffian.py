"""Pfaffians over commutative rings and the Gauss–Codazzi curvature matrix.

Two engines:

* :func:`pfaffian_laplace` -- signed expansion along a row, memoised on the
  bitmask of surviving indices.  Works over any commutative ring, including
  :class:`EvenForm`.
* :func:`matching_sum` -- unsigned sum over perfect matchings.  On the
  curvature matrix Ω_ij = a_ij e^{ij} the Pfaffian sign of each matching is
  cancelled by the sign of reordering the wedge product into e^{1..n}, so the
  vol-coefficient of Pf(Ω) is exactly this unsigned sum.

:func:`even_form_oracle` multiplies the 2-forms out literally and is the
witness for that sign argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Sequence

from .errors import DimensionTooLarge, DomainError, OddDimension
from .symcurv import CurvatureSpec

__all__ = [
    "SkewMatrix",
    "CurvatureMatrix",
    "EvenForm",
    "pfaffian_laplace",
    "matching_sum",
    "curvature_pfaffian",
    "determinant",
    "pfaffian_det_check",
    "even_form_oracle",
    "FORM_ORACLE_MAX_N",
]

FORM_ORACLE_MAX_N = 8


@dataclass(frozen=True)
class SkewMatrix:
    """Skew-symmetric matrix stored by its strictly upper triangle (row-wise)."""

    n: int
    upper: tuple

    def __post_init__(self):
        if len(self.upper) != self.n * (self.n - 1) // 2:
            raise DomainError(f"{self.n}x{self.n} skew matrix needs {self.n * (self.n - 1) // 2} entries")
        object.__setattr__(self, "upper", tuple(self.upper))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], Any]) -> "SkewMatrix":
        return cls(n, tuple(fn(i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "SkewMatrix":
        n = len(rows)
        for i in range(n):
            if rows[i][i] != 0:
                raise DomainError("diagonal of a skew matrix must vanish")
            for j in range(i + 1, n):
                if rows[j][i] != -rows[i][j]:
                    raise DomainError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        return cls.from_function(n, lambda i, j: rows[i][j])

    def _index(self, i: int, j: int) -> int:
        return i * self.n - i * (i + 1) // 2 + (j - i - 1)

    def entry(self, i: int, j: int) -> Any:
        if i == j:
            return 0
        if i < j:
            return self.upper[self._index(i, j)]
        return -self.upper[self._index(j, i)]

    def rows(self) -> list[list[Any]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]


@dataclass(frozen=True)
class CurvatureMatrix:
    """Coefficients a_ij = c + λ_i λ_j of the Gauss–Codazzi matrix Ω(c; λ)."""

    c: Any
    eigenvalues: tuple

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(self.eigenvalues))

    @classmethod
    def from_spec(cls, spec: CurvatureSpec) -> "CurvatureMatrix":
        return cls(spec.c, tuple(spec.eigenvalues()))

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def coefficient(self, i: int, j: int) -> Any:
        return self.c + self.eigenvalues[i] * self.eigenvalues[j]

    def scalar_matrix(self) -> SkewMatrix:
        """The skew matrix of scalar coefficients (signs of the 2-forms dropped)."""
        return SkewMatrix.from_function(self.n, self.coefficient)

    def form_matrix(self) -> SkewMatrix:
        """Ω_ij = a_ij e^{ij} as a skew matrix over the even exterior algebra."""
        return SkewMatrix.from_function(
            self.n, lambda i, j: EvenForm({(1 << i) | (1 << j): self.coefficient(i, j)})
        )


class EvenForm:
    """Element of the even exterior algebra: {basis bitmask: coefficient}.

    Even-degree forms commute, so this is a commutative ring and the
    Laplace engine runs over it unchanged.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for mask, coeff in (terms or {}).items():
            if bin(mask).count("1") % 2:
                raise DomainError("EvenForm only holds even-degree terms")
            if coeff != 0:
                clean[mask] = coeff
        self.terms = clean

    @staticmethod
    def _coerce(other: Any) -> "EvenForm":
        if isinstance(other, EvenForm):
            return other
        return EvenForm({0: other})

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for mask, coeff in o.terms.items():
            out[mask] = out.get(mask, 0) + coeff
        return EvenForm(out)

    __radd__ = __add__

    def __neg__(self):
        return EvenForm({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                if ma & mb:
                    continue
                term = ca * cb
                if _wedge_sign(ma, mb) < 0:
                    term = -term
                out[ma | mb] = out.get(ma | mb, 0) + term
        return EvenForm(out)

    __rmul__ = __mul__

    def coefficient(self, mask: int) -> Any:
        return self.terms.get(mask, 0)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.terms == o.terms

    def __repr__(self):
        return f"EvenForm({self.terms!r})"


@lru_cache(maxsize=None)
def _wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ∧ e^B relative to the increasing ordering of A ∪ B."""
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # elements of A greater than this element of B must jump over it
        inversions += bin(a & ~((low << 1) - 1)).count("1")
        bb ^= low
    return -1 if inversions % 2 else 1


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _check_even(n: int) -> None:
    if n % 2:
        raise OddDimension(f"Pfaffian needs an even dimension, got {n}")


def pfaffian_laplace(X: SkewMatrix, row: int = 0) -> Any:
    """Pf(X) by expansion along ``row`` (0-based), then along the first remaining row.

    Pf of the empty matrix is 1.
    """
    _check_even(X.n)
    if X.n == 0:
        return 1
    memo: dict[int, Any] = {0: 1}

    def pf(mask: int) -> Any:
        if mask in memo:
            return memo[mask]
        idx = _bits(mask)
        i = idx[0]
        total: Any = 0
        for k, j in enumerate(idx[1:]):
            term = X.entry(i, j) * pf(mask & ~(1 << i) & ~(1 << j))
            total = total + term if k % 2 == 0 else total - term
        memo[mask] = total
        return total

    full = (1 << X.n) - 1
    if row == 0:
        return pf(full)
    if not 0 <= row < X.n:
        raise DomainError(f"row {row} out of range")
    total: Any = 0
    for j in range(X.n):
        if j == row:
            continue
        # 1-based sign (-1)^(r + j + 1 + [r > j])
        parity = (row + j + 1 + (1 if row > j else 0)) % 2
        term = X.entry(row, j) * pf(full & ~(1 << row) & ~(1 << j))
        total = total - term if parity else total + term
    return total


def matching_sum(n: int, weight: Callable[[int, int], Any]) -> Any:
    """Σ over perfect matchings of {0..n-1} of ∏ weight(i, j), all signs +."""
    _check_even(n)
    memo: dict[int, Any] = {0: 1}

    def go(mask: int) -> Any:
        if mask in memo:
            return memo[mask]
        idx = _bits(mask)
        i = idx[0]
        total: Any = 0
        for j in idx[1:]:
            total = total + weight(i, j) * go(mask & ~(1 << i) & ~(1 << j))
        memo[mask] = total
        return total

    return go((1 << n) - 1)


def curvature_pfaffian(M: CurvatureMatrix) -> Any:
    """Coefficient of vol in Pf(Ω(c; λ)); equals the Weil invariant 𝒫."""
    return matching_sum(M.n, M.coefficient)


def even_form_oracle(M: CurvatureMatrix) -> Any:
    """Literal exterior-algebra evaluation of the Laplace rule on Ω; returns the e^{1..n} coefficient."""
    n = M.n
    _check_even(n)
    if n > FORM_ORACLE_MAX_N:
        raise DimensionTooLarge(f"form oracle is limited to n ≤ {FORM_ORACLE_MAX_N}")

    def omega(i: int, j: int) -> EvenForm:
        return EvenForm({(1 << i) | (1 << j): M.coefficient(i, j)})

    def pf(indices: list[int]) -> EvenForm:
        if not indices:
            return EvenForm({0: 1})
        first, rest = indices[0], indices[1:]
        total = EvenForm()
        for k, j in enumerate(rest):
            sub = pf(rest[:k] + rest[k + 1 :])
            term = omega(first, j) * sub
            total = total + term if k % 2 == 0 else total - term
        return total

    return pf(list(range(n))).coefficient((1 << n) - 1)


def determinant(rows: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free (Bareiss) elimination; exact over integral domains."""
    a = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = 0
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def pfaffian_det_check(X: SkewMatrix) -> Any:
    """Pf(X)^2 - det(X); exactly zero."""
    pf = pfaffian_laplace(X)
    return pf * pf - determinant(X.rows())
