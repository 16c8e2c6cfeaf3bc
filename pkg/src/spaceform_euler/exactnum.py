"""Exact scalar tower.

``Rational`` is :class:`fractions.Fraction`.  On top of it sit dense univariate
polynomials in an indeterminate written ``λ``, canonical rational functions,
the quadratic extension ``a + b√d`` over any of those rings, and scalars
carrying an integer power of ``π^(1/2)``.

All values are immutable and hashable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _AbstractRational
from typing import Any, Iterable

from .errors import (
    DomainError,
    ExtensionResidue,
    NotInvertible,
    PiExponentMismatch,
    ZeroDenominator,
)

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "UniPoly",
    "RatFunc",
    "QuadExt",
    "PiGraded",
    "LAMBDA",
    "ratfunc_normalize",
    "quadext_inverse",
    "pi_graded_mul",
    "gamma_half",
    "sphere_volume",
    "is_rational_square",
    "to_json",
    "from_json",
    "to_float",
]


def as_rational(x: Any) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"7/10"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, _AbstractRational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def is_rational_square(q: Fraction) -> bool:
    q = as_rational(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# polynomials


class UniPoly:
    """Dense polynomial with rational coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: Any = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @staticmethod
    def _coerce(other: Any) -> "UniPoly | None":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result, base = UniPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv_lead = 1 / o.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            q = rem[k + dq] * inv_lead
            quot[k] = q
            if q:
                for j, c in enumerate(o.coeffs):
                    rem[k + j] -= q * c
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: Any) -> Any:
        result: Any = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly([c / self.lead for c in self.coeffs])

    def primitive(self) -> tuple[Fraction, "UniPoly"]:
        """Split into ``content * prim`` with ``prim`` integral, content-free, lead > 0."""
        if self.is_zero():
            return Fraction(0), self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        num = math.gcd(*(c.numerator for c in self.coeffs))
        content = Fraction(num, den)
        if self.lead < 0:
            content = -content
        return content, UniPoly([c / content for c in self.coeffs])

    @staticmethod
    def gcd(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        """Monic gcd (zero only if both inputs are zero)."""
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.lead)
        return hash(("UniPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[_fmt_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _fmt_rational(mag)
            else:
                mono = "λ" if k == 1 else f"λ^{k}"
                body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# --------------------------------------------------------------------------
# rational functions


def ratfunc_normalize(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Cancel the gcd and scale so ``den`` is integral, content-free, lead > 0."""
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return UniPoly(), UniPoly([1])
    g = UniPoly.gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    content, den = den.primitive()
    if content != 1:
        num = num * (1 / content)
    return num, den


class RatFunc:
    """Quotient of two coprime polynomials in ``λ`` in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Any = 0, den: Any = 1, *, _canonical: bool = False):
        n = UniPoly._coerce(num)
        d = UniPoly._coerce(den)
        if n is None or d is None:
            raise TypeError("RatFunc needs polynomial or rational parts")
        if not _canonical:
            n, d = ratfunc_normalize(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _coerce(other: Any) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        p = UniPoly._coerce(other)
        if p is None:
            return None
        return RatFunc(p, UniPoly([1]), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return self.num.lead / self.den.lead

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc()
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, _canonical=True)

    def __call__(self, x: Any) -> Any:
        """Evaluate the reduced form; removable singularities evaluate to their limit."""
        d = self.den(x)
        if d == 0:
            raise ZeroDenominator(f"{self} has a pole at {x}")
        return self.num(x) / d if not isinstance(d, int) else Fraction(self.num(x)) / d

    def has_pole_at(self, x: Any) -> bool:
        return self.den(x) == 0

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree == 0 and self.num.degree <= 0:
            return hash(self.num.lead / self.den.lead)
        return hash(("RatFunc", self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


LAMBDA = RatFunc(UniPoly([0, 1]))


# --------------------------------------------------------------------------
# quadratic extension


class QuadExt:
    """``a + b√d`` with ``a, b`` in a base field (Fraction or RatFunc).

    ``d`` is a rational non-square; 3 unless stated otherwise.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Any = 0, b: Any = 0, d: Any = 3):
        d = as_rational(d)
        if is_rational_square(d):
            raise DomainError(f"radicand {d} is a rational square")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other: Any) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise DomainError(f"mixing radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction, RatFunc, UniPoly)) and not isinstance(other, bool):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.b == 0:
            return QuadExt(self.a * o.a, self.b * o.a, self.d)
        if self.b == 0:
            return QuadExt(self.a * o.a, self.a * o.b, self.d)
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> Any:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> "QuadExt":
        nrm = self.norm()
        if nrm == 0:
            raise NotInvertible(f"{self} has zero norm")
        if self.b == 0:
            return QuadExt(1 / self.a if not isinstance(self.a, int) else Fraction(1, self.a), 0, self.d)
        return QuadExt(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadExt(1, 0, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: Any) -> "QuadExt":
        """Evaluate rational-function components at ``x``."""
        return QuadExt(_evaluate(self.a, x), _evaluate(self.b, x), self.d)

    def project(self) -> Any:
        """Return ``a`` when the √d part vanishes."""
        if self.b != 0:
            raise ExtensionResidue(f"{self} is not in the base field")
        return self.a

    def __float__(self):
        return to_float(self.a) + to_float(self.b) * math.sqrt(self.d)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, RatFunc, UniPoly)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash(("QuadExt", self.a, self.b, self.d))

    def __bool__(self):
        return not (self.a == 0 and self.b == 0)

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, d={_fmt_rational(self.d)})"

    def __str__(self):
        root = f"√{_fmt_rational(self.d)}"
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"({self.b})*{root}"
        return f"({self.a}) + ({self.b})*{root}"


def quadext_inverse(x: QuadExt) -> QuadExt:
    return x.inverse()


def _evaluate(v: Any, x: Any) -> Any:
    if isinstance(v, (RatFunc, UniPoly, QuadExt)):
        return v(x)
    return v


# --------------------------------------------------------------------------
# pi-graded scalars


class PiGraded:
    """``coeff * π**(half_exp / 2)``; the zero value has ``half_exp == 0``."""

    __slots__ = ("coeff", "half_exp")

    def __init__(self, coeff: Any, half_exp: int = 0):
        if isinstance(coeff, PiGraded):
            raise TypeError("nested PiGraded")
        if coeff == 0:
            half_exp = 0
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "half_exp", int(half_exp))

    def __setattr__(self, name, value):
        raise AttributeError("PiGraded is immutable")

    @classmethod
    def pi(cls, power: int = 1, coeff: Any = 1) -> "PiGraded":
        """``coeff * π**power`` for an integer power."""
        return cls(coeff, 2 * power)

    @property
    def pi_exp(self) -> Fraction:
        return Fraction(self.half_exp, 2)

    def is_zero(self) -> bool:
        return self.coeff == 0

    @staticmethod
    def _coerce(other: Any) -> "PiGraded | None":
        if isinstance(other, PiGraded):
            return other
        if isinstance(other, (int, Fraction, RatFunc, QuadExt, UniPoly)) and not isinstance(other, bool):
            return PiGraded(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.half_exp != o.half_exp:
            raise PiExponentMismatch(
                f"cannot add π^{self.pi_exp} and π^{o.pi_exp} terms"
            )
        return PiGraded(self.coeff + o.coeff, self.half_exp)

    __radd__ = __add__

    def __neg__(self):
        return PiGraded(-self.coeff, self.half_exp)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PiGraded(self.coeff * o.coeff, self.half_exp + o.half_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDenominator("division by a zero PiGraded")
        return PiGraded(_div(self.coeff, o.coeff), self.half_exp - o.half_exp)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return PiGraded(1) / (self ** (-k))
        return PiGraded(self.coeff**k, self.half_exp * k)

    def map_coeff(self, fn) -> "PiGraded":
        return PiGraded(fn(self.coeff), self.half_exp)

    def __float__(self):
        return to_float(self.coeff) * math.pi ** (self.half_exp / 2)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() and o.is_zero():
            return True
        return self.half_exp == o.half_exp and self.coeff == o.coeff

    def __hash__(self):
        if self.half_exp == 0:
            return hash(self.coeff)
        return hash(("PiGraded", self.coeff, self.half_exp))

    def __repr__(self):
        return f"PiGraded({self.coeff!r}, half_exp={self.half_exp})"

    def __str__(self):
        if self.half_exp == 0:
            return str(self.coeff)
        e = self.pi_exp
        power = "π" if e == 1 else f"π^{_fmt_rational(e)}"
        if e.denominator == 1 and e < 0:
            power = f"π^({_fmt_rational(e)})"
        return f"{self.coeff}*{power}" if self.coeff != 1 else power


def _div(a: Any, b: Any) -> Any:
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def pi_graded_mul(x: PiGraded, y: PiGraded) -> PiGraded:
    return x * y


def gamma_half(twice_x: int) -> PiGraded:
    """Γ(twice_x / 2) for a positive half-integer or integer argument."""
    if twice_x <= 0:
        raise DomainError("Γ is only tabulated for positive arguments")
    if twice_x % 2 == 0:
        return PiGraded(Fraction(math.factorial(twice_x // 2 - 1)))
    value = PiGraded(Fraction(1), 1)  # Γ(1/2) = √π
    for k in range(1, twice_x, 2):  # Γ(x + 1) = x Γ(x) with x = k/2
        value = value * Fraction(k, 2)
    return value


def sphere_volume(m: int) -> PiGraded:
    """Volume ω_m of the unit m-sphere, ``2 π^((m+1)/2) / Γ((m+1)/2)``."""
    if m < 1:
        raise DomainError(f"sphere dimension must be ≥ 1, got {m}")
    return PiGraded(Fraction(2), m + 1) / gamma_half(m + 1)


# --------------------------------------------------------------------------
# conversion helpers


def to_float(x: Any) -> float:
    if isinstance(x, (RatFunc, UniPoly)):
        if isinstance(x, RatFunc) and x.is_constant():
            return float(x.constant())
        if isinstance(x, UniPoly) and x.degree <= 0:
            return float(x.lead)
        raise TypeError(f"{x} is not a constant")
    return float(x)


def _rational_json(q: Fraction) -> dict:
    q = as_rational(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def to_json(x: Any) -> Any:
    """Encode an exact scalar as plain JSON-compatible data."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return _rational_json(x)
    if isinstance(x, UniPoly):
        return [_rational_json(c) for c in x.coeffs]
    if isinstance(x, RatFunc):
        return {
            "ratfunc": {
                "num": [_rational_json(c) for c in x.num.coeffs],
                "den": [_rational_json(c) for c in x.den.coeffs],
            }
        }
    if isinstance(x, QuadExt):
        return {"a": to_json(x.a), "b": to_json(x.b), "d": int(x.d) if x.d.denominator == 1 else _rational_json(x.d)}
    if isinstance(x, PiGraded):
        return {"coeff": to_json(x.coeff), "pi_half_exp": x.half_exp}
    if isinstance(x, float):
        return x
    raise TypeError(f"no JSON encoding for {type(x).__name__}")


def from_json(obj: Any) -> Any:
    """Inverse of :func:`to_json`."""
    if isinstance(obj, list):
        return UniPoly(from_json(c) for c in obj)
    if isinstance(obj, dict):
        if "num" in obj and "den" in obj and not isinstance(obj["num"], list):
            return Fraction(int(obj["num"]), int(obj["den"]))
        if "ratfunc" in obj:
            rf = obj["ratfunc"]
            return RatFunc(from_json(rf["num"]), from_json(rf["den"]))
        if "pi_half_exp" in obj:
            return PiGraded(from_json(obj["coeff"]), int(obj["pi_half_exp"]))
        if {"a", "b", "d"} <= obj.keys():
            d = obj["d"]
            d = from_json(d) if isinstance(d, dict) else Fraction(d)
            return QuadExt(from_json(obj["a"]), from_json(obj["b"]), d)
    if isinstance(obj, (int, float)):
        return obj
    raise ValueError(f"unrecognised exact-scalar encoding: {obj!r}")
