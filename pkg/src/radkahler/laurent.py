"""Exact Laurent polynomials in one variable over the rationals.

A polynomial is a finite map ``exponent -> coefficient`` with integer
exponents of either sign and nonzero :class:`~fractions.Fraction`
coefficients.  The zero polynomial is the empty map.  All arithmetic is
exact; floats are rejected at the boundary so precision can never leak in
silently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import EvalAtPoleError, ZeroPolynomialError

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction, refusing floats."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def fraction_str(value: Fraction) -> str:
    """Render a Fraction as ``p/q``, or plain ``p`` for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class LaurentPoly:
    """Immutable Laurent polynomial ``sum(c_h * y**h)`` with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, RationalLike], Iterable[tuple[int, RationalLike]]] = ()):
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coeff in items:
            if not isinstance(exponent, int):
                raise TypeError(f"exponent must be int, got {exponent!r}")
            c = acc.get(exponent, Fraction(0)) + as_fraction(coeff)
            if c:
                acc[exponent] = c
            else:
                acc.pop(exponent, None)
        object.__setattr__(self, "_terms", acc)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("LaurentPoly is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def y(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff: RationalLike = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, coeff: RationalLike) -> "LaurentPoly":
        return cls({0: coeff})

    # -- structure ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return max(self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no valuation")
        return min(self._terms)

    @property
    def leading_coefficient(self) -> Fraction:
        return self._terms[self.degree]

    @property
    def trailing_coefficient(self) -> Fraction:
        return self._terms[self.valuation]

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        """Iterate ``(exponent, coefficient)`` pairs in increasing exponent order."""
        for exponent in sorted(self._terms):
            yield exponent, self._terms[exponent]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: Union["LaurentPoly", RationalLike]) -> "LaurentPoly":
        other = _coerce_poly(other)
        acc = dict(self._terms)
        for exponent, coeff in other._terms.items():
            c = acc.get(exponent, Fraction(0)) + coeff
            if c:
                acc[exponent] = c
            else:
                acc.pop(exponent, None)
        return _wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", RationalLike]) -> "LaurentPoly":
        return self + (-_coerce_poly(other))

    def __rsub__(self, other: RationalLike) -> "LaurentPoly":
        return _coerce_poly(other) - self

    def __mul__(self, other: Union["LaurentPoly", RationalLike]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            scalar = as_fraction(other)
            if not scalar:
                return LaurentPoly.zero()
            return _wrap({e: c * scalar for e, c in self._terms.items()})
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                c = acc.get(e, Fraction(0)) + c1 * c2
                if c:
                    acc[e] = c
                else:
                    acc.pop(e, None)
        return _wrap(acc)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike) -> "LaurentPoly":
        s = as_fraction(scalar)
        if not s:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / s)

    def __pow__(self, power: int) -> "LaurentPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = LaurentPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shifted(self, offset: int) -> "LaurentPoly":
        """Multiply by ``y**offset`` (shift every exponent)."""
        if offset == 0:
            return self
        return _wrap({e + offset: c for e, c in self._terms.items()})

    def derivative(self) -> "LaurentPoly":
        """Termwise derivative d/dy; the constant term is dropped."""
        return _wrap({e - 1: c * e for e, c in self._terms.items() if e != 0})

    # -- evaluation -------------------------------------------------------------

    def __call__(self, y0: RationalLike) -> Fraction:
        """Exact evaluation at a rational point."""
        y0 = as_fraction(y0)
        if y0 == 0:
            if not self._terms:
                return Fraction(0)
            if self.valuation < 0:
                raise EvalAtPoleError("evaluation at y = 0 with negative valuation")
            return self._terms.get(0, Fraction(0))
        total = Fraction(0)
        for exponent, coeff in self._terms.items():
            total += coeff * y0**exponent
        return total

    def eval_float(self, y0: float) -> float:
        """Floating-point evaluation for plotting and ODE cross-checks."""
        total = 0.0
        for exponent, coeff in self._terms.items():
            total += float(coeff) * y0**exponent
        return total

    # -- comparison / hashing ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    # -- rendering / serialization -------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exponent, coeff in sorted(self._terms.items(), reverse=True):
            mag = fraction_str(abs(coeff))
            if exponent == 0:
                body = mag
            else:
                power = "y" if exponent == 1 else f"y^{exponent}"
                body = power if abs(coeff) == 1 else f"{mag}*{power}"
            parts.append(("- " if coeff < 0 else "+ ") + body)
        head = parts[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self) -> str:
        return f"LaurentPoly({self!s})"

    def to_json_dict(self) -> dict[str, str]:
        """Serialize as ``{"exponent": "p/q", ...}`` with string keys."""
        return {str(e): fraction_str(c) for e, c in self.terms()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): Fraction(c) for e, c in data.items()})


def _wrap(terms: dict[int, Fraction]) -> LaurentPoly:
    poly = LaurentPoly.__new__(LaurentPoly)
    object.__setattr__(poly, "_terms", terms)
    return poly


def _coerce_poly(value: Union[LaurentPoly, RationalLike]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


def normalize(raw: Iterable[tuple[int, RationalLike]]) -> LaurentPoly:
    """Build a polynomial from (exponent, coefficient) pairs.

    Duplicate exponents are summed and zero coefficients dropped, so the
    result is always in canonical form.
    """
    return LaurentPoly(raw)
