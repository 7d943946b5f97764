"""Exact Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["ExactScalar", "as_scalar", "parse_rational", "format_rational"]

Number = Union[int, Fraction, "ExactScalar"]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; floats and zero denominators are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be given as a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class ExactScalar:
    """Complex number ``re + i*im`` with exact rational parts.

    Instances are immutable and hashable. Plain ints and Fractions are
    accepted wherever a scalar is expected.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating point input is not exact")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def parse(cls, re: str, im: str = "0") -> ExactScalar:
        return cls(parse_rational(re), parse_rational(im))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return self * o.conjugate() * ExactScalar(1 / n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ExactScalar(1) / self) ** (-k)
        result, base = ExactScalar(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"ExactScalar({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{_imag_str(self.im)}"
        sign = "-" if self.im < 0 else "+"
        return f"({format_rational(self.re)} {sign} {_imag_str(abs(self.im))})"

    def to_record(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{format_rational(x)}i"


def _coerce(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return ExactScalar(x)
    if isinstance(x, bool):
        return ExactScalar(int(x))
    return NotImplemented


def as_scalar(x: Number) -> ExactScalar:
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")
    return o


ExactScalar.I = ExactScalar(0, 1)
ExactScalar.ZERO = ExactScalar(0)
ExactScalar.ONE = ExactScalar(1)
