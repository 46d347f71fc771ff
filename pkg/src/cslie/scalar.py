"""Gaussian rationals: the exact scalar field Q(i).

Every coefficient in the package (structure constants, form entries,
matrix entries) is a :class:`GaussianRational`.  Real quantities simply
carry a zero imaginary part.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "gq", "gq_ops", "ZERO", "ONE", "I"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


class GaussianRational:
    """An element re + im*i of Q(i) with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # construction -----------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating point complex numbers are not exact")
        return cls(x, 0)

    # predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """|z|^2 as a rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                if not other:
                    raise ZeroDivisionError("division by zero in Q(i)")
                return GaussianRational(self.re / other, self.im / other)
            return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # text -------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"gq({format_scalar(self)!r})"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def _fmt_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical text: "a/b", "a/b+c/d i", "c/d i", with "i" for the unit."""
    re_, im_ = z.re, z.im
    if not im_:
        return _fmt_frac(re_)
    if im_ == 1:
        imag = "i"
    elif im_ == -1:
        imag = "-i"
    else:
        imag = _fmt_frac(im_) + " i"
    if not re_:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_fmt_frac(re_)}{sign}{imag}"


_NUM = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"([+-]?)(?:({_NUM})\*?)?(i)?"
)


def parse_scalar(text: str) -> GaussianRational:
    """Parse the scalar text format.  Whitespace is ignored."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty scalar")
    re_ = Fraction(0)
    im_ = Fraction(0)
    pos = 0
    seen = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        sign, num, unit = m.groups()
        if num is None and unit is None:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        if seen and not sign:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if unit:
            im_ += value
        else:
            re_ += value
        seen += 1
        pos = m.end()
    return GaussianRational(re_, im_)


def gq(x=0, im=0) -> GaussianRational:
    """Build a Gaussian rational from ints, Fractions, or scalar text."""
    if isinstance(x, str) and not im:
        return parse_scalar(x)
    if isinstance(x, GaussianRational) and not im:
        return x
    return GaussianRational(x, im)


def gq_ops(a, b, op: str) -> GaussianRational:
    """Field operation ``op`` in {add, sub, mul, div} on two scalars."""
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
