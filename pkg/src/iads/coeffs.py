"""Exact Gaussian-rational coefficients.

Coefficients throughout the package are elements of Q(i), stored as a pair of
:class:`fractions.Fraction` objects.  Plain ``int`` and ``Fraction`` operands are
accepted everywhere and promoted on the fly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Gaussian", "as_gaussian", "ZERO", "ONE"]


class Gaussian:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return Gaussian(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * other.conjugate() * Gaussian(1 / n)

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __abs__(self):
        if self.im == 0:
            return abs(self.re)
        return float(self.abs2()) ** 0.5

    # comparisons / hashing --------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    @classmethod
    def parse(cls, text: str) -> "Gaussian":
        """Parse ``3``, ``-1/2``, ``2i``, ``1/2+3/4i``, ``i``."""
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)?(?:([+-])(\d+(?:/\d+)?)?i)?", s)
        if m and (m.group(1) or m.group(2)):
            re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
            im_part = Fraction(0)
            if m.group(2):
                im_part = Fraction(m.group(3) or 1) * (-1 if m.group(2) == "-" else 1)
            return cls(re_part, im_part)
        m = re.fullmatch(r"([+-]?)(\d+(?:/\d+)?)?i", s)
        if m:
            v = Fraction(m.group(2) or 1)
            return cls(0, -v if m.group(1) == "-" else v)
        raise ValueError(f"cannot parse coefficient {text!r}")


def as_gaussian(x):
    if isinstance(x, Gaussian):
        return x
    if isinstance(x, (int, Rational)):
        return Gaussian(x)
    if isinstance(x, complex):
        return Gaussian(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


ZERO = Gaussian(0)
ONE = Gaussian(1)
