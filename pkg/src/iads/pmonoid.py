"""The free abelian monoid P on countably many generators ``g0, g1, ...``.

Elements are finitely supported exponent vectors.  The divisibility order makes
P a lattice: ``lcm`` is the componentwise maximum, ``gcd`` the componentwise
minimum.

>>> a = PElement.parse("g0^2*g1")
>>> b = PElement.parse("g0*g1^3")
>>> str(a.lcm(b)), str(a.gcd(b))
('g0^2*g1^3', 'g0*g1')
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import DomainError

__all__ = ["PElement", "UNIT", "p_mul", "p_lcm", "p_gcd", "p_divides", "p_quotient",
           "relatively_prime"]


class PElement:
    """Immutable exponent vector; generator ids are small naturals."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        norm = {}
        for gen, e in items:
            gen, e = int(gen), int(e)
            if gen < 0 or e < 0:
                raise DomainError(f"negative generator id or exponent: g{gen}^{e}")
            if e:
                norm[gen] = norm.get(gen, 0) + e
        self._items = tuple(sorted(norm.items()))
        self._hash = hash(self._items)

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "PElement":
        return cls({i: e})

    # mapping-like access ----------------------------------------------------

    def __getitem__(self, gen: int) -> int:
        for g, e in self._items:
            if g == gen:
                return e
        return 0

    def items(self):
        return self._items

    def support(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self._items)

    def as_dict(self) -> dict[int, int]:
        return dict(self._items)

    def is_unit(self) -> bool:
        return not self._items

    def degree(self) -> int:
        return sum(e for _, e in self._items)

    # lattice operations -----------------------------------------------------

    def __mul__(self, other: "PElement") -> "PElement":
        d = dict(self._items)
        for g, e in other._items:
            d[g] = d.get(g, 0) + e
        return PElement(d)

    def __pow__(self, n: int) -> "PElement":
        if n < 0:
            raise DomainError("negative power in P")
        return PElement({g: e * n for g, e in self._items})

    def lcm(self, other: "PElement") -> "PElement":
        d = dict(self._items)
        for g, e in other._items:
            d[g] = max(d.get(g, 0), e)
        return PElement(d)

    def gcd(self, other: "PElement") -> "PElement":
        o = dict(other._items)
        return PElement({g: min(e, o[g]) for g, e in self._items if g in o})

    def divides(self, other: "PElement") -> bool:
        """True iff ``other`` lies in ``self * P``."""
        return all(other[g] >= e for g, e in self._items)

    def quotient(self, other: "PElement") -> "PElement":
        """The element ``r`` with ``self * r == other``; requires ``self | other``."""
        if not self.divides(other):
            raise DomainError(f"{self} does not divide {other}")
        d = dict(other._items)
        for g, e in self._items:
            d[g] -= e
        return PElement(d)

    # comparisons, text ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PElement):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.degree(), self._items)

    def __lt__(self, other: "PElement"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"PElement({dict(self._items)!r})"

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in self._items)

    _TOKEN = re.compile(r"g(\d+)(?:\^(\d+))?")

    @classmethod
    def parse(cls, text: str) -> "PElement":
        """Parse ``g0^2*g1``; ``1`` (or the empty string) is the unit."""
        s = text.replace(" ", "")
        if s in ("", "1"):
            return UNIT
        d: dict[int, int] = {}
        for factor in s.split("*"):
            m = cls._TOKEN.fullmatch(factor)
            if not m:
                raise DomainError(f"cannot parse monoid element {text!r}")
            g, e = int(m.group(1)), int(m.group(2) or 1)
            d[g] = d.get(g, 0) + e
        return cls(d)


UNIT = PElement()


def p_mul(a: PElement, b: PElement) -> PElement:
    return a * b


def p_lcm(a: PElement, b: PElement) -> PElement:
    return a.lcm(b)


def p_gcd(a: PElement, b: PElement) -> PElement:
    return a.gcd(b)


def p_divides(a: PElement, b: PElement) -> bool:
    return a.divides(b)


def p_quotient(a: PElement, b: PElement) -> PElement:
    return a.quotient(b)


def relatively_prime(a: PElement, b: PElement) -> bool:
    return a.gcd(b).is_unit()
