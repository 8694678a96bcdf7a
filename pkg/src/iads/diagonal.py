"""The commutative algebra spanned by the range projections ``e_{g,p}``.

Elements are finite formal sums ``sum_i c_i e_{g_i,p_i}`` keyed by canonical
cosets.  Products use the coset intersection formula; the norm is computed
from the Boolean atoms ``Q_{F,A} = prod_A e_i prod_{F \\ A} (1 - e_j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .coeffs import Gaussian, as_gaussian
from .cosetlat import (Coset, coset_contains, coset_intersect, constellation_nonempty,
                       make_coset, whole_group)
from .dynsys import DynamicalSystem
from .errors import DomainError, InfiniteIndex
from .groups import INFINITY
from .pmonoid import UNIT, PElement

__all__ = [
    "DiagonalElement", "projection", "diag_mul", "cnp3_expand", "diag_norm", "NormResult",
    "tau_act", "diag_is_positive", "max_subprojection", "SpectrumLevel", "spectrum_level",
    "iota_level", "level_map", "cofinal_chain", "ChainLevel", "atoms",
]


class DiagonalElement:
    __slots__ = ("sys", "terms")

    def __init__(self, sys: DynamicalSystem, terms: Mapping[Coset, object] = ()):
        self.sys = sys
        clean: dict[Coset, Gaussian] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, v in items:
            v = as_gaussian(v)
            if v:
                clean[k] = clean.get(k, Gaussian(0)) + v
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def unit(cls, sys):
        return cls(sys, {whole_group(sys): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Gaussian(0)) + v
        return DiagonalElement(self.sys, out)

    def __neg__(self):
        return DiagonalElement(self.sys, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DiagonalElement(self.sys, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiagonalElement):
            return diag_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def star(self):
        return DiagonalElement(self.sys, {k: v.conjugate() for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, DiagonalElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def keys(self):
        return sorted(self.terms, key=_coset_key)

    def levels(self) -> set[PElement]:
        return {c.p for c in self.terms}

    def evaluate(self, x) -> Gaussian:
        """Value of the function on G (the point ``iota(x)`` of the spectrum)."""
        total = Gaussian(0)
        for c, v in self.terms.items():
            if coset_contains(self.sys, c, x):
                total += v
        return total

    def refine(self, level: Optional[PElement] = None) -> "DiagonalElement":
        """Rewrite at a single finite-index level using the partition of unity.

        Two elements are equal in the algebra iff their refinements to a common
        level coincide.
        """
        if level is None:
            level = UNIT
            for p in self.levels():
                level = level.lcm(p)
        if any(not p.divides(level) for p in self.levels()):
            raise DomainError(f"level {level} does not refine every term")
        th = self.sys.theta(level)
        if th.index() == INFINITY:
            raise InfiniteIndex(f"level {level} has infinite index")
        out = {}
        for x in th.transversal():
            v = self.evaluate(x)
            if v:
                out[Coset(x, level)] = v
        return DiagonalElement(self.sys, out)

    def equivalent(self, other: "DiagonalElement") -> bool:
        level = UNIT
        for p in self.levels() | other.levels():
            level = level.lcm(p)
        return self.refine(level) == other.refine(level)

    def format(self) -> str:
        if not self.terms:
            return "0"
        G = self.sys.group
        return " + ".join(f"{self.terms[c]}*e({G.format(c.g)},{c.p})" for c in self.keys())

    def __repr__(self):
        return f"DiagonalElement({self.format()})"


def _coset_key(c: Coset):
    return (c.p.sort_key(), repr(c.g))


def projection(sys: DynamicalSystem, g, p: PElement) -> DiagonalElement:
    return DiagonalElement(sys, {make_coset(sys, g, p): 1})


def diag_mul(a: DiagonalElement, b: DiagonalElement) -> DiagonalElement:
    sys = a.sys
    out: dict[Coset, Gaussian] = {}
    for c1, v1 in a.terms.items():
        for c2, v2 in b.terms.items():
            c = coset_intersect(sys, c1, c2)
            if c is not None:
                out[c] = out.get(c, Gaussian(0)) + v1 * v2
    return DiagonalElement(sys, out)


def cnp3_expand(sys: DynamicalSystem, p: PElement) -> DiagonalElement:
    th = sys.theta(p)
    if th.index() == INFINITY:
        raise InfiniteIndex(f"theta_{p} has infinite index")
    return DiagonalElement(sys, {Coset(t, p): 1 for t in th.transversal()})


def atoms(d: DiagonalElement):
    """Yield ``(A, witness)`` for each nonzero atom ``Q_{F,A}``.

    ``A`` is a tuple of keys of ``d``; ``witness`` a coset below the atom.
    """
    sys = d.sys
    keys = d.keys()
    for r in range(len(keys) + 1):
        for subset in itertools.combinations(range(len(keys)), r):
            base: Optional[Coset] = whole_group(sys)
            for i in subset:
                base = coset_intersect(sys, base, keys[i])
                if base is None:
                    break
            if base is None:
                continue
            blockers = [keys[j] for j in range(len(keys)) if j not in subset]
            w = constellation_nonempty(sys, base, blockers)
            if w is not None:
                yield tuple(keys[i] for i in subset), w


@dataclass(frozen=True)
class NormResult:
    squared: Fraction
    subset: tuple = ()
    witness: Optional[Coset] = None
    total: Gaussian = field(default_factory=Gaussian)

    @property
    def value(self) -> Optional[Fraction]:
        """Exact norm when the maximising sum is real or imaginary, else ``None``."""
        if self.total.im == 0:
            return abs(self.total.re)
        if self.total.re == 0:
            return abs(self.total.im)
        return None

    def __float__(self):
        return float(self.squared) ** 0.5

    def __str__(self):
        v = self.value
        return str(v) if v is not None else f"sqrt({self.squared}) ~ {float(self):.12g}"


def diag_norm(d: DiagonalElement) -> NormResult:
    """``max |sum_{i in A} c_i|`` over the nonzero atoms ``Q_{F,A}``."""
    best: Optional[NormResult] = None
    for subset, w in atoms(d):
        total = sum((d.terms[c] for c in subset), Gaussian(0))
        sq = total.abs2()
        if best is None or sq > best.squared:
            best = NormResult(sq, subset, w, total)
    assert best is not None  # the atom set always covers the unit
    return best


def diag_is_positive(d: DiagonalElement) -> bool:
    for subset, _ in atoms(d):
        total = sum((d.terms[c] for c in subset), Gaussian(0))
        if total.im != 0 or total.re < 0:
            return False
    return True


def max_subprojection(d: DiagonalElement) -> Coset:
    """A coset ``(g, p)`` with ``d * e_{g,p} == ||d|| e_{g,p}``; needs ``d >= 0``."""
    if not diag_is_positive(d):
        raise DomainError("element is not positive")
    res = diag_norm(d)
    return res.witness


def tau_act(sys: DynamicalSystem, g, a: DiagonalElement) -> DiagonalElement:
    G = sys.group
    return DiagonalElement(sys, [(make_coset(sys, G.op(g, c.g), c.p), v)
                                 for c, v in a.terms.items()])


# --------------------------------------------------------------------------
# finite levels of the spectrum
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumLevel:
    p: PElement
    points: tuple


def spectrum_level(sys: DynamicalSystem, p: PElement) -> SpectrumLevel:
    th = sys.theta(p)
    if th.index() == INFINITY:
        raise InfiniteIndex(f"theta_{p} has infinite index")
    return SpectrumLevel(p, tuple(th.transversal()))


def iota_level(sys: DynamicalSystem, g, p: PElement):
    return sys.theta(p).canonical_rep(g)


def level_map(sys: DynamicalSystem, fine: SpectrumLevel, coarse_p: PElement) -> dict:
    if not coarse_p.divides(fine.p):
        raise DomainError(f"{coarse_p} does not divide {fine.p}")
    th = sys.theta(coarse_p)
    return {x: th.canonical_rep(x) for x in fine.points}


@dataclass(frozen=True)
class ChainLevel:
    p: PElement
    index: object
    invariant_factors: tuple


def cofinal_chain(sys: DynamicalSystem, length: int) -> list[ChainLevel]:
    """``p_n = (g0 g1 ... gk)^n`` for ``n = 1..length`` with index data."""
    base = sys.full_product()
    out = []
    for n in range(1, length + 1):
        p = base ** n
        th = sys.theta(p)
        idx = th.index()
        facs = tuple(th.invariant_factors()) if idx != INFINITY else ()
        out.append(ChainLevel(p, idx if idx == INFINITY else int(idx), facs))
    return out
