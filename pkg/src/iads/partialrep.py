"""Monomials acting on the basis of l^2(G) as partial injections of G.

``u_g s_p s_q^* u_h^*`` sends ``x`` in ``h + theta_q(G)`` to
``g + theta_p(theta_q^{-1}(x - h))`` and kills everything else.  The map is
stored symbolically as

    x = base + theta_Q(w)  ->  image + theta_P(w)

with ``base`` the canonical representative of the domain coset, which makes
equality of partial injections a field comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import sparse

from .cosetlat import Coset, coset_intersect, make_coset
from .dynsys import DynamicalSystem
from .errors import DomainError
from .pmonoid import PElement

__all__ = ["PartialInjection", "monomial_semantics", "pinj_compose", "pinj_inverse",
           "identity_injection", "TruncatedOperator", "truncate", "cnp3_defect",
           "lattice_window", "shift_window"]


@dataclass(frozen=True)
class PartialInjection:
    """``base + theta_dom(w) -> image + theta_rng(w)``; build with :func:`_normalise`."""

    base: object
    dom: PElement
    image: object
    rng: PElement
    sys: DynamicalSystem = field(compare=False, hash=False, repr=False)

    @property
    def domain(self) -> Coset:
        return Coset(self.base, self.dom)

    @property
    def range(self) -> Coset:
        return make_coset(self.sys, self.image, self.rng)

    def __call__(self, x) -> Optional[object]:
        G = self.sys.group
        w = self.sys.theta(self.dom).preimage(G.sub(x, self.base))
        if w is None:
            return None
        return G.op(self.image, self.sys.theta(self.rng)(w))

    def inverse(self) -> "PartialInjection":
        return pinj_inverse(self)

    def __str__(self):
        G = self.sys.group
        return (f"[{G.format(self.base)} + theta({self.dom})(w) -> "
                f"{G.format(self.image)} + theta({self.rng})(w)]")


def _normalise(sys: DynamicalSystem, base, dom: PElement, image, rng: PElement) -> PartialInjection:
    G = sys.group
    td = sys.theta(dom)
    b0 = td.canonical_rep(base)
    if b0 != base:
        w = td.preimage(G.sub(b0, base))
        image = G.op(image, sys.theta(rng)(w))
    return PartialInjection(b0, dom, image, rng, sys)


def monomial_semantics(sys: DynamicalSystem, m) -> PartialInjection:
    return _normalise(sys, m.h, m.q, m.g, m.p)


def identity_injection(sys: DynamicalSystem) -> PartialInjection:
    e = sys.group.identity()
    return PartialInjection(e, PElement(), e, PElement(), sys)


def pinj_inverse(f: PartialInjection) -> PartialInjection:
    return _normalise(f.sys, f.image, f.rng, f.base, f.dom)


def pinj_compose(f: Optional[PartialInjection],
                 k: Optional[PartialInjection]) -> Optional[PartialInjection]:
    """``f o k`` (apply ``k`` first); ``None`` is the empty map."""
    if f is None or k is None:
        return None
    sys = f.sys
    G = sys.group
    # points of k's range that land in f's domain
    meet = coset_intersect(sys, Coset(k.image, k.rng), Coset(f.base, f.dom))
    if meet is None:
        return None
    level = meet.p
    y0 = sys.theta(k.rng).preimage(G.sub(meet.g, k.image))
    z0 = sys.theta(f.dom).preimage(G.sub(meet.g, f.base))
    base = G.op(k.base, sys.theta(k.dom)(y0))
    image = G.op(f.image, sys.theta(f.rng)(z0))
    dom = k.dom * k.rng.quotient(level)
    rng = f.rng * f.dom.quotient(level)
    return _normalise(sys, base, dom, image, rng)


# --------------------------------------------------------------------------
# truncations to finite windows
# --------------------------------------------------------------------------


@dataclass
class TruncatedOperator:
    window: list
    matrix: sparse.csr_matrix

    def column_counts(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=0)).ravel()


def truncate(f: Optional[PartialInjection], window: Sequence) -> TruncatedOperator:
    """0/1 matrix of ``f`` on ``window`` (row ``x``, column ``y`` iff ``f(y) = x``)."""
    index = {x: i for i, x in enumerate(window)}
    rows, cols = [], []
    if f is not None:
        for j, y in enumerate(window):
            x = f(y)
            if x is not None and x in index:
                rows.append(index[x])
                cols.append(j)
    n = len(window)
    mat = sparse.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    return TruncatedOperator(list(window), mat)


def lattice_window(dim: int, radius: int) -> list:
    import itertools

    pts = itertools.product(range(-radius, radius + 1), repeat=dim)
    return list(pts)


def shift_window(sys: DynamicalSystem, positions: Iterable) -> list:
    """Elements of a shift group supported on ``positions``."""
    return sys.group.supported_on(list(positions))


def cnp3_defect(sys: DynamicalSystem, p: PElement, window: Sequence,
                classes: Iterable) -> Fraction:
    """Share of ``window`` outside ``sum_{t in classes} e_{t,p}``.

    The projections act diagonally on basis vectors, so this is the fraction
    of window points lying in none of the cosets ``t + theta_p(G)``.
    """
    window = list(window)
    if not window:
        raise DomainError("empty window")
    tp = sys.theta(p)
    reps = {tp.canonical_rep(t) for t in classes}
    missed = sum(1 for x in window if tp.canonical_rep(x) not in reps)
    return Fraction(missed, len(window))
