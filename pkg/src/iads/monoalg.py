"""Symbolic *-algebra spanned by ``u_g s_p s_q^* u_h^*``.

A :class:`Monomial` ``(g, p, q, h)`` stands for ``u_g s_p s_q^* u_h^*`` with
the trailing unitary written as an adjoint, so the involution is a field swap.
The redundancy ``(g, p, q, h + theta_q(k)) = (g - theta_p(k), p, q, h)`` is
removed by reducing ``h`` to the canonical coset representative of
``theta_q(G)``.

Products of monomials are again monomials or zero: the middle factor
``s_{q1}^* u_c s_{p2}`` is resolved by factoring ``c = theta_{q1}(a) + theta_{p2}(b)``
and the unitaries are pushed outward with ``s_p u_g = u_{theta_p(g)} s_p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .coeffs import Gaussian, as_gaussian
from .cosetlat import Coset
from .diagonal import DiagonalElement
from .dynsys import DynamicalSystem
from .errors import DomainError, InfiniteIndex
from .groups import INFINITY
from .pmonoid import UNIT, PElement

__all__ = [
    "Monomial", "AlgebraElement", "mono_canonicalize", "mono_star", "mono_mul",
    "alg_mul", "alg_add", "alg_star", "gauge_degree", "expectation_E1",
    "expectation_E2", "expectation_E", "covariance_check", "CovarianceReport",
    "unit", "u", "s", "e", "isometry",
]


@dataclass(frozen=True)
class Monomial:
    g: object
    p: PElement
    q: PElement
    h: object

    def sort_key(self):
        return (self.p.sort_key(), self.q.sort_key(), repr(self.g), repr(self.h))


def mono_canonicalize(sys: DynamicalSystem, g, p: PElement, q: PElement, h) -> Monomial:
    G = sys.group
    tq = sys.theta(q)
    h0 = tq.canonical_rep(h)
    if h0 == h:
        return Monomial(g, p, q, h)
    k = tq.preimage(G.sub(h, h0))
    return Monomial(G.sub(g, sys.theta(p)(k)), p, q, h0)


def unit(sys: DynamicalSystem) -> Monomial:
    e = sys.group.identity()
    return Monomial(e, UNIT, UNIT, e)


def u(sys: DynamicalSystem, g) -> Monomial:
    return Monomial(g, UNIT, UNIT, sys.group.identity())


def s(sys: DynamicalSystem, p: PElement) -> Monomial:
    ident = sys.group.identity()
    return Monomial(ident, p, UNIT, ident)


def isometry(sys: DynamicalSystem, g, p: PElement) -> Monomial:
    """``u_g s_p``."""
    return Monomial(g, p, UNIT, sys.group.identity())


def e(sys: DynamicalSystem, g, p: PElement) -> Monomial:
    """The range projection ``e_{g,p} = u_g s_p s_p^* u_g^*``."""
    g = sys.theta(p).canonical_rep(g)
    return Monomial(g, p, p, g)


def mono_star(sys: DynamicalSystem, m: Monomial) -> Monomial:
    return mono_canonicalize(sys, m.h, m.q, m.p, m.g)


def mono_mul(sys: DynamicalSystem, m1: Monomial, m2: Monomial,
             witness: Optional[tuple] = None) -> Optional[Monomial]:
    """Product of canonical monomials, ``None`` for zero.

    ``witness`` overrides the factorisation ``(a, b)`` of ``g2 - h1``.
    """
    G = sys.group
    c = G.sub(m2.g, m1.h)
    if witness is None:
        witness = sys.theta(m1.q).factor(sys.theta(m2.p), c)
        if witness is None:
            return None
    a, b = witness
    w = m1.q.gcd(m2.p)
    p = m1.p * w.quotient(m2.p)
    q = m2.q * w.quotient(m1.q)
    g = G.op(m1.g, sys.theta(m1.p)(a))
    h = G.sub(m2.h, sys.theta(m2.q)(b))
    return mono_canonicalize(sys, g, p, q, h)


def gauge_degree(m: Monomial) -> dict[int, int]:
    d = {i: k for i, k in m.p.items()}
    for i, k in m.q.items():
        d[i] = d.get(i, 0) - k
    return {i: k for i, k in d.items() if k}


# --------------------------------------------------------------------------
# linear combinations
# --------------------------------------------------------------------------


class AlgebraElement:
    __slots__ = ("sys", "terms")

    def __init__(self, sys: DynamicalSystem, terms: Mapping[Monomial, object] = ()):
        self.sys = sys
        acc: dict[Monomial, Gaussian] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            c = as_gaussian(c)
            if c:
                acc[m] = acc.get(m, Gaussian(0)) + c
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def of(cls, sys, m: Optional[Monomial], c=1):
        return cls(sys, {} if m is None else {m: c})

    def __add__(self, other):
        return alg_add(self, other)

    def __neg__(self):
        return AlgebraElement(self.sys, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return alg_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        return AlgebraElement(self.sys, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return AlgebraElement(self.sys, {m: other * c for m, c in self.terms.items()})

    def star(self):
        return alg_star(self)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def monomials(self):
        return sorted(self.terms, key=Monomial.sort_key)

    def refine(self, level: PElement) -> "AlgebraElement":
        """Rewrite every term with right level ``level`` via the partition of unity.

        ``u_g s_p s_q^* u_h^* = sum_t u_{g+theta_p t} s_{pr} s_{qr}^* u_{h+theta_q t}^*``
        over a transversal ``t`` of ``theta_r(G)``, ``r = level / q``.
        """
        sys, G = self.sys, self.sys.group
        out: dict[Monomial, Gaussian] = {}
        for m, c in self.terms.items():
            r = m.q.quotient(level)
            tr = sys.theta(r)
            if tr.index() == INFINITY:
                raise InfiniteIndex(f"cannot refine through infinite-index {r}")
            tp, tq = sys.theta(m.p), sys.theta(m.q)
            for t in tr.transversal():
                mm = mono_canonicalize(sys, G.op(m.g, tp(t)), m.p * r, level, G.op(m.h, tq(t)))
                out[mm] = out.get(mm, Gaussian(0)) + c
        return AlgebraElement(sys, out)

    def equivalent(self, other: "AlgebraElement") -> bool:
        """Equality modulo the partition-of-unity relation (finite index only)."""
        level = UNIT
        for m in list(self.terms) + list(other.terms):
            level = level.lcm(m.q)
        return self.refine(level) == other.refine(level)

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for m in self.monomials():
            c, body = self.terms[m], format_monomial(self.sys, m)
            sign = " + "
            if c.im == 0 and c.re < 0:
                sign, c = " - ", -c
            coef = "" if c == 1 else f"{c}*"
            out += sign + coef + body
        return out[3:] if out.startswith(" + ") else "-" + out[3:]

    def __repr__(self):
        return f"AlgebraElement({self.format()})"


def format_monomial(sys: DynamicalSystem, m: Monomial) -> str:
    G = sys.group
    ident = G.identity()
    parts = []
    if m.g != ident:
        parts.append(f"u({G.format(m.g)})")
    if not m.p.is_unit():
        parts.append(f"s({m.p})")
    if not m.q.is_unit():
        parts.append(f"s({m.q})*")
    if m.h != ident:
        parts.append(f"u({G.format(m.h)})*")
    return "".join(parts) or "1"


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    out = dict(a.terms)
    for m, c in b.terms.items():
        out[m] = out.get(m, Gaussian(0)) + c
    return AlgebraElement(a.sys, out)


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    out: dict[Monomial, Gaussian] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            m = mono_mul(a.sys, m1, m2)
            if m is not None:
                out[m] = out.get(m, Gaussian(0)) + c1 * c2
    return AlgebraElement(a.sys, out)


def alg_star(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.sys, [(mono_star(a.sys, m), c.conjugate())
                                  for m, c in a.terms.items()])


# --------------------------------------------------------------------------
# gauge grading and expectations
# --------------------------------------------------------------------------


def expectation_E1(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.sys, {m: c for m, c in a.terms.items() if m.p == m.q})


def expectation_E2(a: AlgebraElement) -> DiagonalElement:
    out = {}
    for m, c in a.terms.items():
        if m.p != m.q:
            raise DomainError("E2 is only defined on gauge-degree-zero elements")
        if m.g == m.h:
            out[Coset(m.g, m.p)] = c
    return DiagonalElement(a.sys, out)


def expectation_E(a: AlgebraElement) -> DiagonalElement:
    return expectation_E2(expectation_E1(a))


def diagonal_to_algebra(d: DiagonalElement) -> AlgebraElement:
    return AlgebraElement(d.sys, {Monomial(c.g, c.p, c.p, c.g): v for c, v in d.terms.items()})


# --------------------------------------------------------------------------
# covariance identities
# --------------------------------------------------------------------------


@dataclass
class CovarianceReport:
    checked: dict = field(default_factory=lambda: {"i": 0, "ii": 0, "iii": 0})
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _mul3(sys, a, b, c):
    ab = mono_mul(sys, a, b)
    return None if ab is None else mono_mul(sys, ab, c)


def covariance_check(sys: DynamicalSystem, samples: int = 200, seed: int = 0,
                     max_exp: int = 2, size: int = 3) -> CovarianceReport:
    """Check the semigroup-action identities on random samples.

    (i)   ``(u_g s_p) e_{h,q} (u_g s_p)^* = e_{g + theta_p(h), pq}``
    (ii)  ``v_{(g,p)} v_{(g',p')} = v_{(g + theta_p g', pp')}`` with ``v_{(g,p)} = u_g s_p``
    (iii) ``s_p u_g = u_{theta_p g} s_p``, ``e_{theta_p g, p} = e_{0,p}``,
          ``s_p u_g s_p^* = e_{0,p} u_{theta_p g} = u_{theta_p g} e_{0,p}`` and
          multiplicativity of ``u_g -> s_p u_g s_p^*``.
    """
    from .sampling import random_group_element, random_pelement

    rng = random.Random(seed)
    G = sys.group
    rep = CovarianceReport()
    ident = G.identity()

    def fail(kind, data):
        rep.failures.append((kind, data))

    for _ in range(samples):
        g = random_group_element(sys, rng, size)
        g2 = random_group_element(sys, rng, size)
        h = random_group_element(sys, rng, size)
        p = random_pelement(sys, rng, max_exp)
        p2 = random_pelement(sys, rng, max_exp)
        q = random_pelement(sys, rng, max_exp)
        tp = sys.theta(p)

        v = isometry(sys, g, p)
        lhs = _mul3(sys, v, e(sys, h, q), mono_star(sys, v))
        rhs = e(sys, G.op(g, tp(h)), p * q)
        rep.checked["i"] += 1
        if lhs != rhs:
            fail("i", (g, p, h, q, lhs, rhs))

        lhs = mono_mul(sys, v, isometry(sys, g2, p2))
        rhs = isometry(sys, G.op(g, tp(g2)), p * p2)
        rep.checked["ii"] += 1
        if lhs != rhs:
            fail("ii", (g, p, g2, p2, lhs, rhs))

        sp = s(sys, p)
        spg = tp(g)
        checks = [
            (mono_mul(sys, sp, u(sys, g)), mono_mul(sys, u(sys, spg), sp)),
            (e(sys, spg, p), e(sys, ident, p)),
            (_mul3(sys, sp, u(sys, g), mono_star(sys, sp)),
             mono_mul(sys, e(sys, ident, p), u(sys, spg))),
            (mono_mul(sys, e(sys, ident, p), u(sys, spg)),
             mono_mul(sys, u(sys, spg), e(sys, ident, p))),
            (mono_mul(sys, _mul3(sys, sp, u(sys, g), mono_star(sys, sp)),
                      _mul3(sys, sp, u(sys, g2), mono_star(sys, sp))),
             _mul3(sys, sp, u(sys, G.op(g, g2)), mono_star(sys, sp))),
        ]
        rep.checked["iii"] += 1
        for n, (a, b) in enumerate(checks):
            if a != b:
                fail(f"iii.{n}", (g, g2, p, a, b))
    return rep
