"""Fibres of the product system: ``X_p`` is the group algebra of G with the
right action twisted by ``theta_p`` and inner product

    <u_g, u_h>_p = u_{theta_p^{-1}(h - g)}  if h - g lies in theta_p(G), else 0.

Vectors are finitely supported maps ``G -> Gaussian``.  The representation
``u_g (in X_p) -> u_g s_p`` lands in :mod:`iads.monoalg`, which is where the
Toeplitz and covariance identities are checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .coeffs import Gaussian, as_gaussian
from .cosetlat import Coset, make_coset
from .dynsys import DynamicalSystem
from .errors import DomainError, InfiniteIndex
from .groups import INFINITY
from .monoalg import AlgebraElement, Monomial, e as projection_monomial, mono_mul
from .pmonoid import UNIT, PElement

__all__ = ["GroupAlgebraElement", "FibreElement", "fibre_inner", "fibre_right_act",
           "fibre_left_act", "fibre_tensor", "fibre_onb", "onb_reconstruct",
           "RankOneOperator", "rank_one_apply", "rank_one_compose",
           "rank_one_compose_at_join", "rank_one_expand", "phi", "psi",
           "IdentityReport", "cnp_representation_check", "onb_check", "fibres_up_to"]


def _clean(terms) -> dict:
    acc: dict = {}
    for g, c in terms:
        c = as_gaussian(c)
        acc[g] = acc.get(g, Gaussian(0)) + c
    return {g: c for g, c in acc.items() if c}


@dataclass(frozen=True)
class GroupAlgebraElement:
    """A finitely supported ``sum c_g u_g`` in the group algebra of G."""

    coeffs: Mapping = field(default_factory=dict)

    @classmethod
    def of(cls, terms):
        return cls(_clean(terms.items() if isinstance(terms, Mapping) else terms))

    @classmethod
    def delta(cls, g, c=1):
        return cls.of([(g, c)])

    def star(self, G) -> "GroupAlgebraElement":
        return GroupAlgebraElement.of([(G.inv(g), c.conjugate()) for g, c in self.coeffs.items()])

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))


def convolve(G, a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return GroupAlgebraElement.of([(G.op(g, h), c * d)
                                   for g, c in a.coeffs.items() for h, d in b.coeffs.items()])


@dataclass(frozen=True)
class FibreElement:
    p: PElement
    coeffs: Mapping = field(default_factory=dict)

    @classmethod
    def of(cls, p: PElement, terms):
        return cls(p, _clean(terms.items() if isinstance(terms, Mapping) else terms))

    @classmethod
    def delta(cls, p: PElement, g, c=1):
        return cls.of(p, [(g, c)])

    def __add__(self, other: "FibreElement"):
        _same_fibre(self, other)
        return FibreElement.of(self.p, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __eq__(self, other):
        return (isinstance(other, FibreElement) and self.p == other.p
                and dict(self.coeffs) == dict(other.coeffs))

    def __hash__(self):
        return hash((self.p, frozenset(self.coeffs.items())))


def _same_fibre(a: FibreElement, b: FibreElement):
    if a.p != b.p:
        raise DomainError(f"fibre mismatch: X_{a.p} vs X_{b.p}")


def fibre_inner(sys: DynamicalSystem, xi: FibreElement, eta: FibreElement) -> GroupAlgebraElement:
    """``<xi, eta>_p``, conjugate-linear in ``xi``."""
    _same_fibre(xi, eta)
    G, tp = sys.group, sys.theta(xi.p)
    out = []
    for g, c in xi.coeffs.items():
        for h, d in eta.coeffs.items():
            k = tp.preimage(G.sub(h, g))
            if k is not None:
                out.append((k, c.conjugate() * d))
    return GroupAlgebraElement.of(out)


def _twist(sys: DynamicalSystem, p: PElement, g, h):
    """The one place the right action's twist lives: ``u_g . u_h = u_{g + theta_p(h)}``."""
    return sys.group.op(g, sys.theta(p)(h))


def fibre_right_act(sys: DynamicalSystem, xi: FibreElement, a: GroupAlgebraElement) -> FibreElement:
    return FibreElement.of(xi.p, [(_twist(sys, xi.p, g, h), c * d)
                                  for g, c in xi.coeffs.items() for h, d in a.coeffs.items()])


def fibre_left_act(sys: DynamicalSystem, a: GroupAlgebraElement, xi: FibreElement) -> FibreElement:
    G = sys.group
    return FibreElement.of(xi.p, [(G.op(k, g), d * c)
                                  for k, d in a.coeffs.items() for g, c in xi.coeffs.items()])


def fibre_tensor(sys: DynamicalSystem, xi: FibreElement, eta: FibreElement) -> FibreElement:
    """The multiplication ``X_p x X_q -> X_{pq}``: ``u_g (x) u_h -> u_{g + theta_p(h)}``."""
    return FibreElement.of(xi.p * eta.p, [(_twist(sys, xi.p, g, h), c * d)
                                          for g, c in xi.coeffs.items()
                                          for h, d in eta.coeffs.items()])


def fibre_onb(sys: DynamicalSystem, p: PElement) -> list[FibreElement]:
    tp = sys.theta(p)
    if tp.index() == INFINITY:
        raise InfiniteIndex(f"X_{p} has no finite basis")
    return [FibreElement.delta(p, t) for t in tp.transversal()]


def onb_reconstruct(sys: DynamicalSystem, eta: FibreElement,
                    basis: Optional[list[FibreElement]] = None) -> FibreElement:
    """``sum_i xi_i . <xi_i, eta>``."""
    basis = fibre_onb(sys, eta.p) if basis is None else basis
    out = FibreElement(eta.p, {})
    for xi in basis:
        out = out + fibre_right_act(sys, xi, fibre_inner(sys, xi, eta))
    return out


# --------------------------------------------------------------------------
# rank-one operators
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RankOneOperator:
    """``Theta_{left, right}: zeta -> left . <right, zeta>``."""

    left: FibreElement
    right: FibreElement

    def __post_init__(self):
        _same_fibre(self.left, self.right)

    @property
    def p(self) -> PElement:
        return self.left.p


def rank_one_apply(sys: DynamicalSystem, op: RankOneOperator, zeta: FibreElement) -> FibreElement:
    return fibre_right_act(sys, op.left, fibre_inner(sys, op.right, zeta))


def rank_one_compose(sys: DynamicalSystem, a: RankOneOperator, b: RankOneOperator) -> RankOneOperator:
    """Composition inside one fibre: ``Theta_{x1,y1} Theta_{x2,y2} = Theta_{x1.<y1,x2>, y2}``."""
    return RankOneOperator(fibre_right_act(sys, a.left, fibre_inner(sys, a.right, b.left)), b.right)


def rank_one_compose_at_join(sys: DynamicalSystem, g1, p: PElement, g2, q: PElement) -> Optional[Coset]:
    """Product of the basis projections ``Theta_{u_g1,u_g1}`` at ``p`` and
    ``Theta_{u_g2,u_g2}`` at ``q``, viewed at ``p v q``.

    Returns the coset ``(g3, p v q)`` labelling the resulting projection, or
    ``None`` for zero.  With ``g2 - g1 = theta_p(a) + theta_q(b)`` the label is
    ``g1 + theta_p(a)``.
    """
    G = sys.group
    w = sys.theta(p).factor(sys.theta(q), G.sub(g2, g1))
    if w is None:
        return None
    return make_coset(sys, G.op(g1, sys.theta(p)(w[0])), p.lcm(q))


def rank_one_expand(sys: DynamicalSystem, g, p: PElement, level: PElement) -> frozenset:
    """Embed ``Theta_{u_g,u_g}`` at ``p`` into ``level`` as a set of basis projections."""
    tr = sys.theta(p.quotient(level))
    if tr.index() == INFINITY:
        raise InfiniteIndex(f"cannot expand {p} into {level}")
    G, tp = sys.group, sys.theta(p)
    return frozenset(make_coset(sys, G.op(g, tp(t)), level) for t in tr.transversal())


# --------------------------------------------------------------------------
# the representation into the monomial algebra
# --------------------------------------------------------------------------


def phi(sys: DynamicalSystem, xi: FibreElement) -> AlgebraElement:
    """``u_g in X_p -> u_g s_p``."""
    e = sys.group.identity()
    return AlgebraElement(sys, {Monomial(g, xi.p, UNIT, e): c for g, c in xi.coeffs.items()})


def phi_unit(sys: DynamicalSystem, a: GroupAlgebraElement) -> AlgebraElement:
    return phi(sys, FibreElement(UNIT, a.coeffs))


def psi(sys: DynamicalSystem, op: RankOneOperator) -> AlgebraElement:
    return phi(sys, op.left) * phi(sys, op.right).star()


@dataclass
class IdentityReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def tick(self, name: str, ok: bool, data=None):
        self.checked[name] = self.checked.get(name, 0) + 1
        if not ok:
            self.failures.append((name, data))

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        bad: dict = {}
        for name, _ in self.failures:
            bad[name] = bad.get(name, 0) + 1
        return {k: {"checked": v, "failed": bad.get(k, 0)} for k, v in sorted(self.checked.items())}


def _random_fibre(sys, rng, p, size, terms=2):
    return FibreElement.of(p, [(sys.group.random(rng, size), rng.randint(-2, 2) or 1)
                               for _ in range(rng.randint(1, terms))])


def fibres_up_to(sys: DynamicalSystem, max_index: int, max_exp: int = 6) -> list[PElement]:
    """All levels ``p`` (exponents ``<= max_exp``) with finite index ``<= max_index``."""
    import itertools

    out = []
    for exps in itertools.product(range(max_exp + 1), repeat=len(sys.gen_ids)):
        p = PElement(dict(zip(sys.gen_ids, exps)))
        idx = sys.theta(p).index()
        if idx != INFINITY and idx <= max_index:
            out.append(p)
    return out


def onb_check(sys: DynamicalSystem, max_index: int = 36, samples: int = 5, seed: int = 0,
              report: Optional[IdentityReport] = None) -> IdentityReport:
    """Orthonormality, reconstruction and matrix-unit relations on small fibres."""
    rng = random.Random(seed)
    rep = report or IdentityReport()
    one = GroupAlgebraElement.delta(sys.group.identity())
    zero = GroupAlgebraElement.of({})
    for p in fibres_up_to(sys, max_index):
        basis = fibre_onb(sys, p)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                rep.tick("onb.orthonormal", fibre_inner(sys, a, b) == (one if i == j else zero),
                         (p, i, j))
        for _ in range(samples):
            eta = _random_fibre(sys, rng, p, 4, 3)
            rep.tick("onb.reconstruct", onb_reconstruct(sys, eta, basis) == eta, (p, eta))
            total = FibreElement(p, {})
            for xi in basis:
                total = total + rank_one_apply(sys, RankOneOperator(xi, xi), eta)
            rep.tick("rank_one.resolution", total == eta, (p, eta))
        if len(basis) <= 12:
            for a in basis:
                for b in basis:
                    for c in basis:
                        prod = rank_one_compose(sys, RankOneOperator(a, b), RankOneOperator(b, c))
                        rep.tick("rank_one.matrix_units", prod == RankOneOperator(a, c), (p,))
                        off = rank_one_compose(sys, RankOneOperator(a, b), RankOneOperator(c, a))
                        if b != c:
                            rep.tick("rank_one.matrix_units", not off.left.coeffs, (p,))
    return rep


def cnp_representation_check(sys: DynamicalSystem, samples: int = 200, seed: int = 0,
                             max_exp: int = 2, size: int = 3,
                             cp_max_index: int = 144) -> IdentityReport:
    """Toeplitz relations, Nica covariance and the finite Cuntz-Pimsner condition
    for ``u_g in X_p -> u_g s_p``, each sampled ``samples`` times."""
    from .sampling import random_pelement

    if not sys.is_finite_type():
        raise InfiniteIndex("the representation check needs a system of finite type")
    rng = random.Random(seed)
    G = sys.group
    rep = IdentityReport()
    # the partition of unity is summed over a whole transversal, so keep it small
    small = fibres_up_to(sys, cp_max_index)
    for _ in range(samples):
        p = random_pelement(sys, rng, max_exp)
        q = random_pelement(sys, rng, max_exp)
        xi = _random_fibre(sys, rng, p, size)
        eta = _random_fibre(sys, rng, p, size)
        zeta = _random_fibre(sys, rng, q, size)

        lhs = phi(sys, xi).star() * phi(sys, eta)
        rep.tick("toeplitz.inner", lhs == phi_unit(sys, fibre_inner(sys, xi, eta)), (xi, eta))

        lhs = phi(sys, xi) * phi(sys, zeta)
        rep.tick("toeplitz.product", lhs == phi(sys, fibre_tensor(sys, xi, zeta)), (xi, zeta))

        a = GroupAlgebraElement.of([(G.random(rng, size), 1)])
        lhs = phi_unit(sys, a) * phi(sys, xi)
        rep.tick("toeplitz.left", lhs == phi(sys, fibre_left_act(sys, a, xi)), (a, xi))

        g1, g2 = G.random(rng, size), G.random(rng, size)
        label = rank_one_compose_at_join(sys, g1, p, g2, q)
        prod = mono_mul(sys, projection_monomial(sys, g1, p), projection_monomial(sys, g2, q))
        expect = None if label is None else projection_monomial(sys, label.g, label.p)
        rep.tick("nica.closed_form", prod == expect, (g1, p, g2, q))
        level = p.lcm(q)
        both = rank_one_expand(sys, g1, p, level) & rank_one_expand(sys, g2, q, level)
        rep.tick("nica.expansion", both == (frozenset() if label is None else frozenset([label])),
                 (g1, p, g2, q))
        op1 = RankOneOperator(FibreElement.delta(p, g1), FibreElement.delta(p, g1))
        op2 = RankOneOperator(FibreElement.delta(q, g2), FibreElement.delta(q, g2))
        ps = psi(sys, op1) * psi(sys, op2)
        rep.tick("nica.psi", ps == AlgebraElement.of(sys, expect), (g1, p, g2, q))

        g = G.random(rng, size)
        r = rng.choice(small)
        terms: list = []
        for t in sys.theta(r).transversal():
            op = RankOneOperator(FibreElement.delta(r, G.op(g, t)), FibreElement.delta(r, t))
            terms.extend(psi(sys, op).terms.items())
        total = AlgebraElement(sys, terms)
        rep.tick("cuntz_pimsner", total.equivalent(phi_unit(sys, GroupAlgebraElement.delta(g))),
                 (g, r))
    return rep
