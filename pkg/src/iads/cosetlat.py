"""The coset lattice ``{g + theta_p(G)}``.

A :class:`Coset` stores a canonical representative, so two cosets are equal
exactly when their fields are equal.  Intersections use the formula

    (g + theta_p G) & (h + theta_q G) = g + theta_p(a) + theta_{p v q}(G)

whenever ``h - g = theta_p(a) + theta_q(b)`` and are empty otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Optional, Sequence

from .dynsys import DynamicalSystem, Minimality, check_minimality, finite_infinite_split
from .errors import DomainError, NeedsUnitP
from .groups import INFINITY
from .pmonoid import UNIT, PElement

__all__ = ["Coset", "make_coset", "coset_contains", "coset_intersect", "coset_subset",
           "constellation_nonempty", "avoid_orbit_tails", "subcosets", "whole_group"]


@dataclass(frozen=True)
class Coset:
    g: object
    p: PElement

    def __str__(self):
        return f"({self.g!r}, {self.p})"


def make_coset(sys: DynamicalSystem, g, p: PElement) -> Coset:
    sys.group.check(g)
    return Coset(sys.theta(p).canonical_rep(g), p)


def whole_group(sys: DynamicalSystem) -> Coset:
    return Coset(sys.group.identity(), UNIT)


def coset_contains(sys: DynamicalSystem, c: Coset, x) -> bool:
    return sys.theta(c.p).in_image(sys.group.sub(x, c.g))


def coset_intersect(sys: DynamicalSystem, c1: Coset, c2: Coset,
                    witness: Optional[tuple] = None) -> Optional[Coset]:
    """Intersection of two cosets, or ``None`` when disjoint.

    ``witness`` may supply a factorisation ``(a, b)`` of ``c2.g - c1.g`` to
    use instead of the solver's.
    """
    G = sys.group
    tp, tq = sys.theta(c1.p), sys.theta(c2.p)
    diff = G.sub(c2.g, c1.g)
    if witness is None:
        witness = tp.factor(tq, diff)
        if witness is None:
            return None
    a, _ = witness
    return make_coset(sys, G.op(c1.g, tp(a)), c1.p.lcm(c2.p))


def coset_subset(sys: DynamicalSystem, small: Coset, big: Coset) -> bool:
    """``small`` is contained in ``big``."""
    return big.p.divides(small.p) and coset_contains(sys, big, small.g)


def subcosets(sys: DynamicalSystem, c: Coset, level: PElement) -> list[Coset]:
    """The cosets at ``level`` partitioning ``c``; needs ``c.p | level`` and finite
    relative index."""
    rel = c.p.quotient(level)
    tp = sys.theta(c.p)
    return [make_coset(sys, sys.group.op(c.g, tp(t)), level)
            for t in sys.theta(rel).transversal()]


def _fresh_subcoset(sys: DynamicalSystem, c: Coset, level: PElement,
                    excluded: Sequence[Coset]) -> Coset:
    """A coset at ``level`` inside ``c`` avoiding every coset in ``excluded``.

    Candidates ``c.g + theta_p(t)`` are scanned in the group's enumeration
    order; when ``[theta_p G : theta_level G]`` is infinite this terminates
    because finitely many cosets cannot exhaust infinitely many classes.
    """
    tp = sys.theta(c.p)
    G = sys.group
    if sys.theta(c.p.quotient(level)).index() != INFINITY:
        for sub in subcosets(sys, c, level):
            if sub not in excluded:
                return sub
        raise DomainError("no free sub-coset at this level")
    for t in G.enumerate():
        cand = make_coset(sys, G.op(c.g, tp(t)), level)
        if cand not in excluded:
            return cand
    raise AssertionError("unreachable")  # pragma: no cover


def _meets(sys, a: Coset, b: Coset) -> bool:
    return sys.theta(a.p).factor(sys.theta(b.p), sys.group.sub(b.g, a.g)) is not None


def constellation_nonempty(sys: DynamicalSystem, base: Coset,
                           blockers: Iterable[Coset]) -> Optional[Coset]:
    """A coset inside ``base`` and disjoint from every blocker, or ``None``.

    ``None`` is returned exactly when ``base`` is covered by the blockers.
    The finite-index part of each blocker level is handled by splitting: the
    current coset is cut into its sub-cosets at the level of one blocker's
    finite part and each piece is searched in turn, dropping pieces that a
    blocker swallows.  Once every remaining blocker only exceeds the piece by
    infinite index (always the case eventually, and the only case for finite
    type is no blockers at all) they are avoided greedily.
    """
    return _split_search(sys, base, list(blockers))


def _split_search(sys: DynamicalSystem, current: Coset, blockers: list[Coset]) -> Optional[Coset]:
    live = [b for b in blockers if _meets(sys, current, b)]
    if any(coset_subset(sys, current, b) for b in live):
        return None
    if not live:
        return current
    pending = []
    for b in live:
        fin, _ = finite_infinite_split(sys, b.p)
        if not fin.divides(current.p):
            pending.append(current.p.lcm(fin))
    if not pending:
        return _greedy_avoid(sys, current, live)
    level = min(pending, key=lambda p: (sys.theta(current.p.quotient(p)).index(), p.sort_key()))
    for piece in _iter_subcosets(sys, current, level):
        found = _split_search(sys, piece, live)
        if found is not None:
            return found
    return None


def _iter_subcosets(sys: DynamicalSystem, c: Coset, level: PElement):
    tp = sys.theta(c.p)
    for t in sys.theta(c.p.quotient(level)).transversal():
        yield make_coset(sys, sys.group.op(c.g, tp(t)), level)


def _greedy_avoid(sys: DynamicalSystem, current: Coset, live: list[Coset]) -> Coset:
    while live:
        joins = {current.p.lcm(b.p) for b in live}
        minimal = sorted(j for j in joins
                         if not any(o != j and o.divides(j) for o in joins))[0]
        hits = [b for b in live if current.p.lcm(b.p) == minimal]
        excluded = [coset_intersect(sys, current, b) for b in hits]
        current = _fresh_subcoset(sys, current, minimal, excluded)
        live = [b for b in live if _meets(sys, current, b)]
        if any(coset_subset(sys, current, b) for b in live):
            raise AssertionError("greedy step landed inside a blocker")  # pragma: no cover
    return current


def _escape_power(p: PElement, q: PElement) -> int:
    """Least ``m >= 1`` with ``p`` not a multiple of ``q^m``."""
    return min(p[i] // k + 1 for i, k in q.items())


def avoid_orbit_tails(sys: DynamicalSystem, start: Coset,
                      constraints: Iterable[tuple[object, PElement]],
                      minimal: Optional[bool] = None) -> Coset:
    """A sub-coset of ``start`` missing every set ``g_i + cap_m theta_{p_i^m}(G)``.

    For each constraint ``m`` is chosen so that ``p v p_i^m`` strictly exceeds
    the current level ``p``.  If the current coset meets ``g_i + theta_{p_i^m}(G)``
    it is replaced by a sub-coset at level ``p v p_i^m`` avoiding that
    intersection.  For minimal systems the tail sets are the single points
    ``g_i``, so a coset not containing ``g_i`` is kept as it is.
    ``minimal=None`` asks :func:`check_minimality` for a certificate.
    """
    constraints = list(constraints)
    for _, q in constraints:
        if q.is_unit():
            raise NeedsUnitP("constraint with the unit of P")
    if minimal is None:
        minimal = check_minimality(sys).kind is Minimality.CERTIFIED
    current = start
    for g_i, q in constraints:
        if minimal and not coset_contains(sys, current, g_i):
            continue
        m = _escape_power(current.p, q)
        target = make_coset(sys, g_i, q ** m)
        hit = coset_intersect(sys, current, target)
        if hit is not None:
            current = _fresh_subcoset(sys, current, current.p.lcm(target.p), [hit])
    return current


def first_elements(sys: DynamicalSystem, c: Coset, n: int) -> list:
    """The first ``n`` elements of ``c`` in enumeration order (for sampling)."""
    tp = sys.theta(c.p)
    return [sys.group.op(c.g, tp(t)) for t in islice(sys.group.enumerate(), n)]
