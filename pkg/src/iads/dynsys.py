"""Assembling ``(G, P, theta)`` and checking the defining axioms.

A :class:`DynamicalSystem` binds a group backend to one injective endomorphism
per generator of P.  The checks here are exact where the backend permits it
and otherwise return graded certificates (see :func:`check_minimality`).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import DomainError, InvalidSystem
from .groups import (INFINITY, DirectSum, Endomorphism, Group, LatticeZd, MatrixEndo,
                     ShiftSum, group_from_json)
from .pmonoid import UNIT, PElement

__all__ = [
    "DynamicalSystem", "Independence", "IndependenceResult", "AxiomReport",
    "Minimality", "MinimalityResult", "theta", "check_independence", "check_axiom_C",
    "check_minimality", "is_finite_type", "finite_infinite_split",
]


class DynamicalSystem:
    """``(G, P, theta)`` with P free on the generator ids of ``generators``."""

    def __init__(self, group: Group, generators: dict[int, Endomorphism],
                 name: str = "", notes: str = ""):
        self.group = group
        self.generators = dict(sorted(generators.items()))
        self.name = name
        self.notes = notes
        self._theta_cache: dict[PElement, Endomorphism] = {UNIT: group.identity_endo()}
        for i, e in self.generators.items():
            if e.group != group:
                raise InvalidSystem(f"generator g{i} acts on a different group")
            if e.is_identity():
                raise InvalidSystem(f"generator g{i} is the identity (theta must be non-surjective)")
        for (i, a), (j, b) in itertools.combinations(self.generators.items(), 2):
            if not a.commutes_with(b):
                raise InvalidSystem(f"generators g{i} and g{j} do not commute")

    def __repr__(self):
        return f"DynamicalSystem({self.name or self.group}, gens={list(self.generators)})"

    @property
    def gen_ids(self) -> list[int]:
        return list(self.generators)

    def gen(self, i: int) -> PElement:
        return PElement.gen(i)

    def theta(self, p: PElement) -> Endomorphism:
        e = self._theta_cache.get(p)
        if e is not None:
            return e
        e = self.group.identity_endo()
        for i, k in p.items():
            if i not in self.generators:
                raise DomainError(f"unknown generator g{i}")
            e = e.compose(self.generators[i].power(k))
        self._theta_cache[p] = e
        return e

    def full_product(self) -> PElement:
        return PElement({i: 1 for i in self.generators})

    def is_finite_type(self) -> bool:
        return all(e.index() != INFINITY for e in self.generators.values())

    # json -----------------------------------------------------------------

    @classmethod
    def from_json(cls, spec: dict) -> "DynamicalSystem":
        try:
            group = group_from_json(spec["group"])
            gens = {}
            for key, espec in spec["generators"].items():
                gid = int(key[1:]) if isinstance(key, str) and key.startswith("g") else int(key)
                gens[gid] = group.endo_from_json(espec)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSystem):
                raise
            raise InvalidSystem(f"malformed system description: {exc}") from exc
        meta = spec.get("metadata", {})
        return cls(group, gens, name=meta.get("name", spec.get("name", "")),
                   notes=meta.get("notes", ""))

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "generators": {f"g{i}": e.to_json() for i, e in self.generators.items()},
            "metadata": {"name": self.name, "notes": self.notes},
        }


def theta(sys: DynamicalSystem, p: PElement) -> Endomorphism:
    return sys.theta(p)


# --------------------------------------------------------------------------
# independence
# --------------------------------------------------------------------------


class Independence(enum.Enum):
    STRONGLY_INDEPENDENT = "StronglyIndependent"
    INDEPENDENT = "Independent"
    NOT_INDEPENDENT = "NotIndependent"


@dataclass(frozen=True)
class IndependenceResult:
    kind: Independence
    witness: Any = None  # element in the intersection but not in the product image
    cover_witness: Any = None  # element outside theta_p(G) + theta_q(G), if any

    @property
    def independent(self) -> bool:
        return self.kind is not Independence.NOT_INDEPENDENT


def check_independence(sys: DynamicalSystem, p: PElement, q: PElement) -> IndependenceResult:
    a, b = sys.theta(p), sys.theta(q)
    witness = a.intersection_witness(b)
    cover = a.cover_witness(b)
    if witness is not None:
        return IndependenceResult(Independence.NOT_INDEPENDENT, witness, cover)
    if cover is None:
        return IndependenceResult(Independence.STRONGLY_INDEPENDENT)
    return IndependenceResult(Independence.INDEPENDENT, None, cover)


@dataclass
class AxiomReport:
    passed: bool
    checked: list = field(default_factory=list)  # (p, q, expected_independent, result)
    counterexample: Optional[tuple] = None
    note: str = ("independence of relatively prime pairs reduces to generator pairs "
                 "(independence is stable under products); sampled pairs are checked too")


def _bounded_elements(gen_ids, bound):
    for exps in itertools.product(range(bound + 1), repeat=len(gen_ids)):
        yield PElement(dict(zip(gen_ids, exps)))


def check_axiom_C(sys: DynamicalSystem, sample_bound: int = 1) -> AxiomReport:
    """Check that theta_p, theta_q are independent exactly when p, q are coprime.

    Generator pairs ``(gi, gj)``, ``i != j``, must be independent and each
    self-pair ``(gi, gi)`` must not be.  In addition every pair of elements with
    exponents up to ``sample_bound`` is checked against the coprimality rule.
    """
    report = AxiomReport(passed=True)
    pairs: list[tuple[PElement, PElement]] = []
    ids = sys.gen_ids
    for i, j in itertools.combinations(ids, 2):
        pairs.append((PElement.gen(i), PElement.gen(j)))
    for i in ids:
        pairs.append((PElement.gen(i), PElement.gen(i)))
    elems = [p for p in _bounded_elements(ids, sample_bound) if not p.is_unit()]
    seen = set(pairs)
    for p, q in itertools.combinations_with_replacement(elems, 2):
        if (p, q) not in seen:
            pairs.append((p, q))
    for p, q in pairs:
        expected = p.gcd(q).is_unit()
        res = check_independence(sys, p, q)
        report.checked.append((p, q, expected, res))
        if res.independent != expected:
            report.passed = False
            report.counterexample = (p, q, res)
            break
    return report


# --------------------------------------------------------------------------
# minimality
# --------------------------------------------------------------------------


class Minimality(enum.Enum):
    CERTIFIED = "MinimalCertified"
    UP_TO = "MinimalUpTo"
    UNKNOWN = "Unknown"
    NOT_MINIMAL = "NotMinimal"


@dataclass(frozen=True)
class MinimalityResult:
    kind: Minimality
    radius: Optional[int] = None
    witness: Any = None
    reason: str = ""


def _lattice_certificate(endos: list[MatrixEndo]) -> Optional[str]:
    """Reason string when some generator T has trivial ``cap_n T^n Z^d``.

    The intersection is a T-invariant sublattice on which T is unimodular, so
    its characteristic polynomial is a product of integer irreducible factors
    of ``charpoly(T)`` with constant term +-1.  No such factor means trivial.
    """
    import sympy

    x = sympy.Symbol("x")
    for e in endos:
        poly = sympy.Matrix(e.matrix).charpoly(x)
        _, factors = sympy.factor_list(poly.as_expr(), x)
        if all(abs(sympy.Poly(f, x).eval(0)) != 1 for f, _ in factors):
            return f"charpoly of {e.matrix} has no factor with constant term +-1"
    return None


def _lattice_obstruction(group: LatticeZd, endos: list[MatrixEndo]):
    """A nonzero v with T v = +-v for every generator T (then v is in every image)."""
    from . import intlin

    d = group.dim
    for signs in itertools.product((1, -1), repeat=len(endos)):
        rows = []
        for s, e in zip(signs, endos):
            for i in range(d):
                rows.append([e.matrix[i][j] - s * int(i == j) for j in range(d)])
        ker = intlin.integer_kernel(rows)
        if ker:
            return ker[0]
    return None


def _family_certificate(group: Group, endos: list[Endomorphism]):
    """(certified, reason, obstruction) for the family generated by ``endos``."""
    nontrivial = [e for e in endos if not e.is_identity()]
    if isinstance(group, ShiftSum):
        if nontrivial:
            return True, "finite supports are pushed out by a nonzero shift", None
        return False, "", group.ball(1)[1]
    if isinstance(group, LatticeZd):
        if not nontrivial:
            return False, "", group.generators()[0]
        reason = _lattice_certificate(nontrivial)
        if reason:
            return True, reason, None
        return False, "", _lattice_obstruction(group, endos)
    if isinstance(group, DirectSum):
        reasons = []
        for i, part in enumerate(group.parts):
            ok, reason, obstruction = _family_certificate(part, [e.parts[i] for e in endos])
            if obstruction is not None:
                return False, "", group.embed(i, obstruction)
            if not ok:
                return False, "", None
            reasons.append(reason)
        return True, "; ".join(reasons), None
    return False, "", None


def check_minimality(sys: DynamicalSystem, radius: int = 3) -> MinimalityResult:
    endos = list(sys.generators.values())
    ok, reason, obstruction = _family_certificate(sys.group, endos)
    if ok:
        return MinimalityResult(Minimality.CERTIFIED, reason=reason)
    if obstruction is not None:
        return MinimalityResult(Minimality.NOT_MINIMAL, witness=obstruction,
                                reason="common +-1 eigenvector lies in every image")
    ident = sys.group.identity()
    max_power = 2 * radius + 2
    for g in sys.group.ball(radius):
        if g == ident:
            continue
        escaped = False
        for i in sys.gen_ids:
            for k in range(1, max_power + 1):
                if not sys.theta(PElement.gen(i, k)).in_image(g):
                    escaped = True
                    break
            if escaped:
                break
        if not escaped:
            return MinimalityResult(Minimality.UNKNOWN, radius=radius, witness=g,
                                    reason="element survives every tested image")
    return MinimalityResult(Minimality.UP_TO, radius=radius,
                            reason="every nonzero element of the ball escapes some image")


# --------------------------------------------------------------------------
# finite type
# --------------------------------------------------------------------------


def is_finite_type(sys: DynamicalSystem, p: PElement) -> bool:
    return sys.theta(p).index() != INFINITY


def finite_infinite_split(sys: DynamicalSystem, p: PElement) -> tuple[PElement, PElement]:
    """``p = p_fin * p_inf`` with ``p_fin`` the largest divisor of finite index.

    Indices multiply along products, so the split is generator-wise.
    """
    fin, inf = {}, {}
    for i, k in p.items():
        if sys.generators[i].index() == INFINITY:
            inf[i] = k
        else:
            fin[i] = k
    return PElement(fin), PElement(inf)


def index_of(sys: DynamicalSystem, p: PElement):
    idx = sys.theta(p).index()
    return idx if idx == INFINITY else int(idx)


def finite_type_table(sys: DynamicalSystem) -> dict[int, Any]:
    return {i: (e.index() if e.index() == INFINITY else int(e.index()))
            for i, e in sys.generators.items()}

