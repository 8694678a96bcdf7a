"""Seeded property suites over a system, shared by the CLI and the tests.

Each suite returns a :class:`SuiteResult` counting checks and keeping the
first few failures in printable form.  Finite-type oracles work on the finite
quotient ``G / theta_L(G)`` for a level ``L`` refining everything involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coeffs import Gaussian
from .cosetlat import (Coset, coset_contains, coset_intersect, constellation_nonempty,
                       first_elements)
from .diagonal import (DiagonalElement, diag_mul, diag_norm,
                       max_subprojection, projection)
from .dynsys import DynamicalSystem, check_axiom_C, check_independence
from .groups import INFINITY
from .monoalg import (AlgebraElement, Monomial, covariance_check, mono_mul, mono_star,
                      unit as unit_monomial)
from .partialrep import (monomial_semantics, pinj_compose, truncate)
from .pmonoid import UNIT, PElement
from .sampling import (random_coset, random_diagonal, random_group_element, random_monomial,
                       random_pelement, random_positive_diagonal)

__all__ = ["SuiteResult", "SUITES", "run_suites", "brute_intersection", "brute_norm_squared",
           "cuntz_relations", "alternate_witness"]

MAX_KEPT = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    skipped: str = ""

    def tick(self, ok: bool, detail: Callable[[], str] | str = ""):
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_KEPT:
                self.failures.append(detail() if callable(detail) else str(detail))

    def merge(self, label: str, checked: int, failures: list):
        self.checked += checked
        self.failed += len(failures)
        for f in failures[:MAX_KEPT - len(self.failures)]:
            self.failures.append(f"{label}: {f}")

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        d = {"suite": self.name, "passed": self.passed, "checked": self.checked,
             "failed": self.failed, "failures": self.failures}
        if self.skipped:
            d["skipped"] = self.skipped
        return d


# --------------------------------------------------------------------------
# brute-force oracles
# --------------------------------------------------------------------------


def _classes(sys: DynamicalSystem, c: Coset, level: PElement) -> set:
    """The classes of ``G / theta_level(G)`` making up ``c`` (``c.p | level``)."""
    G, tp, tl = sys.group, sys.theta(c.p), sys.theta(level)
    return {tl.canonical_rep(G.op(c.g, tp(t))) for t in sys.theta(c.p.quotient(level)).transversal()}


def brute_intersection(sys: DynamicalSystem, c1: Coset, c2: Coset) -> set:
    level = c1.p.lcm(c2.p)
    return _classes(sys, c1, level) & _classes(sys, c2, level)


def brute_norm_squared(d: DiagonalElement) -> Fraction:
    """``max |d(x)|^2`` over the points of the finite quotient refining every term."""
    sys = d.sys
    level = UNIT
    for c in d.terms:
        level = level.lcm(c.p)
    terms = list(d.terms.items())
    # points with the same membership pattern take the same value
    patterns = {tuple(coset_contains(sys, c, x) for c, _ in terms)
                for x in sys.theta(level).transversal()}
    return max(sum((v for (_, v), hit in zip(terms, pat) if hit), Gaussian(0)).abs2()
               for pat in patterns)


def alternate_witness(sys: DynamicalSystem, p: PElement, q: PElement, witness, k):
    """Shift a factorisation ``g = theta_p(a) + theta_q(b)`` along the kernel direction."""
    G = sys.group
    a, b = witness
    return G.op(a, sys.theta(q)(k)), G.sub(b, sys.theta(p)(k))


def cuntz_relations(sys: DynamicalSystem) -> list[tuple[str, bool]]:
    """``t_k = u_{x_k} s`` over the transversal of the single generator:
    ``t_j^* t_k = delta_jk`` and ``sum_k t_k t_k^* = 1``."""
    (gid,) = sys.gen_ids
    p = PElement.gen(gid)
    ident = sys.group.identity()
    reps = sys.theta(p).transversal()
    ts = [Monomial(x, p, UNIT, ident) for x in reps]
    one = unit_monomial(sys)
    out = []
    for j, tj in enumerate(ts):
        for k, tk in enumerate(ts):
            prod = mono_mul(sys, mono_star(sys, tj), tk)
            out.append((f"t{j}* t{k}", prod == (one if j == k else None)))
    total = AlgebraElement(sys, [(mono_mul(sys, t, mono_star(sys, t)), 1) for t in ts])
    out.append(("sum t t* = 1", total.equivalent(AlgebraElement.of(sys, one))))
    return out


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------


def suite_pmonoid(sys, rng, samples):
    r = SuiteResult("pmonoid")
    for _ in range(samples):
        a, b = random_pelement(sys, rng, 3), random_pelement(sys, rng, 3)
        r.tick(a.gcd(b) * a.lcm(b) == a * b, lambda: f"gcd*lcm {a} {b}")
        r.tick(a.divides(b) == (a.gcd(b) == a) == (a.lcm(b) == b), lambda: f"divides {a} {b}")
        r.tick((a.gcd(b).is_unit()) == (a.lcm(b) == a * b), lambda: f"coprime {a} {b}")
    return r


def suite_groups(sys, rng, samples):
    r = SuiteResult("groups")
    G = sys.group
    for _ in range(samples):
        p, q = random_pelement(sys, rng), random_pelement(sys, rng)
        g = random_group_element(sys, rng)
        tp, tq = sys.theta(p), sys.theta(q)
        r.tick(tp.preimage(tp(g)) == g, lambda: f"left inverse {p} {g}")
        c = tp.canonical_rep(g)
        r.tick(tp.in_image(G.sub(g, c)) and tp.canonical_rep(c) == c, lambda: f"canonical {p} {g}")
        w = tp.factor(tq, g)
        if w is not None:
            r.tick(G.op(tp(w[0]), tq(w[1])) == g, lambda: f"factor {p} {q} {g}")
    for i in sys.gen_ids:
        t = sys.theta(PElement.gen(i))
        if t.index() != INFINITY:
            reps = t.transversal()
            prod = 1
            for f in t.invariant_factors():
                prod *= f
            r.tick(len(reps) == t.index() == prod, f"index of g{i}")
            r.tick(all(t.canonical_rep(x) == x for x in reps), f"transversal of g{i}")
    return r


def suite_dynsys(sys, rng, samples):
    r = SuiteResult("dynsys")
    rep = check_axiom_C(sys, 1)
    r.tick(rep.passed, lambda: f"axiom C: {rep.counterexample}")
    for _ in range(min(samples, 30)):
        p, q = random_pelement(sys, rng, 1), random_pelement(sys, rng, 1)
        a, b = check_independence(sys, p, q), check_independence(sys, q, p)
        r.tick(a.kind == b.kind, lambda: f"symmetry {p} {q}")
    return r


def suite_cosetlat(sys, rng, samples):
    r = SuiteResult("cosetlat")
    G = sys.group
    finite = sys.is_finite_type()
    for _ in range(samples):
        c1, c2 = random_coset(sys, rng), random_coset(sys, rng)
        got = coset_intersect(sys, c1, c2)
        if finite:
            want = brute_intersection(sys, c1, c2)
            have = set() if got is None else {got.g}
            r.tick(have == want, lambda: f"intersect {c1} {c2}: {got} vs {sorted(map(repr, want))}")
        if got is not None:
            r.tick(got.p == c1.p.lcm(c2.p), lambda: f"level {c1} {c2}")
            pts = first_elements(sys, got, 4)
            r.tick(all(coset_contains(sys, c1, x) and coset_contains(sys, c2, x) for x in pts),
                   lambda: f"containment {c1} {c2}")
            w = sys.theta(c1.p).factor(sys.theta(c2.p), G.sub(c2.g, c1.g))
            alt = alternate_witness(sys, c1.p, c2.p, w, random_group_element(sys, rng))
            r.tick(coset_intersect(sys, c1, c2, witness=alt) == got,
                   lambda: f"witness independence {c1} {c2}")
        base = random_coset(sys, rng, max_exp=1)
        blockers = [random_coset(sys, rng) for _ in range(rng.randint(1, 3))]
        wit = constellation_nonempty(sys, base, blockers)
        if wit is not None:
            ok = (wit.p.lcm(base.p) == wit.p and coset_contains(sys, base, wit.g)
                  and all(coset_intersect(sys, wit, b) is None for b in blockers))
            r.tick(ok, lambda: f"constellation {base} {blockers} -> {wit}")
        elif finite:
            level = base.p
            for b in blockers:
                level = level.lcm(b.p)
            covered = set()
            for b in blockers:
                covered |= _classes(sys, b, level)
            r.tick(_classes(sys, base, level) <= covered,
                   lambda: f"constellation empty {base} {blockers}")
    return r


def suite_diagonal(sys, rng, samples):
    r = SuiteResult("diagonal")
    finite = sys.is_finite_type()
    for _ in range(samples):
        d = random_diagonal(sys, rng, terms=4)
        if finite:
            r.tick(diag_norm(d).squared == brute_norm_squared(d), lambda: f"norm {d.format()}")
        a, b = random_diagonal(sys, rng, 2), random_diagonal(sys, rng, 2)
        r.tick(diag_mul(d, a) == diag_mul(a, d), lambda: "commutativity")
        r.tick(diag_mul(diag_mul(d, a), b) == diag_mul(d, diag_mul(a, b)), lambda: "associativity")
        pos = random_positive_diagonal(sys, rng, terms=4)
        c = max_subprojection(pos)
        e = projection(sys, c.g, c.p)
        norm = diag_norm(pos).value
        r.tick(diag_mul(pos, e) == e.scale(norm), lambda: f"subprojection {pos.format()}")
    return r


def suite_monoalg(sys, rng, samples):
    r = SuiteResult("monoalg")
    for _ in range(samples):
        a, b, c = (random_monomial(sys, rng) for _ in range(3))
        ab = mono_mul(sys, a, b)
        want = pinj_compose(monomial_semantics(sys, a), monomial_semantics(sys, b))
        r.tick((None if ab is None else monomial_semantics(sys, ab)) == want,
               lambda: f"oracle {a} {b}")
        r.tick(monomial_semantics(sys, mono_star(sys, a)) == monomial_semantics(sys, a).inverse(),
               lambda: f"star {a}")
        left = None if ab is None else mono_mul(sys, ab, c)
        bc = mono_mul(sys, b, c)
        right = None if bc is None else mono_mul(sys, a, bc)
        r.tick(left == right, lambda: f"associativity {a} {b} {c}")
        ba = mono_mul(sys, mono_star(sys, b), mono_star(sys, a))
        r.tick((None if ab is None else mono_star(sys, ab)) == ba, lambda: f"involution {a} {b}")
    cov = covariance_check(sys, samples, seed=rng.randrange(2**32))
    r.merge("covariance", sum(cov.checked.values()), [str(f) for f in cov.failures])
    return r


def suite_prodsys(sys, rng, samples):
    from .prodsys import cnp_representation_check, onb_check

    r = SuiteResult("prodsys")
    if not sys.is_finite_type():
        r.skipped = "needs finite type"
        return r
    onb = onb_check(sys, 36, seed=rng.randrange(2**32))
    r.merge("onb", sum(onb.checked.values()), [str(f) for f in onb.failures])
    rep = cnp_representation_check(sys, samples, seed=rng.randrange(2**32))
    r.merge("representation", sum(rep.checked.values()), [str(f) for f in rep.failures])
    return r


def suite_l2(sys, rng, samples, window_size: int = 64):
    r = SuiteResult("l2")
    window = l2_window(sys, window_size)
    for i in sys.gen_ids:
        p = PElement.gen(i)
        s = monomial_semantics(sys, Monomial(sys.group.identity(), p, UNIT, sys.group.identity()))
        mat = truncate(s, window)
        counts = mat.column_counts()
        r.tick(all(n <= 1 for n in counts), f"at most one entry per column for g{i}")
        interior = [j for j, y in enumerate(window) if s(y) in set(window)]
        r.tick(all(counts[j] == 1 for j in interior), f"isometry columns for g{i}")
    for _ in range(samples):
        m = random_monomial(sys, rng)
        f = monomial_semantics(sys, m)
        r.tick(all(f.inverse()(f(x)) == x for x in window if f(x) is not None),
               lambda: f"inverse on window {m}")
    return r


def l2_window(sys, size: int) -> list:
    from .groups import LatticeZd, ShiftSum

    G = sys.group
    if isinstance(G, LatticeZd):
        radius = max(1, round(size ** (1 / G.dim) / 2))
        from .partialrep import lattice_window
        return lattice_window(G.dim, radius)
    if isinstance(G, ShiftSum):
        out = []
        for x in G.enumerate():
            out.append(x)
            if len(out) >= size:
                return out
    out = []
    for x in G.enumerate():
        out.append(x)
        if len(out) >= size:
            return out
    return out  # pragma: no cover


def suite_cuntz(sys, rng, samples):
    r = SuiteResult("cuntz")
    if len(sys.gen_ids) != 1 or not sys.is_finite_type():
        r.skipped = "needs a single generator of finite index"
        return r
    for name, ok in cuntz_relations(sys):
        r.tick(ok, name)
    return r


SUITES = {
    "pmonoid": suite_pmonoid,
    "groups": suite_groups,
    "dynsys": suite_dynsys,
    "cosetlat": suite_cosetlat,
    "diagonal": suite_diagonal,
    "monoalg": suite_monoalg,
    "prodsys": suite_prodsys,
    "l2": suite_l2,
    "cuntz": suite_cuntz,
}


def run_suites(sys: DynamicalSystem, samples: int = 200, seed: int = 0,
               names=None) -> list[SuiteResult]:
    """Run the named suites (all by default), each from its own seeded stream."""
    out = []
    for name in names or SUITES:
        rng = random.Random(f"{seed}:{name}")
        out.append(SUITES[name](sys, rng, samples))
    return out
