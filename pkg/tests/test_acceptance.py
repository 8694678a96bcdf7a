"""Acceptance criteria 1-10, each with its runtime budget.

Run under pytest (a summary line per criterion is printed at the end of the
session) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from iads.cli import load_system
from iads.cosetlat import coset_intersect
from iads.diagonal import (diag_mul, diag_norm, iota_level, level_map, max_subprojection,
                           projection, spectrum_level)
from iads.dynsys import Independence, check_axiom_C, check_independence
from iads.monoalg import covariance_check, mono_mul, mono_star
from iads.partialrep import cnp3_defect, monomial_semantics, pinj_compose
from iads.pmonoid import PElement
from iads.prodsys import cnp_representation_check, onb_check
from iads.sampling import random_coset, random_diagonal, random_monomial, random_positive_diagonal
from iads.suites import brute_intersection, brute_norm_squared, cuntz_relations

SEED = 20240601
VALID_SYSTEMS = ["z_2_3", "z_2_3_5", "matrix", "shift2", "shift3", "shift_pair", "direct_sum"]
RESULTS: dict[int, tuple[bool, str]] = {}


class Criterion:
    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what):
        if not ok and len(self.failures) < 5:
            self.failures.append(what() if callable(what) else str(what))
        return ok

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        if exc[0] is not None:
            self.failures.append(f"raised {exc[1]!r}")
        self.check(elapsed < self.budget, f"took {elapsed:.2f}s, budget {self.budget}s")
        ok = not self.failures
        detail = "; ".join(self.notes) if ok else " | ".join(self.failures)
        RESULTS[self.number] = (ok, f"{self.title}: {detail}")
        return False

    def verdict(self):
        assert not self.failures, self.failures


def criterion_1():
    with Criterion(1, "Cuntz relations for the shift on n=2,3", 1.0) as c:
        for name in ("shift2", "shift3"):
            rel = cuntz_relations(load_system(name))
            for label, ok in rel:
                c.check(ok, f"{name}: {label}")
            c.notes.append(f"{name} {len(rel)} relations exact")
    return c


def criterion_2():
    with Criterion(2, "independence iff coprime on (Z; 2, 3, 5)", 1.0) as c:
        sys = load_system("z_2_3_5")
        gens = [PElement.gen(i) for i in sys.gen_ids]
        for p, q in itertools.combinations(gens, 2):
            res = check_independence(sys, p, q)
            c.check(res.kind is Independence.STRONGLY_INDEPENDENT, f"{p},{q} -> {res.kind}")
        for p in gens:
            res = check_independence(sys, p, p)
            tp = sys.theta(p)
            w = res.witness
            c.check(res.kind is Independence.NOT_INDEPENDENT and w is not None
                    and tp.in_image(w) and not sys.theta(p * p).in_image(w), f"{p},{p} witness {w}")
        rep = check_axiom_C(load_system("z_2_4"))
        ok = not rep.passed and rep.counterexample is not None
        if ok:
            p, q, res = rep.counterexample
            bad = load_system("z_2_4")
            w = res.witness
            ok = (w is not None and bad.theta(p).in_image(w) and bad.theta(q).in_image(w)
                  and not bad.theta(p * q).in_image(w))
            c.notes.append(f"(2, 4) fails with witness {w[0]}")
        c.check(ok, "broken system not rejected with a witness")
    return c


def criterion_3():
    with Criterion(3, "intersection formula vs brute force, 500 pairs per system", 5.0) as c:
        for name in ("z_2_3", "matrix"):
            sys = load_system(name)
            rng = random.Random(SEED)
            agree = 0
            for _ in range(500):
                a, b = random_coset(sys, rng, size=6), random_coset(sys, rng, size=6)
                got = coset_intersect(sys, a, b)
                ok = ({got.g} if got else set()) == brute_intersection(sys, a, b)
                agree += c.check(ok, f"{name}: {a} & {b} -> {got}")
            c.notes.append(f"{name} {agree}/500")
    return c


def criterion_4():
    with Criterion(4, "diagonal norm vs point evaluation, 200 elements per system", 10.0) as c:
        for name in ("z_2_3", "matrix"):
            sys = load_system(name)
            rng = random.Random(SEED)
            agree = 0
            for _ in range(200):
                d = random_diagonal(sys, rng, terms=5, max_exp=1 if name == "matrix" else 2)
                agree += c.check(diag_norm(d).squared == brute_norm_squared(d), lambda: d.format())
            c.notes.append(f"{name} {agree}/200")
    return c


def criterion_5():
    with Criterion(5, "subprojection d e = ||d|| e, 100 positive elements per system", 5.0) as c:
        for name in ("z_2_3", "matrix", "shift_pair"):
            sys = load_system(name)
            rng = random.Random(SEED)
            agree = 0
            for _ in range(100):
                d = random_positive_diagonal(sys, rng, terms=5, max_exp=1)
                w = max_subprojection(d)
                e = projection(sys, w.g, w.p)
                agree += c.check(diag_mul(d, e) == e.scale(diag_norm(d).value), lambda: d.format())
            c.notes.append(f"{name} {agree}/100")
    return c


def criterion_6():
    with Criterion(6, "monomials vs partial injections on every valid bundled system", 10.0) as c:
        total = 0
        for name in VALID_SYSTEMS:
            sys = load_system(name)
            rng = random.Random(SEED)
            for _ in range(1000):
                a, b = random_monomial(sys, rng), random_monomial(sys, rng)
                ab = mono_mul(sys, a, b)
                want = pinj_compose(monomial_semantics(sys, a), monomial_semantics(sys, b))
                c.check((None if ab is None else monomial_semantics(sys, ab)) == want,
                        f"{name}: {a} * {b}")
                c.check(monomial_semantics(sys, mono_star(sys, a))
                        == monomial_semantics(sys, a).inverse(), f"{name}: star {a}")
            for _ in range(500):
                a, b, d = (random_monomial(sys, rng) for _ in range(3))
                ab, bd = mono_mul(sys, a, b), mono_mul(sys, b, d)
                left = None if ab is None else mono_mul(sys, ab, d)
                right = None if bd is None else mono_mul(sys, a, bd)
                c.check(left == right, f"{name}: associativity {a} {b} {d}")
            total += 1
        c.notes.append(f"{total} systems x (1000 pairs + 500 triples)")
    return c


def criterion_7():
    with Criterion(7, "covariance identities (i)-(iii), 200 samples per system", 5.0) as c:
        for name in VALID_SYSTEMS:
            rep = covariance_check(load_system(name), 200, seed=SEED)
            for f in rep.failures:
                c.check(False, f"{name}: {f}")
        c.notes.append(f"{len(VALID_SYSTEMS)} systems")
    return c


def criterion_8():
    with Criterion(8, "product-system identities", 10.0) as c:
        for name in ("z_2_3", "matrix"):
            sys = load_system(name)
            onb = onb_check(sys, 36, samples=3, seed=SEED)
            rep = cnp_representation_check(sys, 200, seed=SEED)
            for f in onb.failures + rep.failures:
                c.check(False, f"{name}: {f}")
            c.notes.append(f"{name} {sum(onb.checked.values()) + sum(rep.checked.values())} checks")
    return c


def criterion_9():
    with Criterion(9, "iota separates [-50, 50] and commutes with level maps", 5.0) as c:
        sys = load_system("z_2_3")
        levels = [PElement({0: a, 1: b}) for a in range(13) for b in range(13)]
        levels.sort(key=lambda p: sys.theta(p).index())
        pts = [(x,) for x in range(-50, 51)]
        for x, y in itertools.combinations(pts, 2):
            c.check(any(iota_level(sys, x, p) != iota_level(sys, y, p) for p in levels),
                    f"{x} and {y} not separated")
        small = [p for p in levels if sys.theta(p).index() <= 432]
        for fine in small:
            lev = spectrum_level(sys, fine)
            for coarse in small:
                if not coarse.divides(fine):
                    continue
                table = level_map(sys, lev, coarse)
                for x in pts:
                    c.check(table[iota_level(sys, x, fine)] == iota_level(sys, x, coarse),
                            f"level map {fine}->{coarse} at {x}")
        for fine in levels:
            for x in pts[::10]:
                for coarse in (PElement.gen(0), PElement.gen(1)):
                    if coarse.divides(fine):
                        c.check(iota_level(sys, iota_level(sys, x, fine), coarse)
                                == iota_level(sys, x, coarse), f"{fine}->{coarse} at {x}")
        c.notes.append(f"{len(pts) * (len(pts) - 1) // 2} pairs, {len(small)} enumerated levels")
    return c


def criterion_10():
    with Criterion(10, "partition of unity: norm vs strong behaviour", 5.0) as c:
        z = load_system("z_2_3")
        g0 = PElement.gen(0)
        window = [(x,) for x in range(10)]
        full = cnp3_defect(z, g0, window, [(0,), (1,)])
        half = cnp3_defect(z, g0, window, [(0,)])
        c.check(full == 0, f"finite type full transversal defect {full}")
        c.check(half == Fraction(1, 2), f"finite type half defect {half}")
        pair = load_system("shift_pair")
        G = pair.group
        for K in (2, 3, 4):
            window = G.supported_on([(0, k) for k in range(K + 1)])
            candidates = G.supported_on([(0, k) for k in range(K)])
            defects = [cnp3_defect(pair, g0, window, candidates[:n])
                       for n in range(1, len(candidates) + 1)]
            c.check(all(a > b for a, b in zip(defects, defects[1:])), f"K={K} not decreasing")
            c.check(min(defects) >= Fraction(1, 2), f"K={K} minimum {min(defects)}")
            c.check(all(d > 0 for d in defects), f"K={K} reached zero")
            c.notes.append(f"K={K}: {defects[0]} -> {defects[-1]}")
        c.notes.insert(0, f"finite type {half} -> {full}")
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    criterion().verdict()


def report_lines() -> list[str]:
    return [f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {text}"
            for n, (ok, text) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for crit in CRITERIA:
        crit()
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
