"""Seeded random generators for group elements, monoid elements and friends."""

from __future__ import annotations

import random
from fractions import Fraction

from .cosetlat import Coset, make_coset
from .diagonal import DiagonalElement
from .dynsys import DynamicalSystem
from .pmonoid import PElement

__all__ = ["random_group_element", "random_pelement", "random_coset", "random_monomial",
           "random_diagonal", "random_positive_diagonal"]


def random_group_element(sys: DynamicalSystem, rng: random.Random, size: int = 3):
    return sys.group.random(rng, size)


def random_pelement(sys: DynamicalSystem, rng: random.Random, max_exp: int = 2) -> PElement:
    return PElement({i: rng.randint(0, max_exp) for i in sys.gen_ids})


def random_coset(sys: DynamicalSystem, rng: random.Random, size: int = 3,
                 max_exp: int = 2) -> Coset:
    return make_coset(sys, random_group_element(sys, rng, size), random_pelement(sys, rng, max_exp))


def random_monomial(sys: DynamicalSystem, rng: random.Random, size: int = 3, max_exp: int = 2):
    from .monoalg import mono_canonicalize

    return mono_canonicalize(sys, random_group_element(sys, rng, size),
                             random_pelement(sys, rng, max_exp),
                             random_pelement(sys, rng, max_exp),
                             random_group_element(sys, rng, size))


def random_diagonal(sys: DynamicalSystem, rng: random.Random, terms: int = 5,
                    size: int = 3, max_exp: int = 2, coeff_range: int = 4) -> DiagonalElement:
    out = {}
    for _ in range(rng.randint(1, terms)):
        c = random_coset(sys, rng, size, max_exp)
        out[c] = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
    return DiagonalElement(sys, out)


def random_positive_diagonal(sys: DynamicalSystem, rng: random.Random, terms: int = 5,
                             size: int = 3, max_exp: int = 2) -> DiagonalElement:
    out = {}
    for _ in range(rng.randint(1, terms)):
        c = random_coset(sys, rng, size, max_exp)
        out[c] = out.get(c, 0) + Fraction(rng.randint(1, 6), rng.randint(1, 3))
    return DiagonalElement(sys, out)
