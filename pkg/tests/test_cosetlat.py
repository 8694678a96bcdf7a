import random

import pytest

from conftest import G0, G1, ONE, matrices
from iads.cosetlat import (avoid_orbit_tails, constellation_nonempty, coset_contains,
                           coset_intersect, coset_subset, make_coset)
from iads.errors import NeedsUnitP
from iads.pmonoid import PElement
from iads.sampling import random_coset
from iads.suites import alternate_witness, brute_intersection


def C(sys, g, p):
    return make_coset(sys, (g,) if isinstance(g, int) else g, p)


def test_contains(z23):
    assert coset_contains(z23, C(z23, 1, G0), (7,))
    assert not coset_contains(z23, C(z23, 1, G0), (4,))
    m = matrices(((2, 1), (0, 3)))
    assert coset_contains(m, C(m, (0, 0), G0), (3, 3))


def test_intersections(z23):
    assert coset_intersect(z23, C(z23, 0, G0), C(z23, 0, G1)) == C(z23, 0, G0 * G1)
    assert coset_intersect(z23, C(z23, 1, G0), C(z23, 2, G1)) == C(z23, 5, G0 * G1)
    assert coset_intersect(z23, C(z23, 0, G0), C(z23, 1, G0)) is None


def test_canonical_cosets_compare_by_value(z23):
    assert C(z23, 7, G0) == C(z23, 1, G0)
    assert C(z23, 5, G0 * G1) == C(z23, -1, G0 * G1)


def test_constellation(z23):
    two = PElement.gen(0, 2)
    w = constellation_nonempty(z23, C(z23, 0, G0), [C(z23, 0, two)])
    assert w is not None and coset_subset(z23, w, C(z23, 0, G0))
    assert coset_intersect(z23, w, C(z23, 0, two)) is None
    assert constellation_nonempty(z23, C(z23, 0, G0), [C(z23, 0, G0)]) is None
    six = G0 * G1
    assert constellation_nonempty(z23, C(z23, 0, G0),
                                  [C(z23, 0, six), C(z23, 2, six), C(z23, 4, six)]) is None


def test_constellation_infinite_index(load):
    pair = load("shift_pair")
    G = pair.group
    base = make_coset(pair, G.identity(), ONE)
    blockers = [make_coset(pair, G.from_literal(d), G0)
                for d in ({}, {(0, 0): 1}, {(0, 1): 1})]
    w = constellation_nonempty(pair, base, blockers)
    assert w is not None
    assert all(coset_intersect(pair, w, b) is None for b in blockers)
    # the two classes of theta_g0 restricted to position (0,0) cover everything
    full = [make_coset(pair, G.from_literal(d), PElement()) for d in ({},)]
    assert constellation_nonempty(pair, base, full) is None


def test_avoid_orbit_tails(z23):
    start = C(z23, 0, G0)
    c = avoid_orbit_tails(z23, start, [((0,), G1)])
    assert coset_subset(z23, c, start) and not coset_contains(z23, c, (0,))
    assert avoid_orbit_tails(z23, start, [((1,), G1)]) == start
    c = avoid_orbit_tails(z23, start, [((0,), G1), ((2,), G1)])
    assert coset_subset(z23, c, start)
    assert not coset_contains(z23, c, (0,)) and not coset_contains(z23, c, (2,))
    with pytest.raises(NeedsUnitP):
        avoid_orbit_tails(z23, start, [((0,), ONE)])


@pytest.mark.parametrize("name", ["z_2_3", "matrix", "direct_sum", "shift3"])
def test_intersection_matches_brute_force(load, name):
    sys = load(name)
    rng = random.Random(7)
    for _ in range(60):
        a, b = random_coset(sys, rng), random_coset(sys, rng)
        got = coset_intersect(sys, a, b)
        assert ({got.g} if got else set()) == brute_intersection(sys, a, b)


@pytest.mark.parametrize("name", ["z_2_3", "matrix", "shift_pair", "direct_sum"])
def test_witness_independence(load, name):
    sys = load(name)
    rng = random.Random(3)
    G = sys.group
    for _ in range(40):
        a, b = random_coset(sys, rng), random_coset(sys, rng)
        w = sys.theta(a.p).factor(sys.theta(b.p), G.sub(b.g, a.g))
        if w is None:
            continue
        alt = alternate_witness(sys, a.p, b.p, w, G.random(rng, 3))
        assert coset_intersect(sys, a, b, witness=alt) == coset_intersect(sys, a, b)
