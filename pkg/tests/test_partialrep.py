import random
from fractions import Fraction

import pytest

from conftest import G0, G1
from iads.monoalg import e, isometry, mono_mul, mono_star, s
from iads.partialrep import (cnp3_defect, identity_injection, lattice_window, monomial_semantics,
                             pinj_compose, shift_window, truncate)
from iads.pmonoid import PElement
from iads.sampling import random_monomial


def sem(sys, m):
    return monomial_semantics(sys, m)


def test_semantics(z23):
    f = sem(z23, isometry(z23, (1,), G0))
    assert [f((x,)) for x in range(-2, 3)] == [(-3,), (-1,), (1,), (3,), (5,)]
    g = sem(z23, mono_star(z23, s(z23, G0)))
    assert g((6,)) == (3,) and g((5,)) is None
    p = sem(z23, e(z23, (1,), G0))
    assert p((7,)) == (7,) and p((4,)) is None


def test_composition(z23):
    f = pinj_compose(sem(z23, mono_star(z23, s(z23, G0))), sem(z23, isometry(z23, (1,), G1)))
    for x in range(-7, 8):
        assert f((x,)) == (((3 * x + 1) // 2,) if x % 2 else None)
    k = sem(z23, isometry(z23, (2,), G1))
    assert pinj_compose(k, identity_injection(z23)) == k
    assert pinj_compose(sem(z23, mono_star(z23, s(z23, G0))), sem(z23, isometry(z23, (1,), G0))) is None
    assert pinj_compose(None, k) is None


@pytest.mark.parametrize("name", ["z_2_3", "matrix", "shift3", "shift_pair", "direct_sum"])
def test_homomorphism_and_adjoint(load, name):
    sys = load(name)
    rng = random.Random(21)
    for _ in range(80):
        a, b = random_monomial(sys, rng), random_monomial(sys, rng)
        ab = mono_mul(sys, a, b)
        want = pinj_compose(sem(sys, a), sem(sys, b))
        assert (None if ab is None else sem(sys, ab)) == want
        assert sem(sys, mono_star(sys, a)) == sem(sys, a).inverse()


def test_distinct_monomials_have_distinct_maps(z23):
    rng = random.Random(8)
    monos = {random_monomial(z23, rng, size=4) for _ in range(150)}
    window = lattice_window(1, 200)
    seen = {}
    for m in monos:
        f = sem(z23, m)
        key = tuple(f(x) for x in window)
        assert key not in seen or seen[key] == m
        seen[key] = m


def test_truncation_is_isometric_inside_window(load):
    for name in ("z_2_3", "shift2"):
        sys = load(name)
        window = lattice_window(1, 20) if name == "z_2_3" else shift_window(sys, [(0,), (1,), (2,)])
        for i in sys.gen_ids:
            f = sem(sys, s(sys, PElement.gen(i)))
            op = truncate(f, window)
            counts = op.column_counts()
            inside = [j for j, y in enumerate(window) if f(y) in window]
            assert all(c <= 1 for c in counts)
            assert all(counts[j] == 1 for j in inside)
            dense = op.matrix.toarray()
            gram = dense.T @ dense
            for j in inside:
                assert gram[j, j] == 1
                assert all(gram[j, k] == 0 for k in inside if k != j)


def test_defect_finite_type(z23):
    window = [(x,) for x in range(10)]
    assert cnp3_defect(z23, G0, window, [(0,), (1,)]) == 0
    assert cnp3_defect(z23, G0, window, [(0,)]) == Fraction(1, 2)
