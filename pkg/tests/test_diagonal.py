import random
from fractions import Fraction

import pytest

from conftest import G0, G1
from iads.coeffs import Gaussian
from iads.cosetlat import make_coset
from iads.diagonal import (DiagonalElement, cnp3_expand, cofinal_chain, diag_is_positive,
                           diag_mul, diag_norm, iota_level, level_map, max_subprojection,
                           projection, spectrum_level, tau_act)
from iads.errors import DomainError, InfiniteIndex
from iads.sampling import random_diagonal, random_positive_diagonal
from iads.suites import brute_norm_squared


def e(sys, g, p):
    return projection(sys, (g,), p)


def test_products(z23):
    assert diag_mul(e(z23, 0, G0), e(z23, 0, G1)) == e(z23, 0, G0 * G1)
    assert diag_mul(e(z23, 1, G0), e(z23, 2, G1)) == e(z23, 5, G0 * G1)
    assert not diag_mul(e(z23, 0, G0), e(z23, 1, G0))


def test_partition_of_unity(z23, load):
    assert cnp3_expand(z23, G0) == e(z23, 0, G0) + e(z23, 1, G0)
    assert len(cnp3_expand(load("matrix"), G0).terms) == 6
    unit = cnp3_expand(z23, G0)
    assert diag_mul(unit, unit) == unit
    x = e(z23, 1, G0) * 3 + e(z23, 0, G0 * G0)
    assert diag_mul(cnp3_expand(z23, G0), x) == x
    with pytest.raises(InfiniteIndex):
        cnp3_expand(load("shift_pair"), G0)


def test_norms(z23):
    assert diag_norm(e(z23, 0, G0) + e(z23, 0, G1)).value == 2
    assert diag_norm(e(z23, 0, G0) - e(z23, 1, G0)).value == 1
    res = diag_norm(e(z23, 0, G0) + e(z23, 1, G0))
    assert res.value == 1 and len(res.subset) == 1


def test_complex_norm(z23):
    d = DiagonalElement(z23, {make_coset(z23, (0,), G0): Gaussian(1, 1),
                              make_coset(z23, (0,), G1): Gaussian(2)})
    res = diag_norm(d)
    assert res.squared == Fraction(10)
    assert res.value is None
    assert abs(float(res) - 10 ** 0.5) < 1e-12


def test_tau(z23):
    assert tau_act(z23, (1,), e(z23, 0, G0)) == e(z23, 1, G0)
    assert tau_act(z23, (2,), e(z23, 1, G0)) == e(z23, 1, G0)
    d = e(z23, 0, G0) + e(z23, 0, G1)
    assert diag_norm(tau_act(z23, (6,), d)).value == 2


def test_spectrum_levels(z23):
    assert iota_level(z23, (5,), G0 * G1) == (5,)
    fine = spectrum_level(z23, G0 * G1)
    assert len(fine.points) == 6
    assert level_map(z23, fine, G0)[(5,)] == (1,)
    with pytest.raises(DomainError):
        level_map(z23, spectrum_level(z23, G0), G1)


def test_separation(z23):
    for g in range(-10, 11):
        for h in range(g + 1, 11):
            a = 0
            while 2 ** a <= h - g:
                a += 1
            p = G0 ** a
            assert iota_level(z23, (g,), p) != iota_level(z23, (h,), p)


def test_cofinal_chain(z23):
    chain = cofinal_chain(z23, 3)
    assert [str(c.p) for c in chain] == ["g0*g1", "g0^2*g1^2", "g0^3*g1^3"]
    assert [c.index for c in chain] == [6, 36, 216]
    for a, b in zip(chain, chain[1:]):
        assert a.p.divides(b.p)


def test_subprojection(z23):
    d = e(z23, 0, G0) * 2 + e(z23, 0, G1) * 3
    c = max_subprojection(d)
    ec = projection(z23, c.g, c.p)
    assert diag_mul(d, ec) == ec.scale(5)
    with pytest.raises(DomainError):
        max_subprojection(e(z23, 0, G0) * -1)


@pytest.mark.parametrize("name", ["z_2_3", "matrix", "direct_sum", "shift2"])
def test_norm_matches_point_evaluation(load, name):
    sys = load(name)
    rng = random.Random(11)
    for _ in range(25):
        d = random_diagonal(sys, rng, terms=4)
        assert diag_norm(d).squared == brute_norm_squared(d)


def test_positive_elements_are_positive(z23):
    rng = random.Random(5)
    for _ in range(20):
        assert diag_is_positive(random_positive_diagonal(z23, rng))


def test_diag_mul_commutes_and_associates(load):
    sys = load("shift_pair")
    rng = random.Random(2)
    for _ in range(20):
        a, b, c = (random_diagonal(sys, rng, 3) for _ in range(3))
        assert diag_mul(a, b) == diag_mul(b, a)
        assert diag_mul(diag_mul(a, b), c) == diag_mul(a, diag_mul(b, c))
