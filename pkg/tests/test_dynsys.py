import pytest

from conftest import G0, G1, ONE, matrices, scalars
from iads.dynsys import (DynamicalSystem, Independence, Minimality, check_axiom_C,
                         check_independence, check_minimality, finite_infinite_split,
                         is_finite_type, theta)
from iads.errors import DomainError, InvalidSystem
from iads.groups import LatticeZd, MatrixEndo
from iads.pmonoid import PElement

T1 = ((2, 1), (0, 3))


def test_theta(z23):
    assert theta(z23, G0 * G1)((1,)) == (6,)
    assert theta(z23, ONE).is_identity()
    sys = matrices(T1)
    assert theta(sys, PElement.gen(0, 2)).matrix == ((4, 5), (0, 9))
    with pytest.raises(DomainError):
        theta(z23, PElement.gen(7))


def test_independence_examples(z23, load):
    assert check_independence(z23, G0, G1).kind is Independence.STRONGLY_INDEPENDENT
    res = check_independence(scalars(2, 2), G0, G1)
    assert res.kind is Independence.NOT_INDEPENDENT
    assert res.witness[0] % 2 == 0 and res.witness[0] % 4 != 0
    pair = load("shift_pair")
    assert check_independence(pair, G0, G1).kind is Independence.INDEPENDENT


def test_axiom_C():
    assert check_axiom_C(scalars(2, 3), 2).passed
    bad = check_axiom_C(scalars(2, 4))
    assert not bad.passed
    p, q, res = bad.counterexample
    assert {p, q} == {G0, G1} and res.witness is not None
    w = res.witness[0]
    assert w % 2 == 0 and w % 4 == 0 and w % 8 != 0
    assert check_axiom_C(matrices(((2, 0), (0, 2)), ((3, 0), (0, 3))), 1).passed


def test_bundled_systems_satisfy_axiom_C(load):
    for name in ("z_2_3", "z_2_3_5", "matrix", "shift2", "shift3", "shift_pair", "direct_sum"):
        assert check_axiom_C(load(name), 1).passed, name


def test_minimality(z23, load):
    assert check_minimality(z23).kind is Minimality.CERTIFIED
    assert check_minimality(load("shift2")).kind is Minimality.CERTIFIED
    res = check_minimality(matrices(((2, 0), (0, 1))))
    assert res.kind is Minimality.NOT_MINIMAL
    assert res.witness in ((0, 1), (0, -1))


def test_finite_type(load):
    assert is_finite_type(scalars(2), PElement.gen(0, 3))
    assert theta(scalars(2), PElement.gen(0, 3)).index() == 8
    pair = load("shift_pair")
    assert not is_finite_type(pair, G0)
    ds = load("direct_sum")
    assert ds.theta(G0 * G1).index() == 12
    assert finite_infinite_split(pair, G0 * G1) == (ONE, G0 * G1)
    assert finite_infinite_split(ds, G0 * G1) == (G0 * G1, ONE)


def test_invalid_systems():
    Z = LatticeZd(1)
    with pytest.raises(InvalidSystem):
        DynamicalSystem(Z, {0: Z.identity_endo()})
    Z2 = LatticeZd(2)
    with pytest.raises(InvalidSystem):
        DynamicalSystem(Z2, {0: MatrixEndo(Z2, T1), 1: MatrixEndo(Z2, ((1, 0), (1, 2)))})
    with pytest.raises(InvalidSystem):
        DynamicalSystem.from_json({"group": {"type": "lattice", "dim": 1}})


def test_independence_symmetry_and_products(load):
    sys = load("z_2_3_5")
    gens = [PElement.gen(i) for i in sys.gen_ids]
    for p in gens:
        for q in gens:
            assert check_independence(sys, p, q).kind == check_independence(sys, q, p).kind
    for p in gens:
        others = [q for q in gens if q != p]
        both = others[0] * others[1]
        joint = check_independence(sys, p, both).independent
        assert joint == all(check_independence(sys, p, q).independent for q in others)
