import pytest

from iads.cli import load_system
from iads.dynsys import DynamicalSystem
from iads.groups import LatticeZd, MatrixEndo
from iads.pmonoid import PElement

G0, G1, G2 = PElement.gen(0), PElement.gen(1), PElement.gen(2)
ONE = PElement()


def scalars(*factors):
    """``Z`` with one multiplication map per factor."""
    Z = LatticeZd(1)
    return DynamicalSystem(Z, {i: MatrixEndo(Z, ((f,),)) for i, f in enumerate(factors)})


def matrices(*mats):
    L = LatticeZd(len(mats[0]))
    return DynamicalSystem(L, {i: MatrixEndo(L, tuple(map(tuple, m))) for i, m in enumerate(mats)})


@pytest.fixture(scope="session")
def load():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_system(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def z23(load):
    return load("z_2_3")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
