import random
from fractions import Fraction

import pytest

from dqlie.invariants import monomials
from dqlie.lie_core import catalog
from dqlie.symalg import Poly, parse_poly


def rand_rat(rng: random.Random, height: int = 5) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def random_poly(L, rng: random.Random, max_degree: int = 3, nterms: int = 3, degree: int | None = None) -> Poly:
    """Random polynomial; homogeneous of ``degree`` when given."""
    if degree is not None:
        pool = monomials(L.dim, degree)
    else:
        pool = [e for d in range(max_degree + 1) for e in monomials(L.dim, d)]
    terms = {}
    for e in rng.sample(pool, min(nterms, len(pool))):
        terms[e] = rand_rat(rng)
    return Poly(L, terms)


@pytest.fixture(scope="session")
def sl2():
    return catalog("sl2")


@pytest.fixture(scope="session")
def so3():
    return catalog("so3")


@pytest.fixture(scope="session")
def sl3():
    return catalog("sl3")


@pytest.fixture(scope="session")
def heis():
    return catalog("heisenberg3")


@pytest.fixture(scope="session")
def aff():
    return catalog("affine1")


@pytest.fixture
def P(sl2):
    return lambda s, L=sl2: parse_poly(L, s)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
