import random

import pytest

from conftest import random_poly
from dqlie.invariants import invariant_basis
from dqlie.lie_core import catalog
from dqlie.star import b_k, gutt_star, kontsevich_star, verify_invariant_star
from dqlie.symalg import Poly, parse_poly, poisson_bracket

ASSOC_ALGEBRAS = ["sl2", "so3", "heisenberg3", "affine1"]


def test_gutt_examples(sl2, P):
    assert gutt_star(P("e"), P("f")) == P("e*f + 1/2*h")
    assert gutt_star(P("f"), P("e")) == P("e*f - 1/2*h")
    L = catalog("abelian(2)")
    f, g = parse_poly(L, "x1^2 - x2"), parse_poly(L, "3*x1*x2 + 1")
    assert gutt_star(f, g) == f * g


def test_kontsevich_examples(sl2, P):
    om = P("e*f + 1/4*h^2")
    assert kontsevich_star(om, om) == om * om
    assert kontsevich_star(P("e"), P("f")) == P("e*f + 1/2*h - 1/6")
    L = catalog("abelian(2)")
    f, g = parse_poly(L, "x1^3"), parse_poly(L, "x1*x2^2")
    assert kontsevich_star(f, g) == f * g


def test_b_k_examples(sl2, P):
    e, f = P("e"), P("f")
    assert b_k(e, f, 0) == e * f
    assert b_k(e, f, 1) == P("1/2*h")
    assert b_k(e, f, 2) == P("-1/6")
    assert b_k(e, f, 3) == 0
    L = catalog("abelian(3)")
    for k in range(1, 4):
        assert b_k(parse_poly(L, "x1*x2"), parse_poly(L, "x3^2 + x1"), k) == 0
    with pytest.raises(ValueError):
        b_k(e, f, -1)


def test_non_invariant_counterexample(sl2, P):
    assert kontsevich_star(P("e"), P("f")) - P("e*f") == P("1/2*h - 1/6")


@pytest.mark.parametrize("name", ASSOC_ALGEBRAS)
@pytest.mark.parametrize("product", [gutt_star, kontsevich_star], ids=["gutt", "kontsevich"])
def test_associativity(name, product):
    L = catalog(name)
    rng = random.Random(ASSOC_ALGEBRAS.index(name))
    for _ in range(100):
        f, g, h = (random_poly(L, rng, max_degree=2, nterms=2) for _ in range(3))
        assert product(product(f, g), h) == product(f, product(g, h))


@pytest.mark.parametrize("name", ["sl2", "affine1"])
def test_parity_and_first_order(name):
    L = catalog(name)
    rng = random.Random(11)
    for _ in range(100):
        f = random_poly(L, rng, nterms=2, degree=rng.randint(1, 3))
        g = random_poly(L, rng, nterms=2, degree=rng.randint(1, 3))
        for k in range(1, 5):
            assert b_k(f, g, k) == (-1) ** k * b_k(g, f, k)
        assert b_k(f, g, 1) - b_k(g, f, 1) == poisson_bracket(f, g)
        assert b_k(f, g, 1) * 2 == poisson_bracket(f, g)


@pytest.mark.parametrize("name", ["sl2", "so3", "sl3"])
def test_invariants_commute_and_odd_terms_vanish(name):
    L = catalog(name)
    basis = [f for d in range(1, 4) for f in invariant_basis(L, d)]
    for f in basis:
        for g in basis:
            assert kontsevich_star(f, g) == kontsevich_star(g, f)
            for k in (1, 3):
                assert b_k(f, g, k) == 0


def test_unit(sl2):
    rng = random.Random(4)
    one = Poly.constant(sl2, 1)
    for _ in range(20):
        f = random_poly(sl2, rng, max_degree=4)
        assert kontsevich_star(f, one) == f
        assert kontsevich_star(one, f) == f
        assert gutt_star(f, one) == f


def test_gutt_on_invariants_is_not_pointwise(sl2, P):
    # the twist is what makes invariants multiply pointwise
    om = P("e*f + 1/4*h^2")
    assert gutt_star(om, om) != om * om


@pytest.mark.parametrize("name, deg", [("sl2", 8), ("so3", 8), ("heisenberg3", 6)])
def test_verify_invariant_star(name, deg):
    rep = verify_invariant_star(catalog(name), deg)
    assert rep.passed, rep.failures
    assert rep.pairs_checked > 0


def test_verify_reports_failures(monkeypatch):
    import dqlie.star as star

    monkeypatch.setattr(star, "kontsevich_star", star.gutt_star)
    rep = star.verify_invariant_star(catalog("sl2"), 4)
    assert not rep.passed
    assert rep.failures[0]["check"] == "f*g == fg"


def test_algebra_mismatch(sl2, so3):
    with pytest.raises(ValueError):
        gutt_star(Poly.generator(sl2, 0), Poly.generator(so3, 0))
