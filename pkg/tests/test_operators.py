import random
from fractions import Fraction
from math import factorial

import pytest
import sympy

from conftest import rand_rat, random_poly
from dqlie.lie_core import adjoint_matrix, catalog
from dqlie.operators import (
    ConstCoeffOp,
    apply_op,
    exp_apply,
    formal_adjoint,
    is_derivation_on,
    trace_operator,
)
from dqlie.symalg import Poly, poisson_bracket


def op(L, s):
    from dqlie.symalg import parse_poly

    return ConstCoeffOp(L, dict(parse_poly(L, s).items()))


def trace_power(L, v, k):
    M = sympy.Matrix(adjoint_matrix(L, v))
    return Fraction(str((M ** k).trace()))


def symbolic_trace(L, k):
    xi = sympy.symbols(f"s0:{L.dim}")
    M = sum((sympy.Matrix(adjoint_matrix(L, [int(i == j) for j in range(L.dim)])) * xi[i] for i in range(L.dim)),
            sympy.zeros(L.dim))
    poly = sympy.Poly(sympy.expand((M ** k).trace()), *xi)
    return {tuple(m): Fraction(str(c)) for m, c in poly.terms()}


def test_trace_operator_examples(sl2, heis):
    assert trace_operator(sl2, 2) == op(sl2, "8*h^2 + 8*e*f")
    assert trace_operator(heis, 2).is_zero()
    assert trace_operator(catalog("abelian(3)"), 3).is_zero()
    with pytest.raises(ValueError):
        trace_operator(sl2, 0)


@pytest.mark.parametrize("name, k", [("sl2", 4), ("so3", 2), ("so3", 4), ("affine1", 3), ("sl3", 2)])
def test_trace_operator_matches_symbolic_trace(name, k):
    L = catalog(name)
    assert dict(trace_operator(L, k).items()) == symbolic_trace(L, k)


def test_apply_op_examples(sl2, P):
    tr2 = trace_operator(sl2, 2)
    assert apply_op(tr2, P("e*f + 1/4*h^2")) == 12
    assert apply_op(tr2, P("3*e - h + 2")) == 0
    assert apply_op(ConstCoeffOp.zero(sl2), P("e^3 + h")) == 0


@pytest.mark.parametrize("name", ["sl2", "so3"])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_normalisation_anchor(name, k):
    L = catalog(name)
    D = trace_operator(L, k)
    rng = random.Random(k)
    for _ in range(20):
        v = [rand_rat(rng, 4) for _ in range(L.dim)]
        lin = sum((Poly.generator(L, i).scale(v[i]) for i in range(L.dim)), Poly.zero(L))
        assert apply_op(D, lin ** k) == factorial(k) * trace_power(L, v, k)


@pytest.mark.parametrize("name", ["sl2", "so3", "affine1", "heisenberg3"])
def test_trace_operator_commutes_with_coadjoint_action(name):
    L = catalog(name)
    rng = random.Random(3)
    for k in (2, 3):
        D = trace_operator(L, k)
        for _ in range(10):
            f = random_poly(L, rng, max_degree=4, nterms=4)
            for i in range(L.dim):
                xi = Poly.generator(L, i)
                assert apply_op(D, poisson_bracket(xi, f)) == poisson_bracket(xi, apply_op(D, f))


@pytest.mark.parametrize("name", ["sl2", "so3", "sl3"])
def test_odd_traces_vanish_for_semisimple(name):
    L = catalog(name)
    assert trace_operator(L, 1).is_zero()
    assert trace_operator(L, 3).is_zero()


def test_affine_has_odd_trace(aff):
    assert not trace_operator(aff, 1).is_zero()


def test_formal_adjoint(sl2):
    tr2 = trace_operator(sl2, 2)
    assert formal_adjoint(tr2) == tr2
    de = op(sl2, "e")
    assert formal_adjoint(de) == -de
    assert formal_adjoint(ConstCoeffOp.zero(sl2)).is_zero()
    rng = random.Random(4)
    for _ in range(10):
        D = ConstCoeffOp(sl2, dict(random_poly(sl2, rng, max_degree=4, nterms=5).items()))
        assert formal_adjoint(formal_adjoint(D)) == D


def test_exp_apply(sl2, P):
    om = P("e*f + 1/4*h^2")
    tr2 = trace_operator(sl2, 2)
    assert exp_apply([(Fraction(1, 48), tr2)], om) == om + Fraction(1, 4)
    lin = P("2*e - h")
    assert exp_apply([(Fraction(1, 48), tr2), (Fraction(-1, 5760), trace_operator(sl2, 4))], lin) == lin
    assert exp_apply([(5, ConstCoeffOp.zero(sl2))], om) == om
    with pytest.raises(ValueError):
        exp_apply([(1, ConstCoeffOp.constant(sl2, 1))], om)


def test_exp_apply_inverse(so3):
    rng = random.Random(6)
    ops = [(Fraction(1, 48), trace_operator(so3, 2)), (Fraction(-1, 5760), trace_operator(so3, 4))]
    neg = [(-c, D) for c, D in ops]
    for _ in range(15):
        f = random_poly(so3, rng, max_degree=6, nterms=4)
        assert exp_apply(neg, exp_apply(ops, f)) == f


def test_exp_apply_matches_taylor_sum(sl2, P):
    # exp(c D) f = sum_n c^n D^n f / n!
    D = trace_operator(sl2, 2)
    c = Fraction(1, 48)
    f = P("(e*f + 1/4*h^2)^3")
    expect = Poly.zero(sl2)
    term = f
    for n in range(5):
        expect = expect + term.scale(c ** n / factorial(n))
        term = apply_op(D, term)
    assert exp_apply([(c, D)], f) == expect


def test_is_derivation_on(sl2, P):
    om = P("e*f + 1/4*h^2")
    tr2 = trace_operator(sl2, 2)
    res = is_derivation_on(tr2, [om], 4)
    assert not res.is_derivation
    assert res.counterexample == (om, om)
    lhs = apply_op(tr2, om * om)
    assert lhs - 24 * om != 0
    assert lhs - om.scale(24) == om.scale(16)
    assert is_derivation_on(tr2, [P("e")], 1).is_derivation
    rng = random.Random(1)
    gens = [random_poly(sl2, rng, max_degree=3, nterms=3) for _ in range(2)]
    assert is_derivation_on(op(sl2, "h"), gens, 4).is_derivation
