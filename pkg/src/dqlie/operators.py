"""Constant-coefficient differential operators acting on S(g).

An operator is a polynomial in symbols xi_i; applying it substitutes
``xi_i -> d/dx_i`` monomial by monomial, with no factorial rescaling.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import NamedTuple, Sequence

from ._sparse import SparseElement, Terms, add_into, commutative_mul, unit_exp
from .lie_core import _require_valid, basis_adjoint
from .symalg import Poly


class ConstCoeffOp(SparseElement):
    """Element of S(g*) viewed as a differential operator with constant coefficients."""

    __slots__ = ()
    _name_prefix = "d_"

    def __mul__(self, other):
        # composition of constant-coefficient operators is commutative
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ConstCoeffOp):
            return NotImplemented
        self._check(other)
        return ConstCoeffOp._wrap(self.algebra, commutative_mul(self._terms, other._terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, f: Poly) -> Poly:
        return apply_op(self, f)

    def orders(self) -> set[int]:
        return {sum(e) for e in self._terms}


def trace_operator(L, k: int) -> ConstCoeffOp:
    """Operator whose symbol is v -> Tr(ad(v)^k)."""
    if k < 1:
        raise ValueError("trace operator needs k >= 1")
    _require_valid(L)
    cache = L._cache.setdefault("trace_op", {})
    if k in cache:
        return cache[k]
    n = L.dim
    # M = sum_i xi_i ad(x_i), entries are linear forms in xi
    M: list[list[Terms]] = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        ad = basis_adjoint(L, i)
        e = unit_exp(n, i)
        for r in range(n):
            for c in range(n):
                if ad[r][c]:
                    M[r][c][e] = ad[r][c]
    power = [row[:] for row in M]
    for _ in range(k - 1):
        nxt: list[list[Terms]] = [[{} for _ in range(n)] for _ in range(n)]
        for r in range(n):
            for t in range(n):
                left = power[r][t]
                if not left:
                    continue
                for c in range(n):
                    if M[t][c]:
                        add_into(nxt[r][c], commutative_mul(left, M[t][c]))
        power = nxt
    trace: Terms = {}
    for r in range(n):
        add_into(trace, power[r][r])
    op = ConstCoeffOp._wrap(L, trace)
    cache[k] = op
    return op


def _falling(a: int, b: int) -> int:
    return factorial(a) // factorial(a - b)


def apply_op(D: ConstCoeffOp, f: Poly) -> Poly:
    D._check(f)
    out: Terms = {}
    for b, cd in D.items():
        for a, cf in f.items():
            if any(x < y for x, y in zip(a, b)):
                continue
            mult = 1
            for x, y in zip(a, b):
                if y:
                    mult *= _falling(x, y)
            e = tuple(x - y for x, y in zip(a, b))
            v = out.get(e, 0) + cd * cf * mult
            if v:
                out[e] = v
            else:
                del out[e]
    return Poly._wrap(f.algebra, out)


def exp_apply(coeffs: Sequence[tuple[Fraction | int, ConstCoeffOp]], f: Poly) -> Poly:
    """exp(sum c_k D_k) f; terminates because every D_k strictly lowers degree."""
    total = ConstCoeffOp.zero(f.algebra)
    for c, D in coeffs:
        if 0 in D.orders():
            raise ValueError("exp_apply needs operators without an order-0 part")
        total = total + D.scale(c)
    if not total:
        return f
    out = f
    term = f
    n = 0
    while term:
        n += 1
        term = apply_op(total, term).scale(Fraction(1, n))
        out = out + term
    return out


def formal_adjoint(D: ConstCoeffOp) -> ConstCoeffOp:
    """L2 adjoint: each d-monomial of order m picks up (-1)^m."""
    return ConstCoeffOp._wrap(D.algebra, {e: (c if sum(e) % 2 == 0 else -c) for e, c in D.items()})


class DerivationCheck(NamedTuple):
    is_derivation: bool
    counterexample: tuple[Poly, Poly] | None

    def __bool__(self) -> bool:
        return self.is_derivation


def is_derivation_on(D: ConstCoeffOp, gens: Sequence[Poly], max_degree: int) -> DerivationCheck:
    """Test the Leibniz rule on pairs of products of ``gens`` up to ``max_degree``.

    Pairs are visited by increasing total degree; the first failure is returned.
    """
    if not gens:
        return DerivationCheck(True, None)
    L = gens[0].algebra
    prods: list[tuple[int, Poly]] = []
    for r in range(1, max_degree + 1):
        for combo in combinations_with_replacement(range(len(gens)), r):
            p = Poly.constant(L, 1)
            for g in combo:
                p = p * gens[g]
            if 0 < p.degree <= max_degree:
                prods.append((p.degree, p))
    prods.sort(key=lambda t: t[0])
    pairs = [(p, q) for dp, p in prods for dq, q in prods if dp + dq <= max_degree]
    pairs.sort(key=lambda pq: pq[0].degree + pq[1].degree)
    for p, q in pairs:
        lhs = apply_op(D, p * q)
        rhs = apply_op(D, p) * q + p * apply_op(D, q)
        if lhs != rhs:
            return DerivationCheck(False, (p, q))
    return DerivationCheck(True, None)
