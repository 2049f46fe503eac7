"""The universal enveloping algebra U(g) in PBW normal form.

A PBW monomial ``x_1^a_1 ... x_n^a_n`` is stored by its exponent vector, ordered by
the declared basis. Products are computed by straightening with memoisation
tables kept on the algebra object.
"""

from __future__ import annotations

from fractions import Fraction

from ._sparse import Exp, SparseElement, Terms, add_into, unit_exp
from .symalg import Poly


class PbwElement(SparseElement):
    """Element of U(g) as a combination of normal-ordered monomials."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PbwElement):
            return NotImplemented
        return pbw_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def symbol(self) -> Poly:
        """Top-degree part read as a commutative polynomial."""
        top = self.degree
        return Poly._wrap(self.algebra, {e: c for e, c in self._terms.items() if sum(e) == top})


def _tables(L):
    return L._cache.setdefault("pbw", {"right": {}, "mono": {}, "sym": {}})


def _right_mul(L, a: Exp, i: int) -> Terms:
    """Normal form of (monomial a) * x_i."""
    memo = _tables(L)["right"]
    key = (a, i)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = len(a) - 1
    while j >= 0 and not a[j]:
        j -= 1
    if j <= i:
        e = list(a)
        e[i] += 1
        res: Terms = {tuple(e): Fraction(1)}
    else:
        # a = a0 x_j with j > i:  a0 x_j x_i = (a0 x_i) x_j + a0 [x_j, x_i]
        a0 = a[:j] + (a[j] - 1,) + a[j + 1:]
        res = {}
        for b, c in _right_mul(L, a0, i).items():
            add_into(res, _right_mul(L, b, j), c)
        for k, c in L.bracket_terms(j, i):
            add_into(res, _right_mul(L, a0, k), c)
    memo[key] = res
    return res


def _mono_mul(L, a: Exp, b: Exp) -> Terms:
    """Normal form of (monomial a) * (monomial b)."""
    if not any(b):
        return {a: Fraction(1)}
    memo = _tables(L)["mono"]
    key = (a, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    i = next(t for t, k in enumerate(b) if k)
    rest = b[:i] + (b[i] - 1,) + b[i + 1:]
    res: Terms = {}
    for c_exp, c in _right_mul(L, a, i).items():
        add_into(res, _mono_mul(L, c_exp, rest), c)
    memo[key] = res
    return res


def pbw_mul(u: PbwElement, v: PbwElement) -> PbwElement:
    u._check(v)
    L = u.algebra
    out: Terms = {}
    for a, ca in u.items():
        for b, cb in v.items():
            add_into(out, _mono_mul(L, a, b), ca * cb)
    return PbwElement._wrap(L, out)


def commutator_u(u: PbwElement, v: PbwElement) -> PbwElement:
    return pbw_mul(u, v) - pbw_mul(v, u)


def is_central(u: PbwElement) -> bool:
    L = u.algebra
    return all(not commutator_u(u, PbwElement.generator(L, i)) for i in range(L.dim))


def _sym_monomial(L, a: Exp) -> Terms:
    """phi_PBW of a commutative monomial.

    Averaging over all orderings, grouped by the first letter:
    sym(x^a) = (1/k) sum_i a_i x_i sym(x^(a - e_i)).
    """
    memo = _tables(L)["sym"]
    hit = memo.get(a)
    if hit is not None:
        return hit
    k = sum(a)
    if k <= 1:
        res: Terms = {a: Fraction(1)}
    else:
        res = {}
        n = len(a)
        for i in range(n):
            if not a[i]:
                continue
            rest = a[:i] + (a[i] - 1,) + a[i + 1:]
            gen = unit_exp(n, i)
            weight = Fraction(a[i], k)
            for b, c in _sym_monomial(L, rest).items():
                add_into(res, _mono_mul(L, gen, b), weight * c)
    memo[a] = res
    return res


def phi_pbw(f: Poly) -> PbwElement:
    """Symmetrisation map S(g) -> U(g)."""
    L = f.algebra
    out: Terms = {}
    for a, c in f.items():
        add_into(out, _sym_monomial(L, a), c)
    return PbwElement._wrap(L, out)


def phi_pbw_inv(u: PbwElement) -> Poly:
    """Inverse of :func:`phi_pbw`, peeling off the top-degree symbol repeatedly."""
    L = u.algebra
    rest: Terms = dict(u.items())
    out: Terms = {}
    while rest:
        top = max(sum(e) for e in rest)
        sym = {e: c for e, c in rest.items() if sum(e) == top}
        add_into(out, sym)
        for e, c in sym.items():
            add_into(rest, _sym_monomial(L, e), -c)
    return Poly._wrap(L, out)


def from_poly(f: Poly) -> PbwElement:
    """Read a polynomial's exponents directly as PBW monomials (no symmetrisation)."""
    return PbwElement._wrap(f.algebra, dict(f.items()))
