"""Invariant polynomials [S^d(g)]^g computed degree by degree as an exact nullspace."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from . import _linalg
from ._sparse import Exp, glex_key
from .lie_core import _require_valid
from .symalg import Poly, poisson_bracket


def is_invariant(f: Poly) -> bool:
    L = f.algebra
    return all(not poisson_bracket(Poly.generator(L, i), f) for i in range(L.dim))


def monomials(n: int, d: int) -> list[Exp]:
    """All exponent vectors of total degree d, in graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=glex_key)
    return out


def bracket_rows(L, d: int) -> tuple[list[Exp], list[dict[int, Fraction]]]:
    """Columns (degree-d monomials) and rows of the stacked maps f -> {x_i, f}."""
    cols = monomials(L.dim, d)
    rows: list[dict[int, Fraction]] = []
    for i in range(L.dim):
        xi = Poly.generator(L, i)
        out: dict[Exp, dict[int, Fraction]] = {}
        for c, e in enumerate(cols):
            img = poisson_bracket(xi, Poly._wrap(L, {e: Fraction(1)}))
            for oe, v in img.items():
                out.setdefault(oe, {})[c] = v
        rows.extend(out[k] for k in sorted(out, key=glex_key))
    return cols, rows


def invariant_basis(L, d: int) -> list[Poly]:
    """Reduced-echelon basis of degree-d invariants, pivots in graded-lex order."""
    _require_valid(L)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    cache = L._cache.setdefault("invariants", {})
    if d in cache:
        return list(cache[d])
    cols, rows = bracket_rows(L, d)
    # sparse rows first: single-entry rows from diagonal generators are presolved away
    rows.sort(key=len)
    kernel = _linalg.nullspace(rows, len(cols))
    basis = [Poly._wrap(L, {cols[c]: v for c, v in vec.items()}) for vec in kernel]
    cache[d] = tuple(basis)
    return basis
