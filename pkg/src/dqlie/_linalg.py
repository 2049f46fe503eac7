"""Exact linear algebra over the rationals.

Rows are sparse ``{column: value}`` dicts. Elimination works on primitive integer
rows (denominators cleared, content removed), so no fractions are formed until
the kernel basis is read off.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

IntRow = dict[int, int]


def _primitive(row: Mapping[int, Fraction | int]) -> IntRow:
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    out = {c: int(Fraction(v) * den) for c, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    if out and out[min(out)] < 0:
        out = {c: -v for c, v in out.items()}
    return out


def _combine(r: IntRow, p: IntRow, col: int) -> IntRow:
    """Cross-multiply so that ``col`` cancels, then strip the content."""
    a, b = p[col], r[col]
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return _primitive(out)


def echelon(rows: Iterable[Mapping[int, Fraction | int]]) -> dict[int, IntRow]:
    """Fraction-free row echelon form; maps each pivot column to its pivot row."""
    pivots: dict[int, IntRow] = {}
    for raw in rows:
        r = _primitive(raw)
        while r:
            hits = [c for c in r if c in pivots]
            if not hits:
                break
            c = min(hits)
            r = _combine(r, pivots[c], c)
        if r:
            pivots[min(r)] = r
    return pivots


def _presolve(rows: list[IntRow], ncols: int) -> tuple[list[IntRow], set[int]]:
    """Drop columns forced to zero by single-entry rows, repeatedly."""
    forced: set[int] = set()
    changed = True
    while changed:
        changed = False
        kept = []
        for r in rows:
            if forced:
                r = {c: v for c, v in r.items() if c not in forced}
            if len(r) == 1:
                forced.add(next(iter(r)))
                changed = True
            elif r:
                kept.append(r)
        rows = kept
    return rows, forced


def nullspace(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{v : row . v = 0 for every row}`` in reduced row echelon form.

    Each basis vector has leading entry 1 and the leading columns increase.
    """
    prim = [_primitive(r) for r in rows]
    prim, forced = _presolve([r for r in prim if r], ncols)
    pivots = echelon(prim)
    # back-substitute to reduced form (pivot columns cleared above each pivot)
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        for q in list(pivots):
            if q < p and p in pivots[q]:
                pivots[q] = _combine(pivots[q], row, p)
    free = [c for c in range(ncols) if c not in pivots and c not in forced]
    basis = []
    for f in free:
        v: dict[int, Fraction] = {f: Fraction(1)}
        for p, row in pivots.items():
            if f in row:
                v[p] = Fraction(-row[f], row[p])
        basis.append(v)
    return rref(basis)


def rref(vectors: Sequence[Mapping[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Reduced row echelon form of a list of sparse vectors (zero rows dropped)."""
    pivots = echelon(vectors)
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        for q in list(pivots):
            if q < p and p in pivots[q]:
                pivots[q] = _combine(pivots[q], row, p)
    out = []
    for p in sorted(pivots):
        row = pivots[p]
        lead = row[p]
        out.append({c: Fraction(v, lead) for c, v in sorted(row.items())})
    return out


def rank(rows: Iterable[Mapping[int, Fraction | int]]) -> int:
    return len(echelon(rows))


def det(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Bareiss determinant of a square rational matrix."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    den = 1
    for r in matrix:
        for v in r:
            den = lcm(den, Fraction(v).denominator)
    m = [[int(Fraction(v) * den) for v in r] for r in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], den ** n)
