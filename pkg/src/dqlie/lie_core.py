"""Finite-dimensional Lie algebras given by structure constants.

Indices are 0-based throughout the Python API. ``sc[(i, j, k)]`` is the
coefficient of ``x_k`` in ``[x_i, x_j]`` and is stored only for ``i < j``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import _linalg

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


class LieParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UnvalidatedAlgebraError(ValueError):
    """The operation needs an algebra whose Jacobi identity has been checked."""


class LieAlgebra:
    """Immutable structure-constant description of a Lie algebra.

    Construction never checks the Jacobi identity; call :meth:`validate` (or use
    :func:`catalog`) to obtain a copy flagged as a genuine Lie algebra.
    """

    __slots__ = ("name", "basis", "_sc", "validated", "_table", "_index", "_cache", "_hash")

    def __init__(
        self,
        basis: Sequence[str],
        sc: Mapping[tuple[int, int, int], Fraction | int],
        name: str | None = None,
        validated: bool = False,
    ):
        basis = tuple(basis)
        if not basis:
            raise ValueError("a Lie algebra needs at least one basis element")
        if len(set(basis)) != len(basis):
            raise ValueError("basis names must be distinct")
        n = len(basis)
        clean: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in sc.items():
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"structure constant index {(i, j, k)} out of range")
            c = Fraction(c)
            if not c:
                continue
            if i == j:
                raise ValueError("[x_i, x_i] must vanish")
            if i > j:
                i, j, c = j, i, -c
            key = (i, j, k)
            clean[key] = clean.get(key, 0) + c
            if not clean[key]:
                del clean[key]
        self.name = name or "custom"
        self.basis = basis
        self._sc = clean
        self.validated = validated
        self._index = {b: i for i, b in enumerate(basis)}
        table: list[list[tuple[tuple[int, Fraction], ...]]] = [[()] * n for _ in range(n)]
        rows: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for (i, j, k), c in sorted(clean.items()):
            rows.setdefault((i, j), []).append((k, c))
        for (i, j), lst in rows.items():
            table[i][j] = tuple(lst)
            table[j][i] = tuple((k, -c) for k, c in lst)
        self._table = tuple(tuple(r) for r in table)
        self._cache: dict = {}
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def sc(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self._sc)

    def index(self, which: int | str) -> int:
        if isinstance(which, str):
            try:
                return self._index[which]
            except KeyError:
                raise KeyError(f"unknown basis element {which!r}") from None
        if not 0 <= which < self.dim:
            raise IndexError(which)
        return which

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """C_ij^k with the antisymmetric completion for i >= j."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self._sc.get((i, j, k), Fraction(0))
        return -self._sc.get((j, i, k), Fraction(0))

    def bracket_terms(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """[x_i, x_j] as a tuple of ``(k, C_ij^k)`` pairs."""
        return self._table[i][j]

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self._table[i][j]:
                    out[k] += a * b * c
        return tuple(out)

    def validate(self) -> "LieAlgebra":
        defect = jacobi_defect(self)
        if defect:
            raise UnvalidatedAlgebraError(f"Jacobi identity fails on triples {sorted(defect)}")
        return LieAlgebra(self.basis, self._sc, self.name, validated=True)

    def _key(self):
        return (self.basis, frozenset(self._sc.items()))

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


def _require_valid(L: LieAlgebra) -> None:
    if not L.validated:
        raise UnvalidatedAlgebraError(f"{L.name} has not been validated; call .validate()")


# ---------------------------------------------------------------- parsing

_RAT = r"\d+(?:/\d+)?"
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_TERM_RE = re.compile(rf"\s*([+-]?)\s*({_RAT})\s+([A-Za-z_][A-Za-z0-9_]*)")


def _parse_rat(text: str, line: int) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise LieParseError("zero denominator", line)
    return Fraction(int(num), int(den) if den else 1)


def parse_lie_algebra(text: str, name: str | None = None) -> LieAlgebra:
    """Read the line-oriented Lie file format; the result is unvalidated.

    >>> L = parse_lie_algebra("dim 2\\nbasis x y\\nbracket x y = 1 y")
    >>> L.structure_constant(0, 1, 1)
    Fraction(1, 1)
    """
    dim = None
    basis: tuple[str, ...] | None = None
    sc: dict[tuple[int, int, int], Fraction] = {}
    seen: dict[frozenset, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "dim":
            if dim is not None:
                raise LieParseError("dim declared twice", lineno)
            if not re.fullmatch(r"\d+", rest) or int(rest) < 1:
                raise LieParseError(f"dim expects a positive integer, got {rest!r}", lineno)
            dim = int(rest)
        elif keyword == "basis":
            if dim is None:
                raise LieParseError("basis before dim", lineno)
            if basis is not None:
                raise LieParseError("basis declared twice", lineno)
            names = rest.split()
            if len(names) != dim:
                raise LieParseError(f"basis lists {len(names)} names, dim is {dim}", lineno)
            for nm in names:
                if not _NAME_RE.match(nm):
                    raise LieParseError(f"bad basis name {nm!r}", lineno)
            if len(set(names)) != len(names):
                raise LieParseError("duplicate basis name", lineno)
            basis = tuple(names)
        elif keyword == "bracket":
            if basis is None:
                raise LieParseError("bracket before basis", lineno)
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise LieParseError("bracket needs '='", lineno)
            pair = lhs.split()
            if len(pair) != 2:
                raise LieParseError("bracket needs exactly two basis names", lineno)
            for nm in pair:
                if nm not in basis:
                    raise LieParseError(f"unknown basis name {nm!r}", lineno)
            a, b = (basis.index(nm) for nm in pair)
            key = frozenset((a, b))
            if key in seen:
                raise LieParseError(
                    f"bracket of {pair[0]} and {pair[1]} already declared on line {seen[key]}", lineno
                )
            seen[key] = lineno
            terms = _parse_rhs(rhs, basis, lineno)
            if a == b:
                if any(terms.values()):
                    raise LieParseError(f"bracket of {pair[0]} with itself must be zero", lineno)
                continue
            for k, c in terms.items():
                if not c:
                    continue
                if a < b:
                    sc[(a, b, k)] = c
                else:
                    sc[(b, a, k)] = -c
        else:
            raise LieParseError(f"unknown keyword {keyword!r}", lineno)
    if dim is None or basis is None:
        raise LieParseError("missing dim or basis declaration")
    return LieAlgebra(basis, sc, name=name)


def _parse_rhs(rhs: str, basis: tuple[str, ...], lineno: int) -> dict[int, Fraction]:
    rhs = rhs.strip()
    if rhs == "0":
        return {}
    terms: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(rhs):
        m = _TERM_RE.match(rhs, pos)
        if not m:
            raise LieParseError(f"cannot parse bracket value near {rhs[pos:]!r}", lineno)
        sign, rat, nm = m.groups()
        if not first and not sign:
            raise LieParseError("terms must be separated by '+' or '-'", lineno)
        if nm not in basis:
            raise LieParseError(f"unknown basis name {nm!r}", lineno)
        c = _parse_rat(rat, lineno)
        if sign == "-":
            c = -c
        k = basis.index(nm)
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
        if rhs[pos:].strip() == "":
            break
    if first:
        raise LieParseError("empty bracket value", lineno)
    return terms


# ---------------------------------------------------------------- invariants of the structure


def jacobi_defect(L: LieAlgebra) -> dict[tuple[int, int, int], Vector]:
    """Violated triples i<j<k with the coordinates of the cyclic Jacobi sum."""
    n = L.dim
    basis_vecs = [tuple(Fraction(int(a == b)) for b in range(n)) for a in range(n)]
    out = {}
    for i, j, k in combinations(range(n), 3):
        xi, xj, xk = basis_vecs[i], basis_vecs[j], basis_vecs[k]
        s = [Fraction(0)] * n
        for u, v, w in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
            t = L.bracket(L.bracket(u, v), w)
            s = [a + b for a, b in zip(s, t)]
        if any(s):
            out[(i, j, k)] = tuple(s)
    return out


def adjoint_matrix(L: LieAlgebra, v: Sequence) -> Matrix:
    """Matrix of ad(v); column j holds the coordinates of [v, x_j]."""
    n = L.dim
    if len(v) != n:
        raise ValueError(f"vector has length {len(v)}, algebra has dimension {n}")
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(v):
        if not a:
            continue
        a = Fraction(a)
        for j in range(n):
            for k, c in L.bracket_terms(i, j):
                m[k][j] += a * c
    return tuple(tuple(r) for r in m)


def basis_adjoint(L: LieAlgebra, i: int) -> Matrix:
    cache = L._cache.setdefault("ad", {})
    if i not in cache:
        cache[i] = adjoint_matrix(L, tuple(Fraction(int(k == i)) for k in range(L.dim)))
    return cache[i]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def killing_form(L: LieAlgebra) -> Matrix:
    n = L.dim
    ads = [basis_adjoint(L, i) for i in range(n)]
    k = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            p = _matmul(ads[i], ads[j])
            k[i][j] = k[j][i] = sum((p[t][t] for t in range(n)), Fraction(0))
    return tuple(tuple(r) for r in k)


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    _require_valid(L)
    return _linalg.det(killing_form(L)) != 0


def unimodularity_defect(L: LieAlgebra) -> Vector:
    """d_j = sum_i C_ij^i; zero iff the constant volume form is preserved."""
    n = L.dim
    return tuple(sum((L.structure_constant(i, j, i) for i in range(n)), Fraction(0)) for j in range(n))


def kirillov_bivector(L: LieAlgebra):
    """Linear Poisson bivector whose bracket on coordinates is the Lie bracket."""
    from .symalg import Poly, PolyVector

    _require_valid(L)
    comps = {}
    for (i, j, k), c in L._sc.items():
        p = comps.get((i, j), Poly.zero(L))
        comps[(i, j)] = p + Poly.generator(L, k).scale(c)
    return PolyVector(L, 2, comps)


# ---------------------------------------------------------------- catalog


def _from_brackets(name: str, basis: Sequence[str], brackets: Iterable[tuple[str, str, Mapping[str, int]]]):
    idx = {b: i for i, b in enumerate(basis)}
    sc = {}
    for a, b, val in brackets:
        for k, c in val.items():
            i, j = idx[a], idx[b]
            if i < j:
                sc[(i, j, idx[k])] = Fraction(c)
            else:
                sc[(j, i, idx[k])] = -Fraction(c)
    return LieAlgebra(basis, sc, name=name)


def _sl3() -> LieAlgebra:
    # Chevalley basis realised by 3x3 matrices
    def unit(r, c):
        m = [[0] * 3 for _ in range(3)]
        m[r][c] = 1
        return m

    mats = {
        "e1": unit(0, 1), "e2": unit(1, 2), "e3": unit(0, 2),
        "h1": [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        "h2": [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
        "f1": unit(1, 0), "f2": unit(2, 1), "f3": unit(2, 0),
    }
    basis = ["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"]

    def coords(m):
        return {
            "e1": m[0][1], "e2": m[1][2], "e3": m[0][2],
            "f1": m[1][0], "f2": m[2][1], "f3": m[2][0],
            "h1": m[0][0], "h2": -m[2][2],
        }

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    sc = {}
    for i, j in combinations(range(8), 2):
        a, b = mats[basis[i]], mats[basis[j]]
        ab, ba = mul(a, b), mul(b, a)
        comm = [[ab[r][c] - ba[r][c] for c in range(3)] for r in range(3)]
        for nm, c in coords(comm).items():
            if c:
                sc[(i, j, basis.index(nm))] = Fraction(c)
    return LieAlgebra(basis, sc, name="sl3")


def catalog(name: str) -> LieAlgebra:
    """Built-in validated algebras: sl2, so3, sl3, heisenberg3, affine1, abelian(n)."""
    key = name.strip()
    m = re.fullmatch(r"abelian\((\d+)\)", key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("abelian(n) needs n >= 1")
        L = LieAlgebra([f"x{i + 1}" for i in range(n)], {}, name=key)
    elif key == "sl2":
        L = _from_brackets("sl2", ["e", "h", "f"], [("h", "e", {"e": 2}), ("h", "f", {"f": -2}), ("e", "f", {"h": 1})])
    elif key == "so3":
        L = _from_brackets("so3", ["x", "y", "z"], [("x", "y", {"z": 1}), ("y", "z", {"x": 1}), ("z", "x", {"y": 1})])
    elif key == "sl3":
        L = _sl3()
    elif key == "heisenberg3":
        L = _from_brackets("heisenberg3", ["p", "q", "z"], [("p", "q", {"z": 1})])
    elif key == "affine1":
        L = _from_brackets("affine1", ["x", "y"], [("x", "y", {"y": 1})])
    else:
        raise KeyError(f"unknown catalog algebra {name!r}")
    return L.validate()


CATALOG_NAMES = ("sl2", "so3", "sl3", "heisenberg3", "affine1", "abelian(3)")
