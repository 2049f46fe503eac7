"""Polynomials on g* (the symmetric algebra S(g)) and polyvector fields.

Polyvector conventions, fixed here once:

* A degree-d polyvector is stored as ``{(i1 < ... < id): coefficient}`` and read
  as ``sum coeff * theta_i1 ... theta_id`` in odd variables ``theta_i = d/dx_i``.
* The divergence for the coordinate volume form is the odd Laplacian
  ``div = sum_i d/dx_i d/dtheta_i`` (left derivative in theta).
* ``schouten_bracket(a, b) = div(a b) - div(a) b - (-1)^|a| a div(b)``.
  With these signs, ``div [a, b] = -[div a, b] - (-1)^|a| [a, div b]`` and, for
  vector fields, the bracket is the usual commutator ``X(Y) - Y(X)``.
* The Kirillov bivector stores ``sum_k C_ij^k x_k`` on ``(i, j)``, i.e. it is half
  of the double sum over all ordered pairs, so ``{x_i, x_j} = [x_i, x_j]``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from ._sparse import (
    AlgebraMismatchError,
    SparseElement,
    Terms,
    add_into,
    commutative_mul,
    partial,
)


class Poly(SparseElement):
    """Sparse polynomial in the basis variables of a Lie algebra, exact coefficients."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return Poly._wrap(self.algebra, commutative_mul(self._terms, other._terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Poly.constant(self.algebra, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def diff(self, which) -> "Poly":
        return Poly._wrap(self.algebra, partial(self._terms, self.algebra.index(which)))

    @classmethod
    def parse(cls, algebra, text: str) -> "Poly":
        return parse_poly(algebra, text)


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poisson_bracket(f: Poly, g: Poly) -> Poly:
    """Kirillov-Poisson bracket: sum_ij df/dx_i dg/dx_j [x_i, x_j]."""
    f._check(g)
    L = f.algebra
    n = L.dim
    df = [partial(f._terms, i) for i in range(n)]
    dg = [partial(g._terms, j) for j in range(n)]
    out: Terms = {}
    for i in range(n):
        if not df[i]:
            continue
        for j in range(n):
            if i == j or not dg[j]:
                continue
            br = L.bracket_terms(i, j)
            if not br:
                continue
            lin: Terms = {}
            for k, c in br:
                e = [0] * n
                e[k] = 1
                lin[tuple(e)] = c
            add_into(out, commutative_mul(commutative_mul(df[i], dg[j]), lin))
    return Poly._wrap(L, out)


# ---------------------------------------------------------------- expression parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class PolyParseError(ValueError):
    pass


def parse_poly(algebra, text: str) -> Poly:
    """Parse ``1/2*h^2 - (e + f)*h`` style expressions over ``algebra``'s basis."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character at {pos}: {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", ""))
    p = _Parser(algebra, tokens)
    result = p.expr()
    if p.peek()[0] != "end":
        raise PolyParseError(f"unexpected token {p.peek()[1]!r}")
    return result


class _Parser:
    def __init__(self, algebra, tokens):
        self.algebra = algebra
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                raise PolyParseError("juxtaposition is not allowed; use '*'")
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise PolyParseError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise PolyParseError("zero denominator")
            return Poly.constant(self.algebra, Fraction(int(num), int(den) if den else 1))
        if kind == "name":
            if val not in self.algebra.basis:
                raise PolyParseError(f"unknown variable {val!r}")
            return Poly.generator(self.algebra, val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolyParseError("missing ')'")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise PolyParseError(f"unexpected token {val!r}")


# ---------------------------------------------------------------- polyvectors


def _merge(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign and sorted index tuple of theta_a theta_b, or None if it vanishes."""
    if set(a) & set(b):
        return None
    seq = list(a + b)
    sign = 1
    # count inversions
    for x in range(len(seq)):
        for y in range(x + 1, len(seq)):
            if seq[x] > seq[y]:
                sign = -sign
    return sign, tuple(sorted(seq))


class PolyVector:
    """Homogeneous polyvector field of a fixed degree with polynomial coefficients."""

    __slots__ = ("algebra", "degree", "_comps")

    def __init__(self, algebra, degree: int, components: Mapping[tuple[int, ...], Poly] | None = None):
        if degree < 0:
            raise ValueError("polyvector degree must be nonnegative")
        self.algebra = algebra
        self.degree = degree
        comps: dict[tuple[int, ...], Poly] = {}
        for idx, p in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"component index {idx} must be strictly increasing of length {degree}")
            if not isinstance(p, Poly):
                p = Poly.constant(algebra, p)
            if p:
                comps[idx] = p
        self._comps = comps

    @classmethod
    def function(cls, f: Poly) -> "PolyVector":
        return cls(f.algebra, 0, {(): f})

    @property
    def components(self) -> dict[tuple[int, ...], Poly]:
        return dict(self._comps)

    def component(self, idx) -> Poly:
        return self._comps.get(tuple(idx), Poly.zero(self.algebra))

    def is_zero(self) -> bool:
        return not self._comps

    def _check(self, other: "PolyVector") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatchError("polyvectors over different Lie algebras")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError("cannot add polyvectors of different degrees")
        comps = dict(self._comps)
        for k, p in other._comps.items():
            comps[k] = comps[k] + p if k in comps else p
        return PolyVector(self.algebra, self.degree, comps)

    def __neg__(self) -> "PolyVector":
        return PolyVector(self.algebra, self.degree, {k: -p for k, p in self._comps.items()})

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def scale(self, c) -> "PolyVector":
        return PolyVector(self.algebra, self.degree, {k: p.scale(c) for k, p in self._comps.items()})

    def wedge(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        comps: dict[tuple[int, ...], Poly] = {}
        for a, p in self._comps.items():
            for b, q in other._comps.items():
                m = _merge(a, b)
                if m is None:
                    continue
                sign, idx = m
                term = (p * q).scale(sign)
                comps[idx] = comps[idx] + term if idx in comps else term
        return PolyVector(self.algebra, self.degree + other.degree, comps)

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._comps == other._comps

    def __hash__(self):
        return hash((self.degree, frozenset(self._comps.items())))

    def __str__(self) -> str:
        if not self._comps:
            return "0"
        names = self.algebra.basis
        parts = []
        for idx in sorted(self._comps):
            wedge = "^".join(f"d_{names[i]}" for i in idx)
            parts.append(f"({self._comps[idx]})" + (f" {wedge}" if wedge else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PolyVector(degree={self.degree}, {self})"


def _odd_laplacian(eta: PolyVector) -> PolyVector:
    out: dict[tuple[int, ...], Poly] = {}
    for idx, p in eta._comps.items():
        for pos, i in enumerate(idx):
            d = p.diff(i)
            if not d:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = d if pos % 2 == 0 else -d
            out[rest] = out[rest] + term if rest in out else term
    return PolyVector(eta.algebra, max(eta.degree - 1, 0), out)


def divergence(eta: PolyVector) -> PolyVector:
    """Divergence for the coordinate volume form; lowers degree by one."""
    if eta.degree == 0:
        raise ValueError("divergence is undefined on functions (degree 0)")
    return _odd_laplacian(eta)


def schouten_bracket(eta1: PolyVector, eta2: PolyVector) -> PolyVector:
    """Schouten-Nijenhuis bracket as the Leibniz defect of the divergence."""
    eta1._check(eta2)
    d1 = eta1.degree
    prod = eta1.wedge(eta2)
    if prod.degree == 0:
        return PolyVector(eta1.algebra, 0)
    res = _odd_laplacian(prod)
    if d1 > 0:
        res = res - _odd_laplacian(eta1).wedge(eta2)
    if eta2.degree > 0:
        t = eta1.wedge(_odd_laplacian(eta2))
        res = res - t if d1 % 2 == 0 else res + t
    return res


def pair_bivector(alpha: PolyVector, f: Poly, g: Poly) -> Poly:
    """alpha(df, dg) = sum_{i<j} a_ij (df_i dg_j - df_j dg_i)."""
    if alpha.degree != 2:
        raise ValueError("pairing needs a bivector")
    out = Poly.zero(f.algebra)
    for (i, j), a in alpha._comps.items():
        out = out + a * (f.diff(i) * g.diff(j) - f.diff(j) * g.diff(i))
    return out
