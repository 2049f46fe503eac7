"""Sparse exponent-vector arithmetic shared by polynomials, PBW elements and operators.

Every element here is a dict ``{exponent tuple: Fraction}`` with no zero values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Exp = tuple[int, ...]
Terms = dict[Exp, Fraction]


def add_into(acc: Terms, terms: Mapping[Exp, Fraction], scale: Fraction | int = 1) -> Terms:
    for e, c in terms.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def unit_exp(n: int, i: int, power: int = 1) -> Exp:
    e = [0] * n
    e[i] = power
    return tuple(e)


def commutative_mul(f: Mapping[Exp, Fraction], g: Mapping[Exp, Fraction]) -> Terms:
    out: Terms = {}
    for a, ca in f.items():
        for b, cb in g.items():
            e = exp_add(a, b)
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def partial(terms: Mapping[Exp, Fraction], i: int) -> Terms:
    out: Terms = {}
    for e, c in terms.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
    return out


def glex_key(e: Exp) -> tuple:
    """Sort key: higher total degree first, then lexicographically larger first."""
    return (-sum(e), tuple(-x for x in e))


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms: Mapping[Exp, Fraction], names: Iterable[str]) -> str:
    names = list(names)
    if not terms:
        return "0"
    pieces: list[str] = []
    for e in sorted(terms, key=glex_key):
        c = terms[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


class AlgebraMismatchError(ValueError):
    """Operands live over different Lie algebras."""


class SparseElement:
    """Immutable linear combination of exponent vectors over one Lie algebra.

    Subclasses supply the product; addition, scaling, equality and printing live here.
    """

    __slots__ = ("algebra", "_terms", "_hash")
    _name_prefix = ""

    def __init__(self, algebra, terms: Mapping[Exp, Fraction] | None = None):
        self.algebra = algebra
        clean: Terms = {}
        if terms:
            n = algebra.dim
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, algebra, terms: Terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero element."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_component(self, d: int):
        return type(self)._wrap(self.algebra, {e: c for e, c in self._terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict[int, "SparseElement"]:
        parts: dict[int, Terms] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: type(self)._wrap(self.algebra, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficient(self, e: Exp) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def _check(self, other) -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatchError("elements belong to different Lie algebras")

    def _coerce(self, other):
        if isinstance(other, type(self)):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(self.algebra, other)
        return None

    @classmethod
    def constant(cls, algebra, c=1):
        c = Fraction(c)
        return cls._wrap(algebra, {(0,) * algebra.dim: c} if c else {})

    @classmethod
    def zero(cls, algebra):
        return cls._wrap(algebra, {})

    @classmethod
    def generator(cls, algebra, which, power: int = 1):
        i = algebra.index(which)
        return cls._wrap(algebra, {unit_exp(algebra.dim, i, power): Fraction(1)})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)._wrap(self.algebra, add_into(dict(self._terms), o._terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)._wrap(self.algebra, add_into(dict(self._terms), o._terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return type(self)._wrap(self.algebra, {e: -c for e, c in self._terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return type(self).zero(self.algebra)
        return type(self)._wrap(self.algebra, {e: c * v for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(self.algebra, other)
        if not isinstance(other, type(self)):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.algebra, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_terms(self._terms, (self._name_prefix + b for b in self.algebra.basis))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"
