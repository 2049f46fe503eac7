"""Truncated formal power series in one variable q with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients of q^0 .. q^order; everything beyond is unknown."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a power series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m]

    @classmethod
    def exp_of_multiple(cls, a, order: int) -> "PowerSeries":
        """exp(a q)."""
        a = Fraction(a)
        return cls([a ** m / factorial(m) for m in range(order + 1)])

    def _common(self, other: "PowerSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._common(other)
        return PowerSeries([self[m] + other[m] for m in range(n + 1)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._common(other)
        return PowerSeries([self[m] - other[m] for m in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs])
        n = self._common(other)
        return PowerSeries([sum((self[i] * other[m - i] for i in range(m + 1)), Fraction(0)) for m in range(n + 1)])

    __rmul__ = __mul__

    def divide_by_q(self) -> "PowerSeries":
        """Exact division by q; loses one order of precision."""
        if self[0]:
            raise ValueError("series has a nonzero constant term; not divisible by q")
        if self.order == 0:
            raise ValueError("no coefficients left after division by q")
        return PowerSeries(self.coeffs[1:])

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1, via  g' = f' g  for g = exp f."""
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        g = self.coeffs
        n = self.order
        lg = [Fraction(0)] * (n + 1)
        # m g_m = sum_{j=1..m} j lg_j g_{m-j}
        for m in range(1, n + 1):
            s = m * g[m] - sum((j * lg[j] * g[m - j] for j in range(1, m)), Fraction(0))
            lg[m] = s / m
        return PowerSeries(lg)

    def exp(self) -> "PowerSeries":
        if self[0]:
            raise ValueError("exp needs constant term 0")
        f = self.coeffs
        n = self.order
        g = [Fraction(0)] * (n + 1)
        g[0] = Fraction(1)
        for m in range(1, n + 1):
            g[m] = sum((j * f[j] * g[m - j] for j in range(1, m + 1)), Fraction(0)) / m
        return PowerSeries(g)
