"""Duflo coefficients, the map exp(sum alpha_2k Tr_2k) and the Duflo map into U(g)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .env_alg import PbwElement, is_central, pbw_mul, phi_pbw
from .lie_core import _require_valid
from .operators import exp_apply, trace_operator
from .series import PowerSeries
from .symalg import Poly


@dataclass(frozen=True)
class DufloCoefficients:
    """alpha_2, alpha_4, ..., alpha_2K from log sqrt(sinh(q/2)/(q/2))."""

    values: tuple[Fraction, ...]

    @property
    def max_index(self) -> int:
        return 2 * len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        if index == 0:
            return Fraction(0)
        if index % 2 or not 0 < index <= self.max_index:
            raise KeyError(index)
        return self.values[index // 2 - 1]

    def items(self):
        return [(2 * (k + 1), v) for k, v in enumerate(self.values)]


@lru_cache(maxsize=None)
def duflo_series(K: int) -> DufloCoefficients:
    if K < 1:
        raise ValueError("K must be positive")
    order = 2 * K
    e_plus = PowerSeries.exp_of_multiple(Fraction(1, 2), order + 1)
    e_minus = PowerSeries.exp_of_multiple(Fraction(-1, 2), order + 1)
    ratio = (e_plus - e_minus).divide_by_q()
    half_log = ratio.log() * Fraction(1, 2)
    assert half_log[0] == 0
    for m in range(1, order + 1, 2):
        assert half_log[m] == 0, f"odd coefficient q^{m} is {half_log[m]}"
    return DufloCoefficients(tuple(half_log[2 * k] for k in range(1, K + 1)))


def _strange_terms(L, K: int):
    alphas = duflo_series(K)
    return [(a, trace_operator(L, idx)) for idx, a in alphas.items()]


def phi_strange_apply(L, K: int, f: Poly) -> Poly:
    """exp(sum_{k<=K} alpha_2k Tr_2k) f; K must cover the degree of f."""
    if 2 * K < f.degree:
        raise ValueError(f"K={K} truncates: need 2K >= deg f = {f.degree}")
    if f.degree < 2:
        return f
    return exp_apply(_strange_terms(L, K), f)


def phi_strange_inverse(L, K: int, f: Poly) -> Poly:
    if 2 * K < f.degree:
        raise ValueError(f"K={K} truncates: need 2K >= deg f = {f.degree}")
    if f.degree < 2:
        return f
    return exp_apply([(-a, D) for a, D in _strange_terms(L, K)], f)


def required_order(f: Poly) -> int:
    return max(1, (max(f.degree, 0) + 1) // 2)


def duflo_map(L, f: Poly) -> PbwElement:
    _require_valid(L)
    return phi_pbw(phi_strange_apply(L, required_order(f), f))


@dataclass
class VerificationReport:
    """Outcome of an exhaustive pairwise check over an invariant basis."""

    kind: str
    algebra: str
    max_degree: int
    passed: bool
    basis_sizes: dict[int, int]
    pairs_checked: int
    central_checked: int = 0
    failures: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "algebra": self.algebra,
            "max_degree": self.max_degree,
            "passed": self.passed,
            "basis_sizes": {str(d): n for d, n in self.basis_sizes.items()},
            "pairs_checked": self.pairs_checked,
            "central_checked": self.central_checked,
            "failures": self.failures,
        }


def basis_pairs(basis: dict[int, list[Poly]], max_degree: int):
    flat = [(d, i, f) for d, fs in sorted(basis.items()) for i, f in enumerate(fs)]
    for a, (d1, i1, f) in enumerate(flat):
        for d2, i2, g in flat[a:]:
            if d1 + d2 <= max_degree:
                yield f, g


def verify_duflo_multiplicative(L, max_degree: int) -> VerificationReport:
    """duflo_map(f g) == duflo_map(f) duflo_map(g) over an invariant basis, plus centrality."""
    from .invariants import invariant_basis

    _require_valid(L)
    basis = {d: invariant_basis(L, d) for d in range(1, max_degree + 1)}
    report = VerificationReport(
        "duflo", L.name, max_degree, True, {d: len(b) for d, b in basis.items()}, 0
    )
    images: dict[Poly, PbwElement] = {}

    def image(f: Poly) -> PbwElement:
        if f not in images:
            images[f] = duflo_map(L, f)
        return images[f]

    for d, fs in sorted(basis.items()):
        for f in fs:
            report.central_checked += 1
            if not is_central(image(f)):
                report.passed = False
                report.failures.append({"check": "central", "f": str(f)})
    for f, g in basis_pairs(basis, max_degree):
        report.pairs_checked += 1
        lhs = duflo_map(L, f * g)
        rhs = pbw_mul(image(f), image(g))
        if lhs != rhs:
            report.passed = False
            report.failures.append(
                {"check": "multiplicative", "f": str(f), "g": str(g), "difference": str(lhs - rhs)}
            )
    return report
