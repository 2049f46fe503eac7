"""Star products on S(g) for the Kirillov-Poisson structure.

``gutt_star`` transports the product of U(g) through the symmetrisation map.
``kontsevich_star`` is its conjugate by E = exp(sum alpha_2k Tr_2k):
f * g = E^-1(E f  gutt  E g). With hbar = 1, the order-k correction B_k(f, g) is
the part of f * g whose degree is deg f + deg g - k.
"""

from __future__ import annotations

from .duflo import VerificationReport, basis_pairs, phi_strange_apply, phi_strange_inverse
from .env_alg import pbw_mul, phi_pbw, phi_pbw_inv
from .lie_core import _require_valid
from .symalg import Poly


def gutt_star(f: Poly, g: Poly) -> Poly:
    f._check(g)
    return phi_pbw_inv(pbw_mul(phi_pbw(f), phi_pbw(g)))


def _order_for(*degs: int) -> int:
    return max(1, (max(max(degs), 0) + 1) // 2)


def kontsevich_star(f: Poly, g: Poly) -> Poly:
    f._check(g)
    L = f.algebra
    _require_valid(L)
    ef = phi_strange_apply(L, _order_for(f.degree), f)
    eg = phi_strange_apply(L, _order_for(g.degree), g)
    prod = gutt_star(ef, eg)
    return phi_strange_inverse(L, _order_for(prod.degree), prod)


def b_k(f: Poly, g: Poly, k: int) -> Poly:
    """Order-k correction of the Kontsevich product; b_0 is the pointwise product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return f * g
    out = Poly.zero(f.algebra)
    for a, fa in f.homogeneous_parts().items():
        for b, gb in g.homogeneous_parts().items():
            if a + b - k < 0:
                continue
            out = out + kontsevich_star(fa, gb).homogeneous_component(a + b - k)
    return out


def verify_invariant_star(L, max_degree: int) -> VerificationReport:
    """f * g == f g and f * g == g * f over all invariant basis pairs."""
    from .invariants import invariant_basis

    _require_valid(L)
    basis = {d: invariant_basis(L, d) for d in range(1, max_degree + 1)}
    report = VerificationReport("star", L.name, max_degree, True, {d: len(b) for d, b in basis.items()}, 0)
    for f, g in basis_pairs(basis, max_degree):
        report.pairs_checked += 1
        fg = kontsevich_star(f, g)
        if fg != f * g:
            report.passed = False
            report.failures.append(
                {"check": "f*g == fg", "f": str(f), "g": str(g), "difference": str(fg - f * g)}
            )
            continue
        if f != g:
            gf = kontsevich_star(g, f)
            if gf != fg:
                report.passed = False
                report.failures.append(
                    {"check": "f*g == g*f", "f": str(f), "g": str(g), "difference": str(fg - gf)}
                )
    return report
