"""
The Duflo map on sl2
====================

Casimir in, central element out, and a look at why the twist is needed.
"""

from dqlie.duflo import duflo_map, duflo_series
from dqlie.env_alg import is_central, pbw_mul, phi_pbw
from dqlie.lie_core import catalog
from dqlie.operators import apply_op, trace_operator
from dqlie.symalg import parse_poly

sl2 = catalog("sl2")
omega = parse_poly(sl2, "e*f + 1/4*h^2")

# the coefficients of the twist
for index, value in duflo_series(3).items():
    print(f"alpha[{index}] = {value}")

# Tr_2 is a second-order operator with constant coefficients
tr2 = trace_operator(sl2, 2)
print("Tr_2 =", tr2)
print("Tr_2(Omega) =", apply_op(tr2, omega))

# symmetrisation alone already lands in the center...
print("phi_pbw(Omega) =", phi_pbw(omega), "central:", is_central(phi_pbw(omega)))

# ...but it is not multiplicative on invariants
sq = phi_pbw(omega * omega) - pbw_mul(phi_pbw(omega), phi_pbw(omega))
print("phi_pbw(Omega^2) - phi_pbw(Omega)^2 =", sq)

# the Duflo map fixes that
d_omega = duflo_map(sl2, omega)
print("duflo(Omega) =", d_omega)
print("duflo(Omega^2) - duflo(Omega)^2 =", duflo_map(sl2, omega * omega) - pbw_mul(d_omega, d_omega))
