"""
Invariant polynomials of sl3
============================

Degree by degree, as an exact nullspace. The dimensions follow the
generators in degrees 2 and 3.
"""

import time

from dqlie.invariants import invariant_basis
from dqlie.lie_core import catalog, is_semisimple, unimodularity_defect
from dqlie.star import verify_invariant_star

sl3 = catalog("sl3")
print("basis:", " ".join(sl3.basis))
print("semisimple:", is_semisimple(sl3), " unimodularity defect:", [str(c) for c in unimodularity_defect(sl3)])

for d in range(1, 7):
    t = time.perf_counter()
    basis = invariant_basis(sl3, d)
    print(f"degree {d}: {len(basis)} invariant(s) in {time.perf_counter() - t:.2f}s")

# the quadratic Casimir, in the Chevalley basis
print(invariant_basis(sl3, 2)[0])

# f * g = f g for every pair of basis invariants up to degree 6
report = verify_invariant_star(sl3, 6)
print("main check:", "pass" if report.passed else "FAIL", f"({report.pairs_checked} pairs)")
