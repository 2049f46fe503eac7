"""
Wheel weights by Monte Carlo
============================

Center pinned at i, rim points sampled with Cauchy tails. The standard
2-wheel integrates to zero, the reversed one to alpha_2 = 1/48.
"""

import numpy as np

from dqlie.duflo import duflo_series
from dqlie.wheels import CALIBRATION, estimate_weight, harmonic_angle, integrand, wheel

# the propagator: zero straight up, pi towards the real axis
print(harmonic_angle(1j, 2j), harmonic_angle(1j, 1e-9j))

# the density at one configuration
rim = np.array([0.3 + 0.8j, -1.1 + 1.7j])
print("det J, W2  :", integrand(wheel(2), rim))
print("det J, W2v :", integrand(wheel(2, reversed=True), rim))

# mirror symmetry z -> -conj(z) makes odd wheels odd functions
rim3 = np.array([0.3 + 0.8j, -1.1 + 1.7j, 0.9 + 2.2j])
print(integrand(wheel(3, True), rim3), integrand(wheel(3, True), -np.conj(rim3)))

# estimates; raise `samples` to 10**7 for the acceptance-grade error bars
samples = 1_000_000
print("calibration:", CALIBRATION, " alpha_2 =", float(duflo_series(1)[2]))
for G, seed in [(wheel(2), 1), (wheel(2, True), 2), (wheel(3, True), 3)]:
    est = estimate_weight(G, samples, 100, seed=seed)
    print(f"{G.label:4s} mean {est.mean:+.5f}  se {est.std_error:.5f}  median-of-means {est.median_of_means:+.5f}")
