"""
Gutt and Kontsevich products on sl2*
====================================

Both deform the pointwise product. Only the second one multiplies
invariant polynomials pointwise.
"""

from dqlie.invariants import invariant_basis
from dqlie.lie_core import catalog
from dqlie.star import b_k, gutt_star, kontsevich_star
from dqlie.symalg import parse_poly, poisson_bracket

sl2 = catalog("sl2")
P = lambda s: parse_poly(sl2, s)
e, f = P("e"), P("f")

print("Gutt       e * f =", gutt_star(e, f))
print("Kontsevich e * f =", kontsevich_star(e, f))

# corrections by order; B_1 is half the bracket
for k in range(3):
    print(f"B_{k}(e, f) =", b_k(e, f, k))
print("{e, f} =", poisson_bracket(e, f))

# parity on a less trivial pair
g, h = P("e^2*h - f"), P("h*f + 3*e")
for k in range(1, 5):
    print(f"k={k}: B_k(g,h) = (-1)^k B_k(h,g)?", b_k(g, h, k) == (-1) ** k * b_k(h, g, k))

# invariants: Gutt misses, Kontsevich hits
basis = [q for d in (2, 4) for q in invariant_basis(sl2, d)]
for a in basis:
    for b in basis:
        print(f"({a}) * ({b}):",
              "gutt pointwise?", gutt_star(a, b) == a * b,
              "kontsevich pointwise?", kontsevich_star(a, b) == a * b)
