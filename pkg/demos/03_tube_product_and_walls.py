"""Evaluating the truncated Borcherds product in tube coordinates.

Run:  python3 demos/03_tube_product_and_walls.py
"""
from fractions import Fraction

from twoelem import (
    TubePoint,
    construct_F,
    parse_lattice_expr,
    product_eval,
    separating_walls,
)

print("Points of the symmetric domain for a split U(N) + L are tube")
print("coordinates z with (Im z)^2 > 0.  The product runs over dual vectors")
print("in a slab, enumerated exactly (rational LDL^t + Fincke-Pohst).\n")

L = parse_lattice_expr("U")
point = TubePoint(1, L, (4.5j, 4.4j))
F = construct_F(point.ambient(), order=16)
val, tail = product_eval(F, point, order=2, min_margin=0.0)
val2, _ = product_eval(F, point, order=4, min_margin=0.0)
print(f"  U + U at z = (4.5i, 4.4i):")
print(f"    cut 2: {val}")
print(f"    cut 4: {val2}   (tail bound {tail:.2e})")

print("\nWalls with lam^2 in {-2, -1/2} separating two cone points of U+A1:")
walls, realized = separating_walls(
    parse_lattice_expr("U+A1"),
    [1, 2, Fraction(1, 3)], [1, 2, Fraction(-1, 3)], pairing_bound=10)
for w in walls:
    print(f"    lam = {w.dual_coords}, lam^2 = {w.norm}, "
          f"pairings ({w.pairing_v1}, {w.pairing_v2})")
print(f"    realized pairing bound: {realized}")
