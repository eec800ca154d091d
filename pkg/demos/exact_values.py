"""Closed-form critical speed ratios for the canonical shapes.

The pursuer must be r* times faster than the escaper to prevent escape; below
r* the escaper can always reach the boundary with positive separation.
"""

import math

from escape_ratio import exact

print("Canonical critical speed ratios")
print("-" * 40)
rows = [
    ("halfplane (wedge opening pi)", exact.wedge_r_star(math.pi)),
    ("wedge, opening pi/2", exact.wedge_r_star(math.pi / 2)),
    ("wedge, opening pi/3", exact.wedge_r_star(math.pi / 3)),
    ("unit disk", exact.disk_r_star()),
    ("unit square", exact.square_r_star()),
    ("unit equilateral triangle", exact.triangle_r_star()),
]
for name, value in rows:
    print(f"{name:30s} r* = {value:.5f}")

phi = exact.disk_phi_star()
print()
print(f"disk angle phi* = {phi:.6f} rad ({phi / math.pi:.3f} pi)")
print(f"  defined by tan(phi) = pi + phi; residual {math.tan(phi) - math.pi - phi:.2e}")
print(f"  r* = 1/cos(phi*) = {1 / math.cos(phi):.5f}")

print()
print("The wedge ratio 1/sin(opening/2) grows as the corner sharpens:")
for deg in (180, 120, 90, 60, 30, 10):
    a = math.radians(deg)
    print(f"  opening {deg:3d} deg -> r* = {exact.wedge_r_star(a):8.3f}")
