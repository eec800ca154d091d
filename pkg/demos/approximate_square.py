"""Bracketing r* by binary search with the discrete game as decider.

The theoretically mandated per-probe resolution delta = 2*eps0^3/r is
microscopic for real polygons (eps0 itself is ~2.6e-4 for the unit square),
so this demo uses the practical override; the returned interval is then
flagged heuristic and makes no width guarantee.
"""

from escape_ratio.errors import BudgetExceeded
from escape_ratio.exact import square_r_star
from escape_ratio.geometry import MetricContext, PursuerModel, validate_polygon
from escape_ratio.scheme import approximate_r_star, epsilon0, r_upper_bound_easy

square = validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
ctx = MetricContext(square, PursuerModel.MOAT)

print(f"easy upper bound on r*: {r_upper_bound_easy(ctx):.3f}")
e0 = epsilon0(ctx)
print(f"margin-of-victory scale eps0 = {e0:.3e}"
      f" -> theoretical delta at r=5 would be {2 * e0**3 / 5:.2e}")

try:
    approximate_r_star(ctx, epsilon=0.5, budget=5e7)
except BudgetExceeded as exc:
    print(f"theoretical parameterization refused as expected: {exc}")
print()

print("running with the practical override (delta=0.5, gamma=0.1):")
res = approximate_r_star(ctx, epsilon=0.5, budget=1e10, override=(0.5, 0.1))
for p in res.probes:
    print(f"  probe r = {p.r:6.3f} ({p.n_escaper} x {p.n_pursuer} samples)"
          f" -> {'escaper' if p.escaper_wins else 'pursuer'} wins")
print(f"heuristic bracket: ({res.r_lo:.3f}, {res.r_hi:.3f})")
print(f"exact value {square_r_star():.5f} "
      f"{'inside' if res.r_lo <= square_r_star() <= res.r_hi else 'outside'} the bracket")
