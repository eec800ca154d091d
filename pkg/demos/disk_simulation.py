"""Disk playthroughs on both sides of the critical ratio r* = 4.603.

The escaper circles on the inner circle of radius 1/r* until antipodal to the
pursuer, then runs the APLO strategy: constant axial progress toward the far
boundary with a lateral offset mirroring the pursuer's arc progress.  The
pursuer chases the escaper's closest boundary point along the shorter arc.
"""

from escape_ratio.exact import disk_r_star, disk_strategies
from escape_ratio.sim import DiskDomain, emit_svg, playthrough, validate_speed

domain = DiskDomain()
print(f"disk critical ratio r* = {disk_r_star():.4f}")
print()

for r in (4.4, 4.8):
    escaper, pursuer = disk_strategies(r)
    pt = playthrough(escaper, pursuer, dt=1e-3, t_max=10.0, epsilon=0.01,
                     domain=domain)
    side = "below" if r < disk_r_star() else "above"
    print(f"r = {r} ({side} r*): {pt.outcome}")
    if pt.escaped:
        print(f"  escaped at t = {pt.escape_time:.3f} with boundary separation "
              f"{pt.separation:.4f}")
    else:
        worst = max((s for _, s in pt.touches), default=0.0)
        print(f"  escaper touched the boundary {len(pt.touches)} times; "
              f"worst separation {worst:.2e} (pursuer always on top)")
    report = validate_speed(pt.escaper_path, domain, pairs=100, seed=0)
    print(f"  escaper speed contract: max observed {report.max_consecutive:.4f} "
          f"(limit {report.limit}) -> {'ok' if report.passed else 'VIOLATED'}")
    name = f"disk_r{r}.svg".replace(".", "_", 1)
    with open(name, "w", encoding="utf-8") as fh:
        fh.write(emit_svg(pt, domain))
    print(f"  trajectory rendering written to {name}")
    print()
