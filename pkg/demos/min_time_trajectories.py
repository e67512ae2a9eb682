"""
Minimum-time boundary-value trajectories
========================================

Solve a few point-to-point problems under speed and acceleration limits
and print the resulting curves as small tables.
"""

import math

from uavsim import (BoundaryConditions, KinematicLimits, PlanarVector,
                    acceleration, build_curve, max_accel, max_speed, min_time,
                    position, velocity)

limits = KinematicLimits()
print(f"limits: v_max = {limits.v_max} m/s, a_max = {limits.a_max} m/s^2")
print()

# rest-to-rest transfers: the closed form is max(1.5 d / v_max, sqrt(6 d / a_max))
for d in (10.0, 100.0, 1000.0):
    bc = BoundaryConditions(PlanarVector(0.0, 0.0), PlanarVector(0.0, 0.0),
                            PlanarVector(d, 0.0), PlanarVector(0.0, 0.0))
    result = min_time(bc, limits)
    closed = max(1.5 * d / limits.v_max, math.sqrt(6.0 * d / limits.a_max))
    print(f"rest-to-rest  d = {d:6.0f} m   t_min = {result.t_min:9.4f} s"
          f"   closed form = {closed:9.4f} s")
print()

# a flying start toward a moving arrival condition
bc = BoundaryConditions(PlanarVector(0.0, 500.0), PlanarVector(12.0, 0.0),
                        PlanarVector(400.0, 650.0), PlanarVector(0.0, 8.0))
result = min_time(bc, limits)
curve = build_curve(bc, result.t_min)
speed, speed_tau = max_speed(curve)
accel, accel_tau = max_accel(curve)
print(f"flying start: t_min = {result.t_min:.4f} s after {result.iterations} solver steps")
print(f"peak speed {speed:.3f} m/s at tau = {speed_tau:.3f};"
      f" peak accel {accel:.3f} m/s^2 at tau = {accel_tau:.3f}")
print()

print("  tau       x         H        vx       vy       ax       ay")
for i in range(11):
    tau = i / 10.0
    p = position(curve, tau)
    v = velocity(curve, tau)
    a = acceleration(curve, tau)
    print(f"  {tau:.2f}  {p.x:8.2f}  {p.y:8.2f}  {v.x:7.2f}  {v.y:7.2f}"
          f"  {a.x:7.2f}  {a.y:7.2f}")
print()

# trying to start faster than the speed limit can ever allow
hopeless = BoundaryConditions(PlanarVector(0.0, 0.0), PlanarVector(40.0, 0.0),
                              PlanarVector(100.0, 0.0), PlanarVector(0.0, 0.0))
result = min_time(hopeless, limits)
print(f"overspeed start is infeasible: feasible = {result.feasible}")
