"""
Lead pursuit against a crossing target
======================================

A constant-speed interceptor with a bounded turn rate chases a target
flying straight and level.  Full lead (aiming at the anticipated point)
closes much faster than pure pursuit (aiming at the target itself).
"""

from uavsim import InterceptorParams, InterceptorState, PlanarVector, lead_point
from uavsim import interceptor_step


def chase(lead_fraction):
    params = InterceptorParams(speed=32.0, lateral_accel=25.0,
                               lead_fraction=lead_fraction, deadzone=0.05)
    missile = InterceptorState(x=-600.0, altitude=300.0, heading=0.9)
    target = PlanarVector(0.0, 600.0)
    target_vel = PlanarVector(14.0, 0.0)
    dt = 0.05
    closest = (target - missile.position()).norm()
    for k in range(2400):
        aim = lead_point(target, target_vel, missile.position(), params)
        missile = interceptor_step(missile, aim, params, dt)
        target = target + target_vel * dt
        separation = (target - missile.position()).norm()
        closest = min(closest, separation)
        if separation < 10.0:
            return k * dt, closest
    return None, closest


t_pure, d_pure = chase(0.0)
t_lead, d_lead = chase(1.0)

print("pure pursuit (lambda = 0):")
if t_pure is None:
    print(f"  never closed within 10 m; closest approach {d_pure:.1f} m")
else:
    print(f"  closed within 10 m after {t_pure:.2f} s")

print("full lead (lambda = 1):")
if t_lead is None:
    print(f"  never closed within 10 m; closest approach {d_lead:.1f} m")
else:
    print(f"  closed within 10 m after {t_lead:.2f} s")
print()

# the deadzone keeps the missile from wiggling once roughly aligned
params = InterceptorParams(speed=32.0, lateral_accel=25.0,
                           lead_fraction=0.0, deadzone=0.12)
missile = InterceptorState(x=0.0, altitude=0.0, heading=0.0)
aim = PlanarVector(1000.0, 30.0)  # about 0.03 rad off the nose
before = missile.heading
missile = interceptor_step(missile, aim, params, 0.05)
print(f"aim 0.03 rad off the nose with a 0.12 rad deadzone:"
      f" heading change = {missile.heading - before:.6f} rad")
