"""Ideal point-mass interceptor: constant speed, bounded lateral acceleration,
lead pursuit with an angular deadzone.

The guidance aims at an anticipatory point extrapolated along the target's
velocity.  With lead fraction 0 the aim point is the target itself (pure
pursuit); with 1 it is a full lead extrapolated over the time-to-fly at the
interceptor's own speed.  The heading only changes while the aim point sits
outside a deadzone cone of half-angle deadzone/2 around the velocity vector,
and then always at the full turn rate lateral_accel/speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geometry import PlanarVector, wrap_angle


@dataclass(frozen=True)
class InterceptorParams:
    speed: float                 # m/s, constant
    lateral_accel: float         # m/s^2 available for turning
    lead_fraction: float = 0.0   # 0 = pure pursuit, 1 = full lead
    deadzone: float = 0.0        # rad, full cone angle with no correction


@dataclass(frozen=True)
class InterceptorState:
    x: float
    altitude: float
    heading: float  # rad, direction of the velocity vector

    def position(self) -> PlanarVector:
        return PlanarVector(self.x, self.altitude)

    def velocity(self, params: InterceptorParams) -> PlanarVector:
        return PlanarVector(params.speed * math.cos(self.heading),
                            params.speed * math.sin(self.heading))


def lead_point(uav_pos: PlanarVector, uav_vel: PlanarVector,
               my_pos: PlanarVector, params: InterceptorParams) -> PlanarVector:
    """Aim point: target position led by lead_fraction * range / speed seconds."""
    mu = params.lead_fraction * (uav_pos - my_pos).norm() / params.speed
    return uav_pos + uav_vel * mu


def turn_rate(state: InterceptorState, aim: PlanarVector,
              params: InterceptorParams) -> float:
    """Signed heading rate toward the aim point, zero inside the deadzone."""
    to_aim = aim - state.position()
    if to_aim.norm() == 0.0:
        return 0.0
    bearing_error = wrap_angle(to_aim.angle() - state.heading)
    if abs(bearing_error) <= 0.5 * params.deadzone:
        return 0.0
    rate = params.lateral_accel / params.speed
    # bearing_error carries the sign of the cross product velocity x to_aim;
    # an exactly-astern aim point (error == pi) turns positive.
    return rate if bearing_error >= 0.0 else -rate


def step(state: InterceptorState, aim: PlanarVector,
         params: InterceptorParams, dt: float) -> InterceptorState:
    """Advance dt along an exact constant-turn-rate arc (straight when the aim
    is inside the deadzone); speed is preserved exactly."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    r = turn_rate(state, aim, params)
    if r == 0.0:
        return replace(
            state,
            x=state.x + params.speed * dt * math.cos(state.heading),
            altitude=state.altitude + params.speed * dt * math.sin(state.heading),
        )
    new_heading = state.heading + r * dt
    radius = params.speed / r
    return InterceptorState(
        x=state.x + radius * (math.sin(new_heading) - math.sin(state.heading)),
        altitude=state.altitude + radius * (math.cos(state.heading) - math.cos(new_heading)),
        heading=wrap_angle(new_heading),
    )
