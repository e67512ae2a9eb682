"""Scripted PD controllers for smoke tests and demos, not flight software.

Both policies share the same inner loop: a desired planar acceleration is
turned into a collective thrust level (gravity feedforward, scaled by the
thrust available at altitude) and a differential thrust level tracking a
commanded tilt.  The position channels are cascades, position error to a
capped velocity command to acceleration, which keeps long approaches from
winding up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .atmosphere import (MAX_ALTITUDE, STANDARD_GRAVITY, AtmosphereModel,
                         thrust_scale)
from .dynamics import ControlInput, UavParams, UavState
from .geometry import PlanarVector, wrap_angle

TILT_LIMIT = math.radians(30.0)
CLIMB_CAP = 8.0     # m/s, vertical velocity command cap
SPEED_CAP = 16.0    # m/s, horizontal velocity command cap
_MIN_COS = 0.5      # collective is computed as if tilt never exceeds 60 deg

_PARAMS = UavParams()
_ATMOSPHERE = AtmosphereModel()


@dataclass(frozen=True)
class PdGains:
    """Stable defaults, hand-tuned against the simulator.

    kp_pos / kp_alt map position error to a velocity command; kd_pos / kd_alt
    map velocity error to acceleration; kp_tilt / kd_tilt close the attitude
    loop (natural frequency 3 rad/s, damping 0.8).
    """

    kp_tilt: float = 9.0
    kd_tilt: float = 4.8
    kp_pos: float = 0.4
    kd_pos: float = 1.0
    kp_alt: float = 0.6
    kd_alt: float = 1.2


def _available_thrust(altitude: float, params: UavParams, atmosphere: AtmosphereModel) -> float:
    h = min(max(altitude, 0.0), MAX_ALTITUDE - 1.0)
    return params.f_max0 * thrust_scale(atmosphere, h)


def _mix(state: UavState, ay_des: float, tilt_cmd: float,
         gains: PdGains, params: UavParams, atmosphere: AtmosphereModel) -> ControlInput:
    """Collective + differential thrust realizing (ay_des, tilt_cmd)."""
    f_max = _available_thrust(state.altitude, params, atmosphere)
    cos_tilt = max(math.cos(state.tilt), _MIN_COS)
    thrust = params.mass * max(STANDARD_GRAVITY + ay_des, 0.0) / cos_tilt
    base = min(max(thrust / (2.0 * f_max), 0.0), 1.0)

    tilt_accel = gains.kp_tilt * wrap_angle(tilt_cmd - state.tilt) - gains.kd_tilt * state.omega
    half_diff = 0.5 * tilt_accel * params.inertia / (params.arm * f_max)
    a1 = min(max(base - half_diff, 0.0), 1.0)
    a2 = min(max(base + half_diff, 0.0), 1.0)
    return ControlInput(a1, a2)


def hover_policy(state: UavState, target_altitude: float, gains: PdGains = PdGains(),
                 params: UavParams = _PARAMS, atmosphere: AtmosphereModel = _ATMOSPHERE
                 ) -> ControlInput:
    """Altitude hold: symmetric thrust PD on altitude, differential thrust
    driving tilt and spin to zero."""
    climb_cmd = gains.kp_alt * (target_altitude - state.altitude)
    climb_cmd = min(max(climb_cmd, -CLIMB_CAP), CLIMB_CAP)
    ay_des = gains.kd_alt * (climb_cmd - state.vy)
    return _mix(state, ay_des, 0.0, gains, params, atmosphere)


def goto_policy(state: UavState, destination: PlanarVector, gains: PdGains = PdGains(),
                params: UavParams = _PARAMS, atmosphere: AtmosphereModel = _ATMOSPHERE
                ) -> ControlInput:
    """Cascaded PD toward a fixed point: horizontal error commands a tilt
    (saturated), altitude error commands collective thrust."""
    speed_cmd = gains.kp_pos * (destination.x - state.x)
    speed_cmd = min(max(speed_cmd, -SPEED_CAP), SPEED_CAP)
    ax_des = gains.kd_pos * (speed_cmd - state.vx)

    climb_cmd = gains.kp_alt * (destination.y - state.altitude)
    climb_cmd = min(max(climb_cmd, -CLIMB_CAP), CLIMB_CAP)
    ay_des = gains.kd_alt * (climb_cmd - state.vy)

    # Thrust x-component is F*sin(-beta): positive ax_des needs negative tilt.
    tilt_cmd = math.atan2(-ax_des, STANDARD_GRAVITY)
    tilt_cmd = min(max(tilt_cmd, -TILT_LIMIT), TILT_LIMIT)
    return _mix(state, ay_des, tilt_cmd, gains, params, atmosphere)
