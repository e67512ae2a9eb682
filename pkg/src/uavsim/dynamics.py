"""Planar rigid-body dynamics of a two-rotor UAV.

State is (x, H, vx, vy, beta, omega): horizontal position, altitude, velocity
components, body-axis tilt and spin rate.  Both rotors thrust perpendicular to
the body axis, so the thrust direction is (sin(-beta), cos(beta)); gravity and
a quadratic drag force opposing the velocity vector complete the force balance:

    dvx/dt = F_max(H) (a1 + a2)/m sin(-beta) - CxS rho(H) |v| vx / m
    dvy/dt = F_max(H) (a1 + a2)/m cos(beta)  - g - CxS rho(H) |v| vy / m
    domega/dt = h F_max(H) (a2 - a1) / Iz

The drag is written vectorially (CxS rho |v| v / m), which equals the
projection form CxS rho |v|^2 (cos(alpha+beta), sin(alpha+beta)) / m wherever
the velocity is nonzero and stays regular at rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .atmosphere import MAX_ALTITUDE, AtmosphereModel, density
from .geometry import wrap_angle


class IntegrationError(RuntimeError):
    """The integrator produced a non-finite state."""


@dataclass(frozen=True)
class UavParams:
    mass: float = 5.0            # kg
    f_max0: float = 42.0         # N, max thrust per rotor at sea level
    inertia: float = 1.25        # kg m^2
    drag_area: float = 0.2       # m^2, drag coefficient times reference area
    arm: float = 0.5             # m, rotor lever arm about the center of mass
    control_period: float = 0.05  # s between control updates


@dataclass(frozen=True)
class UavState:
    x: float = 0.0
    altitude: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    tilt: float = 0.0
    omega: float = 0.0
    time: float = 0.0

    def speed(self) -> float:
        return math.hypot(self.vx, self.vy)


@dataclass(frozen=True)
class ControlInput:
    """Relative thrust per rotor; values clamp to [0, 1] on construction."""

    a1: float
    a2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a1) and math.isfinite(self.a2)):
            raise ValueError(f"control inputs must be finite, got ({self.a1!r}, {self.a2!r})")
        object.__setattr__(self, "a1", min(1.0, max(0.0, float(self.a1))))
        object.__setattr__(self, "a2", min(1.0, max(0.0, float(self.a2))))


def _rates(altitude: float, vx: float, vy: float, beta: float, omega: float,
           a1: float, a2: float, params: UavParams,
           atmos: AtmosphereModel) -> tuple[float, float, float, float, float, float]:
    # Mid-step probes may dip just outside the troposphere band; hold the
    # atmosphere at the nearest valid altitude (bounds enforcement is the
    # caller's job).  NaN probes pin to sea level; the integrator raises on
    # the non-finite state as soon as the substep completes.
    h = min(max(altitude, 0.0), MAX_ALTITUDE - 1.0)
    if math.isnan(h):
        h = 0.0
    rho = density(atmos, h)
    f_max = params.f_max0 * (rho / atmos.rho0) ** (1.0 / 3.0)
    thrust = f_max * (a1 + a2) / params.mass
    drag = params.drag_area * rho * math.hypot(vx, vy) / params.mass
    dvx = thrust * math.sin(-beta) - drag * vx
    dvy = thrust * math.cos(beta) - atmos.g0 - drag * vy
    domega = params.arm * f_max * (a2 - a1) / params.inertia
    return vx, vy, dvx, dvy, omega, domega


def derivatives(state: UavState, control: ControlInput, params: UavParams,
                atmos: AtmosphereModel) -> tuple[float, float, float, float, float, float]:
    """State rates (dx, dH, dvx, dvy, dbeta, domega) at the given state."""
    return _rates(state.altitude, state.vx, state.vy, state.tilt, state.omega,
                  control.a1, control.a2, params, atmos)


def step(state: UavState, control: ControlInput, params: UavParams,
         atmos: AtmosphereModel, dt: float, substeps: int = 5) -> UavState:
    """Advance the state by dt under a held control, classical RK4 per substep."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if substeps < 1:
        raise ValueError(f"substeps must be >= 1, got {substeps!r}")
    a1, a2 = control.a1, control.a2
    h = dt / substeps
    x, alt = state.x, state.altitude
    vx, vy = state.vx, state.vy
    beta, omega = state.tilt, state.omega
    for _ in range(substeps):
        k1 = _rates(alt, vx, vy, beta, omega, a1, a2, params, atmos)
        k2 = _rates(alt + 0.5 * h * k1[1], vx + 0.5 * h * k1[2], vy + 0.5 * h * k1[3],
                    beta + 0.5 * h * k1[4], omega + 0.5 * h * k1[5], a1, a2, params, atmos)
        k3 = _rates(alt + 0.5 * h * k2[1], vx + 0.5 * h * k2[2], vy + 0.5 * h * k2[3],
                    beta + 0.5 * h * k2[4], omega + 0.5 * h * k2[5], a1, a2, params, atmos)
        k4 = _rates(alt + h * k3[1], vx + h * k3[2], vy + h * k3[3],
                    beta + h * k3[4], omega + h * k3[5], a1, a2, params, atmos)
        w = h / 6.0
        x += w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        alt += w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        vx += w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        vy += w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        beta += w * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        omega += w * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        if not all(map(math.isfinite, (x, alt, vx, vy, beta, omega))):
            raise IntegrationError("state became non-finite during integration")
    return replace(state, x=x, altitude=alt, vx=vx, vy=vy,
                   tilt=wrap_angle(beta), omega=omega, time=state.time + dt)


def angle_of_attack(state: UavState) -> float:
    """Angle from the body axis to the velocity direction; zero at rest."""
    if state.speed() < 1e-9:
        return 0.0
    return wrap_angle(math.atan2(state.vy, state.vx) - state.tilt)
