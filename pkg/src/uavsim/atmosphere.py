"""ICAO standard-atmosphere density and the altitude derating of rotor thrust."""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Standard gravity, shared with the rigid-body dynamics.
STANDARD_GRAVITY = 9.80665

#: Troposphere ceiling for this model.
MAX_ALTITUDE = 11000.0


@dataclass(frozen=True)
class AtmosphereModel:
    """Troposphere constants: rho(H) = rho0 * (1 - L*H/T0) ** (g0/(R*L) - 1)."""

    rho0: float = 1.225            # kg/m^3 sea-level density
    t0: float = 288.15             # K sea-level temperature
    lapse_rate: float = 0.0065     # K/m
    g0: float = STANDARD_GRAVITY   # m/s^2
    gas_constant: float = 287.05   # J/(kg K)


def density(model: AtmosphereModel, altitude: float) -> float:
    """Air density in kg/m^3; valid for 0 <= altitude < 11000 m."""
    if not (0.0 <= altitude < MAX_ALTITUDE):
        raise ValueError(f"altitude must lie in [0, {MAX_ALTITUDE}) m, got {altitude!r}")
    exponent = model.g0 / (model.gas_constant * model.lapse_rate) - 1.0
    return model.rho0 * (1.0 - model.lapse_rate * altitude / model.t0) ** exponent


def thrust_scale(model: AtmosphereModel, altitude: float) -> float:
    """Max-thrust derating F_max(H)/F_max(0): the cube root of the density ratio."""
    return (density(model, altitude) / model.rho0) ** (1.0 / 3.0)
