"""Small planar-vector and angle helpers shared by every module."""

from __future__ import annotations

import math
from typing import NamedTuple

TWO_PI = 2.0 * math.pi


class PlanarVector(NamedTuple):
    """2-component real vector; unit (m, m/s, m/s^2) depends on context."""

    x: float
    y: float

    def __add__(self, other: "PlanarVector") -> "PlanarVector":
        return PlanarVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanarVector") -> "PlanarVector":
        return PlanarVector(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "PlanarVector":
        return PlanarVector(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> "PlanarVector":
        return PlanarVector(-self.x, -self.y)

    def dot(self, other: "PlanarVector") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "PlanarVector") -> float:
        """z-component of the 3D cross product (positive = other is CCW of self)."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        """Polar angle in (-pi, pi]; 0 for the zero vector (atan2 convention)."""
        return math.atan2(self.y, self.x)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


ZERO = PlanarVector(0.0, 0.0)


def wrap_angle(a: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = math.remainder(a, TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    return w


def unit(v: PlanarVector, eps: float = 0.0) -> PlanarVector:
    """Unit vector along v; the zero vector (norm <= eps) maps to itself."""
    n = v.norm()
    if n <= eps or n == 0.0:
        return ZERO
    return PlanarVector(v.x / n, v.y / n)
