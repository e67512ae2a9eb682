"""Boundary-value cubic Bezier trajectories and their minimum feasible flight time.

A curve is pinned by start/end position and velocity over a chosen duration T:
the inner control points are p1 = p0 + v_start*T/3 and p2 = p3 - v_end*T/3, so
the curve leaves the start with exactly v_start and arrives with exactly v_end.
Shrinking T raises the speeds and accelerations along the curve; `min_time`
searches for the smallest T at which both stay inside the configured limits.

The velocity hodograph is a quadratic Bezier curve and the acceleration
hodograph is linear in the curve parameter, which gives closed forms for the
extrema: the speed maximum comes from the real roots of a cubic, and the
acceleration maximum always sits at an endpoint because |a(tau)| is convex.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .geometry import PlanarVector

# Slack applied to limit comparisons so that a curve sitting exactly on a
# limit still counts as feasible despite rounding.
FEASIBILITY_SLACK = 1e-9

# Duration search controls.
MIN_TIME_TOL_REL = 1e-6
MIN_TIME_CAP = 1e4
MIN_TIME_MAX_ITER = 200
_DURATION_FLOOR = 1e-9
_DEGENERATE_EPS = 1e-12


class BoundaryConditions(NamedTuple):
    start_pos: PlanarVector
    start_vel: PlanarVector
    end_pos: PlanarVector
    end_vel: PlanarVector

    def is_finite(self) -> bool:
        return (self.start_pos.is_finite() and self.start_vel.is_finite()
                and self.end_pos.is_finite() and self.end_vel.is_finite())


class CubicCurve(NamedTuple):
    p0: PlanarVector
    p1: PlanarVector
    p2: PlanarVector
    p3: PlanarVector
    duration: float


class KinematicLimits(NamedTuple):
    v_max: float = 35.0
    a_max: float = 16.8


class MinTimeResult(NamedTuple):
    t_min: float
    feasible: bool
    iterations: int


def build_curve(bc: BoundaryConditions, duration: float) -> CubicCurve:
    """Construct the cubic whose endpoint positions and velocities match bc."""
    if not (isinstance(duration, (int, float)) and math.isfinite(duration)) or duration <= 0.0:
        raise ValueError(f"duration must be finite and positive, got {duration!r}")
    if not bc.is_finite():
        raise ValueError("boundary conditions must be finite")
    third = duration / 3.0
    p1 = bc.start_pos + bc.start_vel * third
    p2 = bc.end_pos - bc.end_vel * third
    return CubicCurve(bc.start_pos, p1, p2, bc.end_pos, float(duration))


def _check_tau(tau: float) -> None:
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"curve parameter must lie in [0, 1], got {tau!r}")


def position(curve: CubicCurve, tau: float) -> PlanarVector:
    """Point on the curve at parameter tau (Bernstein weights 1, 3, 3, 1)."""
    _check_tau(tau)
    u = 1.0 - tau
    b0 = u * u * u
    b1 = 3.0 * tau * u * u
    b2 = 3.0 * tau * tau * u
    b3 = tau * tau * tau
    return PlanarVector(
        b0 * curve.p0.x + b1 * curve.p1.x + b2 * curve.p2.x + b3 * curve.p3.x,
        b0 * curve.p0.y + b1 * curve.p1.y + b2 * curve.p2.y + b3 * curve.p3.y,
    )


def velocity(curve: CubicCurve, tau: float) -> PlanarVector:
    """Time derivative of position at tau; a quadratic Bezier in tau."""
    _check_tau(tau)
    u = 1.0 - tau
    k = 3.0 / curve.duration
    w0 = k * u * u
    w1 = k * 2.0 * tau * u
    w2 = k * tau * tau
    return PlanarVector(
        w0 * (curve.p1.x - curve.p0.x) + w1 * (curve.p2.x - curve.p1.x) + w2 * (curve.p3.x - curve.p2.x),
        w0 * (curve.p1.y - curve.p0.y) + w1 * (curve.p2.y - curve.p1.y) + w2 * (curve.p3.y - curve.p2.y),
    )


def acceleration(curve: CubicCurve, tau: float) -> PlanarVector:
    """Second time derivative at tau; affine in tau."""
    _check_tau(tau)
    k = 6.0 / (curve.duration * curve.duration)
    wa = tau - 1.0
    wb = 1.0 - 2.0 * tau
    return PlanarVector(
        k * (wa * (curve.p1.x - curve.p0.x) + wb * (curve.p2.x - curve.p1.x) + tau * (curve.p3.x - curve.p2.x)),
        k * (wa * (curve.p1.y - curve.p0.y) + wb * (curve.p2.y - curve.p1.y) + tau * (curve.p3.y - curve.p2.y)),
    )


def _hodograph_poly(curve: CubicCurve) -> tuple[float, float, float, float, float, float]:
    """Velocity as v(tau) = (c0x, c0y) + (c1x, c1y) tau + (c2x, c2y) tau^2."""
    k = 3.0 / curve.duration
    v0x = k * (curve.p1.x - curve.p0.x)
    v0y = k * (curve.p1.y - curve.p0.y)
    v1x = k * (curve.p2.x - curve.p1.x)
    v1y = k * (curve.p2.y - curve.p1.y)
    v2x = k * (curve.p3.x - curve.p2.x)
    v2y = k * (curve.p3.y - curve.p2.y)
    c1x = 2.0 * (v1x - v0x)
    c1y = 2.0 * (v1y - v0y)
    c2x = v0x - 2.0 * v1x + v2x
    c2y = v0y - 2.0 * v1y + v2y
    return v0x, v0y, c1x, c1y, c2x, c2y


def _real_cubic_roots(a3: float, a2: float, a1: float, a0: float) -> list[float]:
    """Real roots of a3 x^3 + a2 x^2 + a1 x + a0 = 0, degree-reduced when the
    leading coefficients are negligible relative to the largest one."""
    scale = max(abs(a3), abs(a2), abs(a1), abs(a0))
    if scale == 0.0:
        return []
    tiny = 1e-14 * scale
    if abs(a3) <= tiny:
        if abs(a2) <= tiny:
            if abs(a1) <= tiny:
                return []
            return [-a0 / a1]
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return []
        r = math.sqrt(disc)
        q = -0.5 * (a1 + math.copysign(r, a1))
        roots = [q / a2]
        if q != 0.0:
            roots.append(a0 / q)
        elif a0 == 0.0:
            roots.append(0.0)
        return roots
    # Depressed cubic y^3 + p y + q = 0 with x = y - b/3.
    b = a2 / a3
    c = a1 / a3
    d = a0 / a3
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    disc = 0.25 * q * q + p ** 3 / 27.0
    if disc > 0.0:
        s = math.sqrt(disc)
        u = _cbrt(-0.5 * q + s)
        v = _cbrt(-0.5 * q - s)
        return [u + v + shift]
    if p == 0.0:
        return [shift]  # triple root
    m = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    arg = max(-1.0, min(1.0, arg))
    theta = math.acos(arg) / 3.0
    return [m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _speed_sq(c: tuple[float, float, float, float, float, float], tau: float) -> float:
    vx = c[0] + tau * (c[2] + tau * c[4])
    vy = c[1] + tau * (c[3] + tau * c[5])
    return vx * vx + vy * vy


def max_speed(curve: CubicCurve) -> tuple[float, float]:
    """Global maximum speed over the curve and a parameter value attaining it.

    d|v|^2/dtau is a cubic solved in closed form; a dense-grid search backs it
    up if the root finder returns anything non-finite.
    """
    c = _hodograph_poly(curve)
    c0x, c0y, c1x, c1y, c2x, c2y = c
    # |v|^2 = q0 + q1 t + q2 t^2 + q3 t^3 + q4 t^4
    q1 = 2.0 * (c0x * c1x + c0y * c1y)
    q2 = c1x * c1x + c1y * c1y + 2.0 * (c0x * c2x + c0y * c2y)
    q3 = 2.0 * (c1x * c2x + c1y * c2y)
    q4 = c2x * c2x + c2y * c2y
    roots = _real_cubic_roots(4.0 * q4, 3.0 * q3, 2.0 * q2, q1)
    candidates = [0.0, 1.0]
    ok = True
    for r in roots:
        if not math.isfinite(r):
            ok = False
            break
        if 0.0 < r < 1.0:
            candidates.append(r)
    if not ok:
        return _grid_max_speed(c)
    best_tau = 0.0
    best = _speed_sq(c, 0.0)
    for tau in candidates[1:]:
        s = _speed_sq(c, tau)
        if s > best:
            best = s
            best_tau = tau
    return math.sqrt(best), best_tau


def _grid_max_speed(c: tuple[float, float, float, float, float, float]) -> tuple[float, float]:
    # 1025-point scan plus ternary refinement around the best sample.
    n = 1024
    best_i = 0
    best = _speed_sq(c, 0.0)
    for i in range(1, n + 1):
        s = _speed_sq(c, i / n)
        if s > best:
            best = s
            best_i = i
    lo = max(0.0, (best_i - 1) / n)
    hi = min(1.0, (best_i + 1) / n)
    for _ in range(80):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if _speed_sq(c, m1) < _speed_sq(c, m2):
            lo = m1
        else:
            hi = m2
    tau = 0.5 * (lo + hi)
    s = _speed_sq(c, tau)
    if s >= best:
        return math.sqrt(s), tau
    return math.sqrt(best), best_i / n


def max_accel(curve: CubicCurve) -> tuple[float, float]:
    """Maximum acceleration magnitude; |a(tau)| is convex, so an endpoint wins."""
    k = 6.0 / (curve.duration * curve.duration)
    a0x = k * (curve.p0.x - 2.0 * curve.p1.x + curve.p2.x)
    a0y = k * (curve.p0.y - 2.0 * curve.p1.y + curve.p2.y)
    a1x = k * (curve.p1.x - 2.0 * curve.p2.x + curve.p3.x)
    a1y = k * (curve.p1.y - 2.0 * curve.p2.y + curve.p3.y)
    m0 = math.hypot(a0x, a0y)
    m1 = math.hypot(a1x, a1y)
    if m1 > m0:
        return m1, 1.0
    return m0, 0.0


def is_feasible(bc: BoundaryConditions, duration: float, limits: KinematicLimits) -> bool:
    """True iff the curve built at this duration respects both limits."""
    curve = build_curve(bc, duration)
    speed, _ = max_speed(curve)
    if speed > limits.v_max * (1.0 + FEASIBILITY_SLACK):
        return False
    accel, _ = max_accel(curve)
    return accel <= limits.a_max * (1.0 + FEASIBILITY_SLACK)


def min_time(bc: BoundaryConditions, limits: KinematicLimits) -> MinTimeResult:
    """Smallest duration whose curve satisfies the limits.

    Brackets the feasibility boundary by exponential expansion (doubling when
    the initial guess is infeasible, halving when it is already feasible) and
    then bisects to a relative tolerance of MIN_TIME_TOL_REL.  Feasibility is
    not provably monotone in the duration, so minimality is a property of the
    crossing the bracket converges to; callers can verify it a posteriori.
    """
    if not (limits.v_max > 0.0 and limits.a_max > 0.0):
        raise ValueError("kinematic limits must be positive")
    if not bc.is_finite():
        raise ValueError("boundary conditions must be finite")

    d = (bc.end_pos - bc.start_pos).norm()
    if d <= _DEGENERATE_EPS and bc.start_vel.norm() <= _DEGENERATE_EPS \
            and bc.end_vel.norm() <= _DEGENERATE_EPS:
        return MinTimeResult(0.0, True, 0)

    # Endpoint velocities appear on the curve verbatim, so exceeding v_max
    # there can never be cured by a longer duration.
    vcap = limits.v_max * (1.0 + FEASIBILITY_SLACK)
    if bc.start_vel.norm() > vcap or bc.end_vel.norm() > vcap:
        return MinTimeResult(math.inf, False, 0)

    guess = max(1.5 * d / limits.v_max, math.sqrt(6.0 * d / limits.a_max), 1e-3)
    evals = 0

    def feasible(t: float) -> bool:
        nonlocal evals
        evals += 1
        return is_feasible(bc, t, limits)

    if feasible(guess):
        best = guess
    else:
        t = 2.0 * guess
        while not feasible(t):
            t *= 2.0
            if t > MIN_TIME_CAP:
                return MinTimeResult(math.inf, False, evals)
        best = t

    # Feasibility is not monotone in the duration (the endpoint acceleration
    # can dip through zero as T varies), so after each bisection the point just
    # below the bracket is probed; a feasible probe restarts the descent.
    while evals < MIN_TIME_MAX_ITER:
        lo = 0.5 * best
        while feasible(lo):
            best = lo
            lo *= 0.5
            if lo < _DURATION_FLOOR:
                return _capped(best, evals)
        hi = best
        while hi - lo > MIN_TIME_TOL_REL * hi and evals < MIN_TIME_MAX_ITER:
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                hi = mid
            else:
                lo = mid
        best = hi
        probe = best * (1.0 - 1e-4)
        if probe < _DURATION_FLOOR or not feasible(probe):
            return _capped(best, evals)
        best = probe
    return _capped(best, evals)


def _capped(t: float, evals: int) -> MinTimeResult:
    # Durations beyond the search cap are reported as infeasible outright.
    if t > MIN_TIME_CAP:
        return MinTimeResult(math.inf, False, evals)
    return MinTimeResult(t, True, evals)
