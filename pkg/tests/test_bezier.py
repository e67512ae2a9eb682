import math
import random

import pytest

from uavsim.bezier import (FEASIBILITY_SLACK, MIN_TIME_CAP, BoundaryConditions,
                           KinematicLimits, acceleration, build_curve,
                           is_feasible, max_accel, max_speed, min_time,
                           position, velocity)
from uavsim.geometry import PlanarVector


def random_vel(rng, speed_cap):
    ang = rng.uniform(-math.pi, math.pi)
    mag = rng.uniform(0.0, speed_cap)
    return PlanarVector(mag * math.cos(ang), mag * math.sin(ang))


def random_bc(rng, pos_scale=1000.0, speed_cap=30.0):
    return BoundaryConditions(
        PlanarVector(rng.uniform(-pos_scale, pos_scale), rng.uniform(-pos_scale, pos_scale)),
        random_vel(rng, speed_cap),
        PlanarVector(rng.uniform(-pos_scale, pos_scale), rng.uniform(-pos_scale, pos_scale)),
        random_vel(rng, speed_cap),
    )


def rel_err(got, want):
    scale = max(abs(want.x), abs(want.y), 1.0)
    return max(abs(got.x - want.x), abs(got.y - want.y)) / scale


def test_endpoints_match_boundary_conditions():
    rng = random.Random(2024)
    for _ in range(1000):
        bc = random_bc(rng)
        curve = build_curve(bc, rng.uniform(0.5, 60.0))
        assert position(curve, 0.0) == bc.start_pos
        assert position(curve, 1.0) == bc.end_pos
        assert rel_err(velocity(curve, 0.0), bc.start_vel) < 1e-9
        assert rel_err(velocity(curve, 1.0), bc.end_vel) < 1e-9


def test_velocity_matches_finite_difference_of_position():
    rng = random.Random(7)
    h = 1e-6
    for _ in range(1000):
        bc = random_bc(rng)
        curve = build_curve(bc, rng.uniform(0.5, 60.0))
        tau = rng.uniform(h, 1.0 - h)
        p_lo = position(curve, tau - h)
        p_hi = position(curve, tau + h)
        fd = (p_hi - p_lo) * (1.0 / (2.0 * h * curve.duration))
        assert rel_err(velocity(curve, tau), fd) < 1e-5


def test_acceleration_matches_finite_difference_of_velocity():
    rng = random.Random(8)
    h = 1e-6
    for _ in range(1000):
        bc = random_bc(rng)
        curve = build_curve(bc, rng.uniform(0.5, 60.0))
        tau = rng.uniform(h, 1.0 - h)
        v_lo = velocity(curve, tau - h)
        v_hi = velocity(curve, tau + h)
        fd = (v_hi - v_lo) * (1.0 / (2.0 * h * curve.duration))
        assert rel_err(acceleration(curve, tau), fd) < 1e-5


def test_max_speed_dominates_dense_sampling():
    rng = random.Random(11)
    for _ in range(300):
        bc = random_bc(rng)
        curve = build_curve(bc, rng.uniform(0.5, 30.0))
        peak, tau_at = max_speed(curve)
        assert 0.0 <= tau_at <= 1.0
        assert math.isclose(velocity(curve, tau_at).norm(), peak, rel_tol=1e-12)
        sampled = max(velocity(curve, i / 800).norm() for i in range(801))
        assert peak >= sampled - 1e-9 * max(sampled, 1.0)


def test_max_accel_is_at_an_endpoint():
    rng = random.Random(12)
    for _ in range(300):
        bc = random_bc(rng)
        curve = build_curve(bc, rng.uniform(0.5, 30.0))
        peak, tau_at = max_accel(curve)
        assert tau_at in (0.0, 1.0)
        assert math.isclose(acceleration(curve, tau_at).norm(), peak, rel_tol=1e-12)
        sampled = max(acceleration(curve, i / 400).norm() for i in range(401))
        assert peak >= sampled - 1e-9 * max(sampled, 1.0)


@pytest.mark.parametrize("d", [10.0, 100.0, 1000.0])
def test_min_time_rest_to_rest_closed_form(d):
    limits = KinematicLimits()
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(0, 0),
                            PlanarVector(d, 0), PlanarVector(0, 0))
    result = min_time(bc, limits)
    closed = max(1.5 * d / limits.v_max, math.sqrt(6.0 * d / limits.a_max))
    assert result.feasible
    assert abs(result.t_min - closed) / closed < 1e-3


def test_min_time_value_for_100m_dash():
    # rest-to-rest over 100 m is acceleration-limited: sqrt(6*100/16.8)
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(0, 0),
                            PlanarVector(100, 0), PlanarVector(0, 0))
    result = min_time(bc, KinematicLimits())
    assert abs(result.t_min - 5.976143) < 1e-3


def test_min_time_is_minimal():
    rng = random.Random(33)
    limits = KinematicLimits()
    for _ in range(500):
        bc = random_bc(rng, pos_scale=800.0, speed_cap=29.0)
        result = min_time(bc, limits)
        assert result.feasible
        assert is_feasible(bc, result.t_min, limits)
        assert not is_feasible(bc, result.t_min * (1.0 - 1e-4), limits)


def test_min_time_degenerate_case_is_zero():
    bc = BoundaryConditions(PlanarVector(5, 5), PlanarVector(0, 0),
                            PlanarVector(5, 5), PlanarVector(0, 0))
    result = min_time(bc, KinematicLimits())
    assert result.t_min == 0.0 and result.feasible


def test_min_time_rejects_overspeed_endpoints():
    limits = KinematicLimits(v_max=10.0, a_max=16.8)
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(20, 0),
                            PlanarVector(100, 0), PlanarVector(0, 0))
    result = min_time(bc, limits)
    assert not result.feasible and math.isinf(result.t_min)


def test_min_time_reports_infeasible_beyond_cap():
    limits = KinematicLimits(v_max=1e-3, a_max=16.8)
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(0, 0),
                            PlanarVector(100, 0), PlanarVector(0, 0))
    result = min_time(bc, limits)
    assert not result.feasible and math.isinf(result.t_min)
    # the cap is the boundary: 1.5*d/v_max for this case is far above it
    assert 1.5 * 100.0 / limits.v_max > MIN_TIME_CAP


def test_feasibility_slack_at_exact_limit():
    # rest-to-rest at the closed-form duration sits exactly on the accel limit
    limits = KinematicLimits()
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(0, 0),
                            PlanarVector(100, 0), PlanarVector(0, 0))
    t_star = math.sqrt(6.0 * 100.0 / limits.a_max)
    assert is_feasible(bc, t_star * (1.0 + 1e-12), limits)
    assert FEASIBILITY_SLACK > 0.0


def test_build_curve_validates_duration():
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(1, 0),
                            PlanarVector(1, 1), PlanarVector(0, 1))
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            build_curve(bc, bad)


def test_curve_evaluation_validates_tau():
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(1, 0),
                            PlanarVector(1, 1), PlanarVector(0, 1))
    curve = build_curve(bc, 2.0)
    for bad in (-0.01, 1.01, math.nan):
        with pytest.raises(ValueError):
            position(curve, bad)
        with pytest.raises(ValueError):
            velocity(curve, bad)
        with pytest.raises(ValueError):
            acceleration(curve, bad)


def test_min_time_validates_inputs():
    bc = BoundaryConditions(PlanarVector(0, 0), PlanarVector(0, 0),
                            PlanarVector(1, 0), PlanarVector(0, 0))
    with pytest.raises(ValueError):
        min_time(bc, KinematicLimits(v_max=0.0, a_max=1.0))
    with pytest.raises(ValueError):
        min_time(bc, KinematicLimits(v_max=1.0, a_max=-1.0))
    bad = BoundaryConditions(PlanarVector(math.nan, 0), PlanarVector(0, 0),
                             PlanarVector(1, 0), PlanarVector(0, 0))
    with pytest.raises(ValueError):
        min_time(bad, KinematicLimits())


def test_min_time_deterministic():
    rng = random.Random(55)
    limits = KinematicLimits()
    for _ in range(50):
        bc = random_bc(rng)
        assert min_time(bc, limits) == min_time(bc, limits)
