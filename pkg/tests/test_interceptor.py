import math
import random

import pytest

from uavsim.geometry import PlanarVector, wrap_angle
from uavsim.interceptor import (InterceptorParams, InterceptorState,
                                lead_point, step, turn_rate)


def test_speed_is_constant_per_step():
    rng = random.Random(4)
    params = InterceptorParams(speed=30.0, lateral_accel=25.0)
    state = InterceptorState(x=0.0, altitude=100.0, heading=0.3)
    aim = PlanarVector(500.0, 400.0)
    for _ in range(500):
        before = state
        state = step(state, aim, params, 0.01)
        dist = math.hypot(state.x - before.x, state.altitude - before.altitude)
        # arc length is speed*dt exactly; the chord is shorter by O(dt^2)
        assert dist <= 30.0 * 0.01 + 1e-12
        assert abs(state.velocity(params).norm() - 30.0) < 1e-12
        aim = PlanarVector(rng.uniform(-500, 500), rng.uniform(-500, 500))


def test_straight_flight_displacement():
    params = InterceptorParams(speed=25.0, lateral_accel=20.0)
    state = InterceptorState(x=0.0, altitude=0.0, heading=math.pi / 6)
    ahead = PlanarVector(1000.0 * math.cos(math.pi / 6), 1000.0 * math.sin(math.pi / 6))
    after = step(state, ahead, params, 0.5)
    assert math.isclose(math.hypot(after.x, after.altitude), 12.5, rel_tol=1e-12)
    assert after.heading == state.heading


def test_turn_rate_bound():
    rng = random.Random(9)
    for _ in range(500):
        params = InterceptorParams(speed=rng.uniform(20, 40),
                                   lateral_accel=rng.uniform(20, 40),
                                   lead_fraction=rng.uniform(0, 1),
                                   deadzone=rng.uniform(0, 0.2))
        state = InterceptorState(x=rng.uniform(-100, 100),
                                 altitude=rng.uniform(-100, 100),
                                 heading=rng.uniform(-math.pi, math.pi))
        aim = PlanarVector(rng.uniform(-200, 200), rng.uniform(-200, 200))
        r = turn_rate(state, aim, params)
        assert abs(r) <= params.lateral_accel / params.speed + 1e-15


def test_deadzone_holds_heading():
    params = InterceptorParams(speed=30.0, lateral_accel=30.0, deadzone=0.2)
    state = InterceptorState(x=0.0, altitude=0.0, heading=0.0)
    # aim 0.05 rad off-axis: inside the 0.1 rad half-cone
    aim = PlanarVector(100.0, 100.0 * math.tan(0.05))
    assert turn_rate(state, aim, params) == 0.0
    # just outside the cone it turns at the full rate
    aim = PlanarVector(100.0, 100.0 * math.tan(0.11))
    assert turn_rate(state, aim, params) == 1.0


def test_turn_direction_sign():
    params = InterceptorParams(speed=30.0, lateral_accel=15.0)
    state = InterceptorState(x=0.0, altitude=0.0, heading=0.0)
    assert turn_rate(state, PlanarVector(10.0, 10.0), params) > 0.0
    assert turn_rate(state, PlanarVector(10.0, -10.0), params) < 0.0
    # exactly astern is the tie case: turn positive
    assert turn_rate(state, PlanarVector(-10.0, 0.0), params) > 0.0


def test_pure_pursuit_heading_error_non_increasing():
    # bang-bang steering chatters once the error is below one step's turn,
    # so monotonicity is asserted down to that quantum and no further
    rng = random.Random(21)
    dt = 0.01
    for _ in range(50):
        params = InterceptorParams(speed=rng.uniform(20, 40),
                                   lateral_accel=rng.uniform(20, 40),
                                   lead_fraction=0.0, deadzone=0.0)
        state = InterceptorState(x=rng.uniform(-400, 400),
                                 altitude=rng.uniform(-400, 400),
                                 heading=rng.uniform(-math.pi, math.pi))
        target = PlanarVector(rng.uniform(-400, 400), rng.uniform(-400, 400))
        quantum = (params.lateral_accel / params.speed) * dt
        prev = None
        for _ in range(200):
            err = abs(wrap_angle((target - state.position()).angle() - state.heading))
            if err <= quantum or (target - state.position()).norm() < params.speed * dt:
                break
            if prev is not None:
                assert err <= prev + 1e-9
            prev = err
            state = step(state, target, params, dt)


def test_lead_point():
    params = InterceptorParams(speed=20.0, lateral_accel=20.0, lead_fraction=1.0)
    uav_pos = PlanarVector(100.0, 0.0)
    uav_vel = PlanarVector(0.0, 8.0)
    me = PlanarVector(0.0, 0.0)
    # time to fly the 100 m range at 20 m/s is 5 s: full lead is 40 m up
    aim = lead_point(uav_pos, uav_vel, me, params)
    assert aim == PlanarVector(100.0, 40.0)
    # pure pursuit aims at the target itself
    pp = InterceptorParams(speed=20.0, lateral_accel=20.0, lead_fraction=0.0)
    assert lead_point(uav_pos, uav_vel, me, pp) == uav_pos


def test_half_lead_point():
    params = InterceptorParams(speed=10.0, lateral_accel=20.0, lead_fraction=0.5)
    aim = lead_point(PlanarVector(50.0, 0.0), PlanarVector(4.0, 0.0),
                     PlanarVector(0.0, 0.0), params)
    assert aim == PlanarVector(60.0, 0.0)


def test_step_validates_dt():
    params = InterceptorParams(speed=30.0, lateral_accel=30.0)
    state = InterceptorState(x=0.0, altitude=0.0, heading=0.0)
    with pytest.raises(ValueError):
        step(state, PlanarVector(1.0, 0.0), params, 0.0)
    with pytest.raises(ValueError):
        step(state, PlanarVector(1.0, 0.0), params, -0.01)


def test_heading_stays_wrapped():
    params = InterceptorParams(speed=20.0, lateral_accel=40.0)
    state = InterceptorState(x=0.0, altitude=0.0, heading=3.0)
    aim = PlanarVector(-100.0, -1.0)
    for _ in range(400):
        state = step(state, aim, params, 0.05)
        assert -math.pi < state.heading <= math.pi
