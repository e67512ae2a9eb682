import math
import random

from uavsim.atmosphere import AtmosphereModel, thrust_scale
from uavsim.bezier import BoundaryConditions, KinematicLimits, min_time
from uavsim.dynamics import UavParams, UavState
from uavsim.dynamics import step as dyn_step
from uavsim.environment import EpisodeConfig
from uavsim.geometry import PlanarVector
from uavsim.policies import PdGains, goto_policy, hover_policy

PARAMS = UavParams()
ATMO = AtmosphereModel()


def hover_level(altitude=0.0):
    scale = thrust_scale(ATMO, altitude)
    return PARAMS.mass * ATMO.g0 / (2.0 * PARAMS.f_max0 * scale)


def test_default_gains():
    g = PdGains()
    assert (g.kp_tilt, g.kd_tilt) == (9.0, 4.8)
    assert (g.kp_pos, g.kd_pos) == (0.4, 1.0)
    assert (g.kp_alt, g.kd_alt) == (0.6, 1.2)


def test_hover_balance_at_target():
    u = hover_policy(UavState(), 0.0)
    assert u.a1 == u.a2
    assert math.isclose(u.a1, 0.584, abs_tol=1e-3)
    assert math.isclose(u.a1, hover_level(0.0), rel_tol=1e-9)


def test_hover_below_target_descending():
    u = hover_policy(UavState(altitude=480.0, vy=-3.0), 500.0)
    assert u.a1 == u.a2
    assert u.a1 > hover_level(480.0)


def test_hover_damps_spin():
    u = hover_policy(UavState(altitude=500.0, omega=1.0), 500.0)
    assert u.a2 < u.a1


def test_hover_levels_tilt():
    u = hover_policy(UavState(altitude=500.0, tilt=0.2), 500.0)
    assert u.a2 < u.a1
    u = hover_policy(UavState(altitude=500.0, tilt=-0.2), 500.0)
    assert u.a2 > u.a1


def test_outputs_always_clamped():
    rng = random.Random(4)
    for _ in range(300):
        state = UavState(x=rng.uniform(-2000, 2000),
                         altitude=rng.uniform(0, 2500),
                         vx=rng.uniform(-30, 30), vy=rng.uniform(-30, 30),
                         tilt=rng.uniform(-3, 3), omega=rng.uniform(-15, 15))
        for u in (hover_policy(state, rng.uniform(0, 2500)),
                  goto_policy(state, PlanarVector(rng.uniform(-2000, 2000),
                                                  rng.uniform(0, 2500)))):
            assert 0.0 <= u.a1 <= 1.0 and 0.0 <= u.a2 <= 1.0


def test_hover_settles_from_offset():
    state = UavState(altitude=450.0)
    target = 500.0
    dt, substeps = 0.05, 5
    for k in range(int(30.0 / dt)):
        u = hover_policy(state, target)
        state = dyn_step(state, u, PARAMS, ATMO, dt, substeps)
    assert abs(state.altitude - target) < 5.0
    assert state.speed() < 1.0


def test_goto_straight_up():
    u = goto_policy(UavState(altitude=100.0), PlanarVector(0.0, 400.0))
    assert u.a1 == u.a2
    assert u.a1 > hover_level(100.0)


def test_goto_tips_toward_target():
    # thrust x-component is F*sin(-beta), so moving right needs negative tilt
    u = goto_policy(UavState(altitude=500.0), PlanarVector(1000.0, 500.0))
    assert u.a2 < u.a1
    u = goto_policy(UavState(altitude=500.0), PlanarVector(-1000.0, 500.0))
    assert u.a2 > u.a1


def test_goto_at_destination_is_hover():
    u = goto_policy(UavState(altitude=500.0), PlanarVector(0.0, 500.0))
    assert u.a1 == u.a2
    assert math.isclose(u.a1, hover_level(500.0), rel_tol=1e-6)


def goto_tmin_windows(seed, limits):
    """Simulate goto toward a nearby same-altitude point; sample tmin each 10 s."""
    rng = random.Random(seed)
    alt = rng.uniform(300.0, 1500.0)
    state = UavState(x=rng.uniform(-100.0, 100.0), altitude=alt)
    dest = PlanarVector(state.x + rng.uniform(150.0, 500.0) * rng.choice((-1, 1)),
                        alt)
    samples = []
    dt, substeps = 0.05, 5
    for k in range(int(60.0 / dt) + 1):
        if k % 200 == 0:
            bc = BoundaryConditions(PlanarVector(state.x, state.altitude),
                                    PlanarVector(state.vx, state.vy),
                                    dest, PlanarVector(0.0, 0.0))
            samples.append(min_time(bc, limits).t_min)
            if (dest - PlanarVector(state.x, state.altitude)).norm() < 10.0:
                break
        u = goto_policy(state, dest)
        state = dyn_step(state, u, PARAMS, ATMO, dt, substeps)
    return samples


def test_goto_reduces_time_to_go_each_window():
    limits = EpisodeConfig().limits
    for seed in range(12):
        samples = goto_tmin_windows(seed, limits)
        assert len(samples) >= 2
        for before, after in zip(samples, samples[1:]):
            assert after < before
