import math

import pytest

from uavsim.atmosphere import MAX_ALTITUDE, AtmosphereModel, density, thrust_scale

MODEL = AtmosphereModel()


def test_sea_level_density():
    assert density(MODEL, 0.0) == 1.225


def test_density_reference_values():
    # frozen from the barometric formula with the module's constants
    assert abs(density(MODEL, 1000.0) - 1.111641) < 1e-4
    assert abs(density(MODEL, 3000.0) - 0.909165) < 1e-4


def test_density_strictly_decreasing():
    hs = [h * 500.0 for h in range(0, 22)]
    rhos = [density(MODEL, h) for h in hs]
    assert all(a > b for a, b in zip(rhos, rhos[1:]))
    assert all(r > 0.0 for r in rhos)


def test_density_domain():
    with pytest.raises(ValueError):
        density(MODEL, -0.001)
    with pytest.raises(ValueError):
        density(MODEL, MAX_ALTITUDE)
    assert density(MODEL, MAX_ALTITUDE - 1e-6) > 0.0


def test_thrust_scale_is_cube_root_of_density_ratio():
    assert thrust_scale(MODEL, 0.0) == 1.0
    for h in (500.0, 1500.0, 3000.0, 8000.0):
        s = thrust_scale(MODEL, h)
        assert 0.0 < s < 1.0
        assert math.isclose(s ** 3 * MODEL.rho0, density(MODEL, h), rel_tol=1e-12)


def test_custom_model_constants():
    thick = AtmosphereModel(rho0=2.0)
    assert density(thick, 0.0) == 2.0
    assert thrust_scale(thick, 0.0) == 1.0
