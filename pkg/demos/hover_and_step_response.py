"""
Hover trim and thrust step response
===================================

Find the collective thrust that balances gravity at a few altitudes, then
kick the vehicle with a short differential-thrust pulse and watch the tilt
and horizontal speed respond.
"""

from uavsim import (AtmosphereModel, ControlInput, UavParams, UavState,
                    density, dynamics_step, hover_policy, thrust_scale)

params = UavParams()
atmo = AtmosphereModel()

print("altitude   air density   thrust scale   hover setting")
for h in (0.0, 1000.0, 2000.0, 3000.0):
    hold = params.mass * atmo.g0 / (2.0 * params.f_max0 * thrust_scale(atmo, h))
    print(f"{h:7.0f}    {density(atmo, h):10.6f}   {thrust_scale(atmo, h):11.6f}"
          f"   {hold:12.6f}")
print()

# hold altitude under the scripted hover controller for twenty seconds
state = UavState(altitude=480.0)
target = 500.0
dt = 0.05
print("hover controller pulling up from 480 m to 500 m:")
print("   t      H        vy       beta")
for k in range(400):
    control = hover_policy(state, target)
    state = dynamics_step(state, control, params, atmo, dt)
    if (k + 1) % 80 == 0:
        print(f"  {state.time:4.0f}  {state.altitude:8.3f}  {state.vy:8.4f}"
              f"  {state.tilt:9.5f}")
print()

# differential doublet: pulse one way for 0.2 s, mirror it to stop the spin,
# then hold symmetric thrust and coast at the new tilt
state = UavState(altitude=1000.0)
hold = params.mass * atmo.g0 / (2.0 * params.f_max0 * thrust_scale(atmo, 1000.0))
print("differential doublet, then symmetric thrust:")
print("   t     beta      omega       vx")
for k in range(60):
    if k < 4:
        control = ControlInput(hold + 0.2, hold - 0.2)
    elif k < 8:
        control = ControlInput(hold - 0.2, hold + 0.2)
    else:
        control = ControlInput(hold, hold)
    state = dynamics_step(state, control, params, atmo, dt)
    if (k + 1) % 10 == 0:
        print(f"  {state.time:4.1f}  {state.tilt:8.4f}  {state.omega:8.4f}"
              f"  {state.vx:8.4f}")
print()
print("a negative tilt points the thrust vector toward +x, so vx grows")
