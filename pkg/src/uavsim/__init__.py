"""Deterministic planar UAV flight simulation with a minimum-time shaping reward.

Top-level re-exports cover the common workflow: solve boundary-value
minimum-time problems (`min_time`), run episodes (`reset` / `step`), and
configure them (`EpisodeConfig`).  The per-entity integrators are exported
as `dynamics_step` and `interceptor_step` to keep `step` for the
environment.  Submodules hold the rest: `dynamics`, `interceptor`,
`policies`, `rollout`, `server`, `config`, `cli`.
"""

from .atmosphere import AtmosphereModel, density, thrust_scale
from .bezier import (BoundaryConditions, CubicCurve, KinematicLimits,
                     MinTimeResult, acceleration, build_curve, is_feasible,
                     max_accel, max_speed, min_time, position, velocity)
from .dynamics import (ControlInput, IntegrationError, UavParams, UavState,
                       angle_of_attack)
from .dynamics import step as dynamics_step
from .environment import (OBSERVATION_FIELDS, SCENARIO_AGENTS, EpisodeConfig,
                          EpisodeConfigurationError, EpisodeState, StepOutcome,
                          build_observation, pursuit_target, reset, step)
from .geometry import PlanarVector
from .interceptor import InterceptorParams, InterceptorState, lead_point, turn_rate
from .interceptor import step as interceptor_step
from .policies import PdGains, goto_policy, hover_policy
from .reward import (RewardConfig, step_reward, terminal_adjustment,
                     terminal_success_reward)
from .rollout import (EpisodeSummary, TrajectoryRecorder, make_policy,
                      run_episode, trajectory_columns)

__version__ = "0.1.0"

__all__ = [
    "AtmosphereModel", "BoundaryConditions", "ControlInput", "CubicCurve",
    "EpisodeConfig", "EpisodeConfigurationError", "EpisodeState",
    "EpisodeSummary", "IntegrationError", "InterceptorParams",
    "InterceptorState", "KinematicLimits", "MinTimeResult",
    "OBSERVATION_FIELDS", "PdGains", "PlanarVector", "RewardConfig",
    "SCENARIO_AGENTS", "StepOutcome", "TrajectoryRecorder", "UavParams",
    "UavState", "acceleration", "angle_of_attack", "build_curve",
    "build_observation", "density", "dynamics_step", "goto_policy",
    "hover_policy", "interceptor_step", "is_feasible", "lead_point",
    "make_policy", "max_accel", "max_speed", "min_time", "position",
    "pursuit_target", "reset", "run_episode", "step", "step_reward",
    "terminal_adjustment", "terminal_success_reward", "thrust_scale",
    "trajectory_columns", "turn_rate", "velocity", "__version__",
]
