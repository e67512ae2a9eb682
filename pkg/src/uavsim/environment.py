"""Episode orchestration for the three flight scenarios.

Scenario 1 flies a UAV to a random fixed point with a required arrival
velocity.  Scenario 2 adds an ideal constant-speed interceptor spawned close
enough to have a theoretical shot at the UAV.  Scenario 3 replaces it with a
second, agent-controlled UAV whose goal point tracks the first UAV.

All entities advance simultaneously over one control period per step, with
controls and the interceptor aim point frozen at the interval start.  Episode
randomness comes from independent counter-based streams keyed by (seed,
entity), so adding an entity to a scenario never shifts the other draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dynamics
from . import interceptor as guidance
from . import reward as rewards
from .atmosphere import AtmosphereModel
from .bezier import BoundaryConditions, KinematicLimits, min_time
from .dynamics import ControlInput, IntegrationError, UavParams, UavState
from .geometry import PlanarVector, unit, wrap_angle
from .interceptor import InterceptorParams, InterceptorState
from .reward import RewardConfig

SCENARIO_AGENTS: dict[int, tuple[str, ...]] = {
    1: ("evader",),
    2: ("evader",),
    3: ("evader", "interceptor"),
}

STATUS_RUNNING = "running"
STATUSES = ("running", "success", "out_of_bounds", "overspin", "intercepted", "max_steps")

#: Names of the 13 observation components, in order.
OBSERVATION_FIELDS = (
    "altitude", "omega", "alpha", "beta", "speed",
    "target_distance", "target_speed", "target_bearing", "target_velocity_angle",
    "opponent_distance", "opponent_speed", "opponent_bearing", "opponent_velocity_angle",
)

_MASK64 = (1 << 64) - 1
_SPAWN_TRIES = 100


class EpisodeConfigurationError(RuntimeError):
    """Spawning could not produce a valid episode under the given config."""


@dataclass
class EpisodeConfig:
    """All tunables for an episode; every field maps to one config-file key."""

    world_x: tuple[float, float] = (-5000.0, 5000.0)
    world_h: tuple[float, float] = (0.0, 3000.0)
    spawn_x: tuple[float, float] = (-4000.0, 4000.0)
    spawn_h: tuple[float, float] = (0.0, 2500.0)
    init_speed: tuple[float, float] = (0.0, 2.0)
    init_tilt: tuple[float, float] = (-math.radians(10.0), math.radians(10.0))
    init_omega: tuple[float, float] = (-0.01, 0.01)
    target_speed: tuple[float, float] = (1.0, 13.0)
    omega_limit: float = 20.0
    max_steps: int = 2400
    interceptor_speed: tuple[float, float] = (20.0, 40.0)
    interceptor_accel: tuple[float, float] = (20.0, 40.0)
    interceptor_lead: tuple[float, float] = (0.0, 1.0)
    interceptor_deadzone: tuple[float, float] = (0.035, 0.175)
    spawn_radius_factor: float = 0.9
    pursuit_speed_factor: float = 1.2
    pursuer_spawn_radius: float = 500.0
    pursuit_closing_direction: bool = True
    substeps: int = 5
    uav: UavParams = field(default_factory=UavParams)
    limits: KinematicLimits = field(default_factory=KinematicLimits)
    reward: RewardConfig = field(default_factory=RewardConfig)
    atmosphere: AtmosphereModel = field(default_factory=AtmosphereModel)


def _validate_config(cfg: EpisodeConfig) -> None:
    for name in ("world_x", "world_h", "spawn_x", "spawn_h", "init_speed",
                 "init_tilt", "init_omega", "target_speed", "interceptor_speed",
                 "interceptor_accel", "interceptor_lead", "interceptor_deadzone"):
        lo, hi = getattr(cfg, name)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ValueError(f"config interval {name} is empty or non-finite: ({lo}, {hi})")
    if not (cfg.world_x[0] <= cfg.spawn_x[0] and cfg.spawn_x[1] <= cfg.world_x[1]
            and cfg.world_h[0] <= cfg.spawn_h[0] and cfg.spawn_h[1] <= cfg.world_h[1]):
        raise ValueError("spawn region must lie inside the world region")
    if cfg.max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if cfg.substeps < 1:
        raise ValueError("substeps must be >= 1")


@dataclass
class EpisodeState:
    scenario: int
    seed: int
    config: EpisodeConfig
    evader: UavState
    destination: PlanarVector
    target_velocity: PlanarVector
    interceptor_state: Optional[InterceptorState] = None
    interceptor_params: Optional[InterceptorParams] = None
    pursuer: Optional[UavState] = None
    step_index: int = 0
    prev_tmin: dict[str, float] = field(default_factory=dict)
    initial_tmin: dict[str, float] = field(default_factory=dict)
    status: str = STATUS_RUNNING

    @property
    def agents(self) -> tuple[str, ...]:
        return SCENARIO_AGENTS[self.scenario]

    def uav(self, agent: str) -> UavState:
        if agent == "evader":
            return self.evader
        if agent == "interceptor" and self.pursuer is not None:
            return self.pursuer
        raise ValueError(f"unknown agent {agent!r} for scenario {self.scenario}")


@dataclass
class StepOutcome:
    observations: dict[str, np.ndarray]
    rewards: dict[str, float]
    done: bool
    status: str
    info: dict


def _stream(seed: int, entity: int) -> np.random.Generator:
    key = np.array([seed & _MASK64, entity], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _uav_pos(u: UavState) -> PlanarVector:
    return PlanarVector(u.x, u.altitude)


def _uav_vel(u: UavState) -> PlanarVector:
    return PlanarVector(u.vx, u.vy)


def _in_world(p: PlanarVector, cfg: EpisodeConfig) -> bool:
    return (cfg.world_x[0] <= p.x <= cfg.world_x[1]
            and cfg.world_h[0] <= p.y <= cfg.world_h[1])


def _spawn_uav_at(pos: PlanarVector, rng: np.random.Generator, cfg: EpisodeConfig) -> UavState:
    ang = rng.uniform(-math.pi, math.pi)
    speed = rng.uniform(*cfg.init_speed)
    tilt = rng.uniform(*cfg.init_tilt)
    omega = rng.uniform(*cfg.init_omega)
    return UavState(x=pos.x, altitude=pos.y, vx=speed * math.cos(ang),
                    vy=speed * math.sin(ang), tilt=tilt, omega=omega, time=0.0)


def _evader_goal(state_or: "EpisodeState") -> BoundaryConditions:
    s = state_or
    return BoundaryConditions(_uav_pos(s.evader), _uav_vel(s.evader),
                              s.destination, s.target_velocity)


def pursuit_target(state: EpisodeState) -> BoundaryConditions:
    """Moving goal for the pursuing agent: the evader's current position, to be
    reached at 1.2x the evader's speed along the line of sight (capped at the
    speed limit so the time-to-go solve stays feasible)."""
    if state.scenario != 3:
        raise RuntimeError("pursuit_target is only defined for scenario 3")
    me = state.pursuer
    los = _uav_pos(state.evader) - _uav_pos(me)
    direction = unit(los)
    if not state.config.pursuit_closing_direction:
        direction = -direction
    speed = min(state.config.pursuit_speed_factor * state.evader.speed(),
                state.config.limits.v_max)
    return BoundaryConditions(_uav_pos(me), _uav_vel(me),
                              _uav_pos(state.evader), direction * speed)


def _agent_goal(state: EpisodeState, agent: str) -> BoundaryConditions:
    return _evader_goal(state) if agent == "evader" else pursuit_target(state)


def reset(scenario: int, seed: int, cfg: Optional[EpisodeConfig] = None
          ) -> tuple[EpisodeState, dict[str, np.ndarray]]:
    """Spawn a fresh episode; (scenario, seed, cfg) fully determine the result."""
    if scenario not in SCENARIO_AGENTS:
        raise ValueError(f"scenario must be 1, 2 or 3, got {scenario!r}")
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    cfg = cfg if cfg is not None else EpisodeConfig()
    _validate_config(cfg)

    evader_rng = _stream(seed, 0)
    dest_rng = _stream(seed, 1)
    opp_rng = _stream(seed, 2)

    for _ in range(_SPAWN_TRIES):
        pos = PlanarVector(evader_rng.uniform(*cfg.spawn_x), evader_rng.uniform(*cfg.spawn_h))
        evader = _spawn_uav_at(pos, evader_rng, cfg)
        destination = PlanarVector(dest_rng.uniform(*cfg.spawn_x), dest_rng.uniform(*cfg.spawn_h))
        ang = dest_rng.uniform(-math.pi, math.pi)
        speed = dest_rng.uniform(*cfg.target_speed)
        target_velocity = PlanarVector(speed * math.cos(ang), speed * math.sin(ang))
        if (pos - destination).norm() < cfg.reward.stop_radius:
            # already inside the arrival radius: the episode would terminate
            # before any control could act, so the draw is rejected
            continue
        state = EpisodeState(scenario=int(scenario), seed=int(seed), config=cfg,
                             evader=evader, destination=destination,
                             target_velocity=target_velocity)
        t0 = min_time(_evader_goal(state), cfg.limits)
        if t0.feasible:
            break
    else:
        raise EpisodeConfigurationError(
            "could not spawn a feasible evader/destination pair in "
            f"{_SPAWN_TRIES} tries; check speed limits against spawn ranges")
    state.prev_tmin["evader"] = t0.t_min

    if scenario == 2:
        params = InterceptorParams(
            speed=opp_rng.uniform(*cfg.interceptor_speed),
            lateral_accel=opp_rng.uniform(*cfg.interceptor_accel),
            lead_fraction=opp_rng.uniform(*cfg.interceptor_lead),
            deadzone=opp_rng.uniform(*cfg.interceptor_deadzone),
        )
        radius = cfg.spawn_radius_factor * t0.t_min * params.speed
        pos = _spawn_in_disc(_uav_pos(evader), radius, opp_rng, cfg)
        heading = (_uav_pos(evader) - pos).angle()
        state.interceptor_state = InterceptorState(pos.x, pos.y, heading)
        state.interceptor_params = params
    elif scenario == 3:
        for _ in range(_SPAWN_TRIES):
            pos = _spawn_in_disc(destination, cfg.pursuer_spawn_radius, opp_rng, cfg)
            state.pursuer = _spawn_uav_at(pos, opp_rng, cfg)
            tp = min_time(pursuit_target(state), cfg.limits)
            if tp.feasible:
                break
        else:
            raise EpisodeConfigurationError(
                f"could not spawn a feasible pursuer in {_SPAWN_TRIES} tries")
        state.prev_tmin["interceptor"] = tp.t_min

    state.initial_tmin = dict(state.prev_tmin)
    return state, observations(state)


def _spawn_in_disc(center: PlanarVector, radius: float, rng: np.random.Generator,
                   cfg: EpisodeConfig) -> PlanarVector:
    # Area-uniform draw, rejected until inside the world region.
    for _ in range(_SPAWN_TRIES):
        ang = rng.uniform(-math.pi, math.pi)
        r = radius * math.sqrt(rng.uniform(0.0, 1.0))
        pos = center + PlanarVector(r * math.cos(ang), r * math.sin(ang))
        if _in_world(pos, cfg):
            return pos
    raise EpisodeConfigurationError(
        f"could not place an aircraft inside the world region in {_SPAWN_TRIES} tries")


def build_observation(state: EpisodeState, agent: str = "evader") -> np.ndarray:
    """13-component observation for one agent; opponent block zeroed when the
    scenario has no opposing aircraft."""
    uav = state.uav(agent)
    if agent == "evader":
        goal_pos, goal_vel = state.destination, state.target_velocity
        if state.scenario == 2:
            opp = (state.interceptor_state.position(),
                   state.interceptor_state.velocity(state.interceptor_params))
        elif state.scenario == 3:
            opp = (_uav_pos(state.pursuer), _uav_vel(state.pursuer))
        else:
            opp = None
    else:
        bc = pursuit_target(state)
        goal_pos, goal_vel = bc.end_pos, bc.end_vel
        opp = (_uav_pos(state.evader), _uav_vel(state.evader))

    pos = _uav_pos(uav)
    obs = np.zeros(13)
    obs[0] = uav.altitude
    obs[1] = uav.omega
    obs[2] = dynamics.angle_of_attack(uav)
    obs[3] = uav.tilt
    obs[4] = uav.speed()
    obs[5:9] = _sight_block(pos, uav.tilt, goal_pos, goal_vel)
    if opp is not None:
        obs[9:13] = _sight_block(pos, uav.tilt, opp[0], opp[1])
    return obs


def _sight_block(pos: PlanarVector, tilt: float, other: PlanarVector,
                 other_vel: PlanarVector) -> tuple[float, float, float, float]:
    los = other - pos
    los_angle = los.angle()
    bearing = wrap_angle(los_angle - tilt)
    vel_angle = wrap_angle(other_vel.angle() - los_angle)
    return los.norm(), other_vel.norm(), bearing, vel_angle


def observations(state: EpisodeState) -> dict[str, np.ndarray]:
    return {agent: build_observation(state, agent) for agent in state.agents}


def _resolve_status(out_of_bounds: bool, overspin: bool, intercepted: bool,
                    success: bool, hit_max_steps: bool) -> str:
    # Fixed priority when several conditions trigger in the same step.
    if out_of_bounds:
        return "out_of_bounds"
    if overspin:
        return "overspin"
    if intercepted:
        return "intercepted"
    if success:
        return "success"
    if hit_max_steps:
        return "max_steps"
    return STATUS_RUNNING


def _separation(state: EpisodeState) -> Optional[float]:
    if state.scenario == 2:
        return (state.interceptor_state.position() - _uav_pos(state.evader)).norm()
    if state.scenario == 3:
        return (_uav_pos(state.pursuer) - _uav_pos(state.evader)).norm()
    return None


def step(state: EpisodeState, actions: dict) -> StepOutcome:
    """Advance every entity by one control period and settle rewards."""
    if state.status != STATUS_RUNNING:
        raise RuntimeError("step() called on a finished episode")
    cfg = state.config
    controls: dict[str, ControlInput] = {}
    for agent in state.agents:
        if agent not in actions:
            raise ValueError(f"missing action for agent {agent!r}")
        act = actions[agent]
        controls[agent] = act if isinstance(act, ControlInput) else ControlInput(*act)

    aim = None
    if state.scenario == 2:
        aim = guidance.lead_point(_uav_pos(state.evader), _uav_vel(state.evader),
                                  state.interceptor_state.position(),
                                  state.interceptor_params)

    sub_dt = cfg.uav.control_period / cfg.substeps
    blown: set[str] = set()
    intercepted = False
    for _ in range(cfg.substeps):
        if "evader" not in blown:
            try:
                state.evader = dynamics.step(state.evader, controls["evader"],
                                             cfg.uav, cfg.atmosphere, sub_dt, 1)
            except IntegrationError:
                blown.add("evader")
        if state.pursuer is not None and "interceptor" not in blown:
            try:
                state.pursuer = dynamics.step(state.pursuer, controls["interceptor"],
                                              cfg.uav, cfg.atmosphere, sub_dt, 1)
            except IntegrationError:
                blown.add("interceptor")
        if state.interceptor_state is not None:
            state.interceptor_state = guidance.step(state.interceptor_state, aim,
                                                    state.interceptor_params, sub_dt)
        sep = _separation(state)
        if sep is not None and sep < cfg.reward.stop_radius:
            intercepted = True

    state.step_index += 1

    oob_agents = [a for a in state.agents
                  if a in blown or not _in_world(_uav_pos(state.uav(a)), cfg)]
    spun_agents = [a for a in state.agents
                   if abs(state.uav(a).omega) > cfg.omega_limit]
    separation = _separation(state)
    distance_to_target = (state.destination - _uav_pos(state.evader)).norm()
    status = _resolve_status(
        out_of_bounds=bool(oob_agents),
        overspin=bool(spun_agents),
        intercepted=intercepted,
        success=distance_to_target < cfg.reward.stop_radius,
        hit_max_steps=state.step_index >= cfg.max_steps,
    )

    new_tmin: dict[str, float] = {}
    shaped: dict[str, float] = {}
    for agent in state.agents:
        result = min_time(_agent_goal(state, agent), cfg.limits)
        # An infeasible solve (possible only under extreme configs) carries the
        # previous estimate forward, keeping the telescoping identity intact.
        t = result.t_min if result.feasible else state.prev_tmin[agent]
        shaped[agent] = rewards.step_reward(state.prev_tmin[agent], t)
        new_tmin[agent] = t
    state.prev_tmin = dict(new_tmin)

    rew = dict(shaped)
    if status == "out_of_bounds":
        for agent in oob_agents:
            rew[agent] += rewards.terminal_adjustment("out_of_bounds", cfg.reward)
    elif status == "overspin":
        for agent in spun_agents:
            rew[agent] += rewards.terminal_adjustment("overspin", cfg.reward)
    elif status == "intercepted":
        rew["evader"] += rewards.terminal_adjustment("intercepted", cfg.reward)
        if state.scenario == 3:
            rew["interceptor"] += rewards.terminal_adjustment("intercept_success", cfg.reward)
    elif status == "success":
        rew["evader"] = rewards.terminal_success_reward(
            shaped["evader"], _uav_vel(state.evader), state.target_velocity,
            new_tmin["evader"], cfg.reward)
    state.status = status

    info = {
        "step": state.step_index,
        "time": state.evader.time,
        "tmin": dict(new_tmin),
        "shaped": dict(shaped),
        "distance_to_target": distance_to_target,
        "separation": separation,
        "states": _entity_states(state),
    }
    return StepOutcome(observations=observations(state), rewards=rew,
                       done=status != STATUS_RUNNING, status=status, info=info)


def _entity_states(state: EpisodeState) -> dict:
    def uav_dict(u: UavState) -> dict:
        return {"x": u.x, "altitude": u.altitude, "vx": u.vx, "vy": u.vy,
                "tilt": u.tilt, "omega": u.omega, "time": u.time}

    out = {"evader": uav_dict(state.evader)}
    if state.interceptor_state is not None:
        s = state.interceptor_state
        out["interceptor"] = {"x": s.x, "altitude": s.altitude, "heading": s.heading}
    if state.pursuer is not None:
        out["interceptor"] = uav_dict(state.pursuer)
    return out
