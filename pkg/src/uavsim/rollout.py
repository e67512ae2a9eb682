"""Scripted episode execution and the trajectory export format.

The CSV recorder is fed plain dicts shaped exactly like the wire protocol
payloads, so a remote client and an in-process rollout build byte-identical
files from the same episode.  Floats are rendered with repr, which
round-trips 64-bit values exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import environment, policies
from .dynamics import ControlInput
from .environment import EpisodeConfig, EpisodeState, _entity_states, _stream

POLICY_NAMES = ("hover", "goto", "random")

PolicyFn = Callable[[EpisodeState, str], ControlInput]


def episode_snapshot(state: EpisodeState) -> dict:
    """Static episode facts plus initial entity states; the reset payload."""
    snap = {
        "scenario": state.scenario,
        "seed": state.seed,
        "agents": list(state.agents),
        "destination": {"x": state.destination.x, "h": state.destination.y},
        "target_velocity": {"vx": state.target_velocity.x, "vy": state.target_velocity.y},
        "tmin": dict(state.prev_tmin),
        "states": _entity_states(state),
    }
    if state.interceptor_params is not None:
        p = state.interceptor_params
        snap["interceptor_params"] = {
            "speed": p.speed, "lateral_accel": p.lateral_accel,
            "lead_fraction": p.lead_fraction, "deadzone": p.deadzone,
        }
    return snap


def make_policy(name: str, seed: int, cfg: EpisodeConfig) -> PolicyFn:
    """Baseline controller by name; `seed` only matters for `random`."""
    if name == "goto":
        def policy(state: EpisodeState, agent: str) -> ControlInput:
            if agent == "evader":
                dest = state.destination
            else:
                dest = environment.pursuit_target(state).end_pos
            return policies.goto_policy(state.uav(agent), dest,
                                        params=cfg.uav, atmosphere=cfg.atmosphere)
        return policy
    if name == "hover":
        holds: dict[str, float] = {}
        def policy(state: EpisodeState, agent: str) -> ControlInput:
            uav = state.uav(agent)
            target = holds.setdefault(agent, uav.altitude)
            return policies.hover_policy(uav, target,
                                         params=cfg.uav, atmosphere=cfg.atmosphere)
        return policy
    if name == "random":
        rngs = {"evader": _stream(seed, 100), "interceptor": _stream(seed, 101)}
        def policy(state: EpisodeState, agent: str) -> ControlInput:
            rng = rngs[agent]
            return ControlInput(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
        return policy
    raise ValueError(f"unknown policy {name!r}; expected one of {POLICY_NAMES}")


def trajectory_columns(scenario: int) -> list[str]:
    cols = ["step", "t", "x", "H", "vx", "vy", "beta", "omega",
            "a1", "a2", "tmin", "reward"]
    if scenario >= 2:
        cols += ["interceptor_x", "interceptor_h", "interceptor_vx", "interceptor_vy"]
    if scenario == 3:
        cols += ["interceptor_a1", "interceptor_a2", "interceptor_tmin",
                 "interceptor_reward"]
    return cols


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


class TrajectoryRecorder:
    """Accumulates one CSV row per control step (plus a spawn row at step 0)."""

    def __init__(self, scenario: int, snapshot: dict):
        self.scenario = int(scenario)
        params = snapshot.get("interceptor_params")
        self._interceptor_speed = None if params is None else float(params["speed"])
        self.lines = [",".join(trajectory_columns(self.scenario))]
        ev = snapshot["states"]["evader"]
        self._append(0, ev["time"], ev, None, None, snapshot["tmin"], None,
                     snapshot["states"].get("interceptor"), None)

    def record(self, step: int, actions: dict, states: dict, tmin: dict,
               rewards: dict) -> None:
        ev = states["evader"]
        self._append(step, ev["time"], ev, actions.get("evader"),
                     rewards.get("evader"), tmin, rewards.get("interceptor"),
                     states.get("interceptor"), actions.get("interceptor"))

    def _append(self, step, time, ev, ev_action, ev_reward, tmin,
                opp_reward, opp, opp_action) -> None:
        a1, a2 = (None, None) if ev_action is None else (ev_action[0], ev_action[1])
        cells = [str(step), _fmt(time), _fmt(ev["x"]), _fmt(ev["altitude"]),
                 _fmt(ev["vx"]), _fmt(ev["vy"]), _fmt(ev["tilt"]), _fmt(ev["omega"]),
                 _fmt(a1), _fmt(a2), _fmt(tmin.get("evader")), _fmt(ev_reward)]
        if self.scenario >= 2:
            if "heading" in opp:
                speed = self._interceptor_speed
                vx = speed * math.cos(opp["heading"])
                vy = speed * math.sin(opp["heading"])
            else:
                vx, vy = opp["vx"], opp["vy"]
            cells += [_fmt(opp["x"]), _fmt(opp["altitude"]), _fmt(vx), _fmt(vy)]
        if self.scenario == 3:
            oa1, oa2 = (None, None) if opp_action is None else (opp_action[0], opp_action[1])
            cells += [_fmt(oa1), _fmt(oa2), _fmt(tmin.get("interceptor")),
                      _fmt(opp_reward)]
        self.lines.append(",".join(cells))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.text())


@dataclass
class EpisodeSummary:
    scenario: int
    seed: int
    status: str
    steps: int
    total_reward: dict[str, float]
    total_shaped: dict[str, float]
    initial_tmin: dict[str, float]
    final_tmin: dict[str, float]
    sim_time: float
    distance_to_target: float
    trajectory: Optional[str] = None

    @property
    def telescoping_residual(self) -> float:
        """|sum of shaped rewards - (initial tmin - final tmin)|, worst agent."""
        worst = 0.0
        for agent, total in self.total_shaped.items():
            ideal = self.initial_tmin[agent] - self.final_tmin[agent]
            worst = max(worst, abs(total - ideal))
        return worst


def run_episode(scenario: int, seed: int, policy: PolicyFn,
                cfg: Optional[EpisodeConfig] = None,
                record: bool = False) -> EpisodeSummary:
    """Run one full episode under a scripted policy."""
    state, _ = environment.reset(scenario, seed, cfg)
    recorder = TrajectoryRecorder(scenario, episode_snapshot(state)) if record else None
    total = {agent: 0.0 for agent in state.agents}
    shaped = {agent: 0.0 for agent in state.agents}
    initial = dict(state.prev_tmin)
    outcome = None
    while state.status == environment.STATUS_RUNNING:
        actions = {agent: policy(state, agent) for agent in state.agents}
        outcome = environment.step(state, actions)
        for agent in state.agents:
            total[agent] += outcome.rewards[agent]
            shaped[agent] += outcome.info["shaped"][agent]
        if recorder is not None:
            recorder.record(outcome.info["step"],
                            {a: (c.a1, c.a2) for a, c in actions.items()},
                            outcome.info["states"], outcome.info["tmin"],
                            outcome.rewards)
    return EpisodeSummary(
        scenario=scenario, seed=state.seed, status=state.status,
        steps=state.step_index, total_reward=total, total_shaped=shaped,
        initial_tmin=initial, final_tmin=dict(state.prev_tmin),
        sim_time=state.evader.time,
        distance_to_target=outcome.info["distance_to_target"],
        trajectory=None if recorder is None else recorder.text())
