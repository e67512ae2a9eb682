"""Time-to-go shaping reward and the scenario terminal bonuses/penalties.

Each control step pays the decrease of the minimum feasible flight time to the
goal, so the per-step rewards telescope: their episode sum equals the initial
estimate minus the final one.  Terminal events add flat adjustments on top,
and a successful arrival earns a bonus that grows as the final velocity vector
approaches the required one and as the residual time-to-go shrinks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import PlanarVector

TERMINAL_EVENTS = ("out_of_bounds", "overspin", "intercepted", "intercept_success")


@dataclass(frozen=True)
class RewardConfig:
    boundary_penalty: float = 100.0
    spin_penalty: float = 100.0
    intercept_penalty: float = 100.0
    intercept_bonus: float = 100.0
    success_scale: float = 100.0
    stop_radius: float = 10.0       # m, arrival / interception distance
    vel_epsilon: float = 0.1        # m/s floor for the velocity-match term
    tmin_epsilon: float = 1e-3      # s floor for the residual time-to-go term
    # 'difference' grades |v_required - v_final|; 'sum' keeps |v_required +
    # v_final| for comparison even though it rewards anti-aligned arrivals.
    final_reward_denominator: str = "difference"


def step_reward(tmin_prev: float, tmin_curr: float) -> float:
    """Shaped reward for one step: positive when the time-to-go shrank."""
    return tmin_prev - tmin_curr


def terminal_success_reward(r_n: float, v_n: PlanarVector, v_d: PlanarVector,
                            tmin_n: float, cfg: RewardConfig) -> float:
    """Final-step reward on arrival inside the stop radius.

    r_n is the last shaped step reward and v_n/tmin_n the velocity and
    time-to-go estimate at that step; both denominators are floored to keep a
    perfect match finite.
    """
    if cfg.final_reward_denominator == "difference":
        dv = (v_d - v_n).norm()
    elif cfg.final_reward_denominator == "sum":
        dv = (v_d + v_n).norm()
    else:
        raise ValueError(f"unknown final_reward_denominator {cfg.final_reward_denominator!r}")
    vel_term = 2.0 * cfg.stop_radius / max(dv, cfg.vel_epsilon)
    time_term = 1.0 / max(tmin_n, cfg.tmin_epsilon)
    return r_n + cfg.success_scale * vel_term * time_term


def terminal_adjustment(event: str, cfg: RewardConfig) -> float:
    """Flat reward adjustment for a terminal event."""
    if event == "out_of_bounds":
        return -cfg.boundary_penalty
    if event == "overspin":
        return -cfg.spin_penalty
    if event == "intercepted":
        return -cfg.intercept_penalty
    if event == "intercept_success":
        return cfg.intercept_bonus
    raise ValueError(f"unknown terminal event {event!r}")
