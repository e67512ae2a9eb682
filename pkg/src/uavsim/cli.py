"""Command-line interface: solver queries, rollouts, sweeps, and the server.

All subcommands read defaults from the same configuration file (via --config
or the UAVSIM_CONFIG environment variable), so CLI and server behavior stay
in lockstep.  Exit codes: 0 success, 1 runtime failure (one-line diagnostic
on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from typing import Optional, Sequence

from . import config as config_io
from . import rollout as rollout_mod
from . import bezier
from .bezier import BoundaryConditions, build_curve, max_accel, max_speed, min_time
from .config import ConfigError
from .environment import STATUSES
from .geometry import PlanarVector
from .rollout import POLICY_NAMES
from .server import DEFAULT_PORT, EnvServer


def _vector4(text: str) -> tuple[float, float, float, float]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected x,y,vx,vy, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError("vector components must be finite")
    return values


def _seed_range(text: str) -> range:
    lo, colon, hi = text.partition(":")
    if not colon:
        raise argparse.ArgumentTypeError(f"expected A:B (half-open), got {text!r}")
    try:
        return range(int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integer bounds, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavsim",
        description="Planar UAV simulation: minimum-time solver, scripted "
                    "rollouts, seed sweeps, and a TCP environment server.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="configuration file (default: $UAVSIM_CONFIG if set)")

    p = sub.add_parser("mintime", parents=[common],
                       help="solve the minimum-time boundary-value problem")
    p.add_argument("--from", dest="start", type=_vector4, required=True,
                   metavar="X,Y,VX,VY", help="start position and velocity")
    p.add_argument("--to", dest="end", type=_vector4, required=True,
                   metavar="X,Y,VX,VY", help="end position and velocity")
    p.add_argument("--v-max", type=float, default=None, help="speed limit override (m/s)")
    p.add_argument("--a-max", type=float, default=None,
                   help="acceleration limit override (m/s^2)")
    p.add_argument("--samples", type=int, default=0, metavar="N",
                   help="print N evenly spaced trajectory rows")
    p.add_argument("--strict", action="store_true",
                   help="exit nonzero when the problem is infeasible")
    p.set_defaults(func=cmd_mintime)

    p = sub.add_parser("rollout", parents=[common],
                       help="run one scripted episode, optionally exporting a CSV")
    p.add_argument("--scenario", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", choices=POLICY_NAMES, default="goto")
    p.add_argument("--steps", type=int, default=None,
                   help="override max episode length")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the trajectory CSV here")
    p.set_defaults(func=cmd_rollout)

    p = sub.add_parser("sweep", parents=[common],
                       help="run a seed range and print per-seed plus aggregate tables")
    p.add_argument("--scenario", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--seeds", type=_seed_range, required=True, metavar="A:B",
                   help="half-open seed range, e.g. 0:100")
    p.add_argument("--policy", choices=POLICY_NAMES, default="goto")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", parents=[common],
                       help="serve environments over TCP (newline-delimited JSON)")
    p.add_argument("--port", type=int, default=DEFAULT_PORT,
                   help=f"listen port (default {DEFAULT_PORT}; 0 picks a free port)")
    p.add_argument("--bind", default="127.0.0.1", help="bind address")
    p.set_defaults(func=cmd_serve)
    return parser


def cmd_mintime(args) -> int:
    cfg = config_io.load(args.config)
    limits = cfg.limits
    if args.v_max is not None:
        limits = limits._replace(v_max=args.v_max)
    if args.a_max is not None:
        limits = limits._replace(a_max=args.a_max)
    bc = BoundaryConditions(PlanarVector(*args.start[:2]), PlanarVector(*args.start[2:]),
                            PlanarVector(*args.end[:2]), PlanarVector(*args.end[2:]))
    result = min_time(bc, limits)
    print(f"t_min = {result.t_min!r}")
    print(f"feasible = {str(result.feasible).lower()}")
    curve = None
    if result.feasible and result.t_min > 0.0:
        curve = build_curve(bc, result.t_min)
        speed, _ = max_speed(curve)
        accel, _ = max_accel(curve)
        print(f"max_speed = {speed!r} (limit {limits.v_max!r})")
        print(f"max_accel = {accel!r} (limit {limits.a_max!r})")
    elif result.feasible:
        print(f"max_speed = {bc.start_vel.norm()!r} (limit {limits.v_max!r})")
        print(f"max_accel = 0.0 (limit {limits.a_max!r})")
    if curve is not None and args.samples > 0:
        print("tau,x,H,vx,vy,ax,ay")
        n = args.samples
        for i in range(n):
            tau = 0.0 if n == 1 else i / (n - 1)
            pos = bezier.position(curve, tau)
            vel = bezier.velocity(curve, tau)
            acc = bezier.acceleration(curve, tau)
            print(",".join(repr(v) for v in (tau, pos.x, pos.y, vel.x, vel.y, acc.x, acc.y)))
    if args.strict and not result.feasible:
        print("error: no feasible trajectory under the given limits", file=sys.stderr)
        return 1
    return 0


def cmd_rollout(args) -> int:
    cfg = config_io.load(args.config)
    if args.steps is not None:
        if args.steps < 1:
            print("error: --steps must be >= 1", file=sys.stderr)
            return 2
        cfg = dataclasses.replace(cfg, max_steps=args.steps)
    policy = rollout_mod.make_policy(args.policy, args.seed, cfg)
    summary = rollout_mod.run_episode(args.scenario, args.seed, policy, cfg,
                                      record=args.out is not None)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(summary.trajectory)
    print(f"status = {summary.status}")
    print(f"steps = {summary.steps}")
    print(f"sim_time = {summary.sim_time!r}")
    for agent in sorted(summary.total_reward):
        print(f"reward[{agent}] = {summary.total_reward[agent]!r}")
        print(f"shaped[{agent}] = {summary.total_shaped[agent]!r}")
        print(f"tmin[{agent}] = {summary.initial_tmin[agent]!r} -> "
              f"{summary.final_tmin[agent]!r}")
    print(f"telescoping_residual = {summary.telescoping_residual!r}")
    print(f"distance_to_target = {summary.distance_to_target!r}")
    return 0


def cmd_sweep(args) -> int:
    if len(args.seeds) == 0:
        print("error: empty seed range", file=sys.stderr)
        return 2
    cfg = config_io.load(args.config)
    counts = {status: 0 for status in STATUSES if status != "running"}
    total_reward = 0.0
    print("seed,status,steps,reward")
    for seed in args.seeds:
        policy = rollout_mod.make_policy(args.policy, seed, cfg)
        summary = rollout_mod.run_episode(args.scenario, seed, policy, cfg)
        reward = summary.total_reward["evader"]
        counts[summary.status] += 1
        total_reward += reward
        print(f"{seed},{summary.status},{summary.steps},{reward!r}")
    n = len(args.seeds)
    print()
    print("episodes,success_rate,intercepted_rate,out_of_bounds_rate,"
          "overspin_rate,max_steps_rate,mean_reward")
    rates = [counts[s] / n for s in ("success", "intercepted", "out_of_bounds",
                                     "overspin", "max_steps")]
    print(",".join([str(n)] + [repr(r) for r in rates] + [repr(total_reward / n)]))
    return 0


def cmd_serve(args) -> int:
    cfg = config_io.load(args.config)
    server = EnvServer((args.bind, args.port), cfg)
    host, port = server.server_address[:2]
    print(f"listening on {host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
