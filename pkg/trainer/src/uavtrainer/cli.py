"""Command-line entry points: ``uavtrainer train`` and ``uavtrainer summarize``."""

from __future__ import annotations

import argparse
import json
import sys

from .algorithms import ALGORITHMS
from .summarize import DEFAULT_WINDOW, load_log, summarize, write_curve
from .train import DEFAULT_REDUCED_CONFIG, MODES, TrainRun, train


def _parse_config(pairs):
    config = {}
    for pair in pairs or ():
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise SystemExit(f"uavtrainer: bad --config entry {pair!r}, "
                             f"expected key=JSONVALUE")
        try:
            config[key] = json.loads(raw)
        except json.JSONDecodeError:
            raise SystemExit(f"uavtrainer: --config value for {key!r} "
                             f"is not valid JSON: {raw!r}")
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavtrainer",
        description="Train and summarize policies against a uavsim server.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="run a training session")
    p_train.add_argument("--host", default="127.0.0.1")
    p_train.add_argument("--port", type=int, required=True)
    p_train.add_argument("--algorithm", default="SAC",
                         choices=list(ALGORITHMS) + [a.lower() for a in ALGORITHMS])
    p_train.add_argument("--mode", default="learn", choices=MODES)
    p_train.add_argument("--scenario", type=int, default=1)
    p_train.add_argument("--episodes", type=int, default=300)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--log", default="train_log.csv")
    p_train.add_argument("--config", action="append", metavar="KEY=JSON",
                         help="environment config override, repeatable")
    p_train.add_argument("--reduced", action="store_true",
                         help="apply the shrunken spawn region and step cap")
    p_train.add_argument("--resume", action="store_true",
                         help="continue after the last completed episode in the log")
    p_train.add_argument("--quiet", action="store_true")

    p_sum = sub.add_parser("summarize", help="write a learning curve from a log")
    p_sum.add_argument("--log", required=True)
    p_sum.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p_sum.add_argument("--out", help="curve CSV path (default: print last row)")
    return parser


def cmd_train(args) -> int:
    config = dict(DEFAULT_REDUCED_CONFIG) if args.reduced else {}
    config.update(_parse_config(args.config))
    run = TrainRun(algorithm=args.algorithm.upper(), scenario=args.scenario,
                   episodes=args.episodes, seed=args.seed, host=args.host,
                   port=args.port, log_path=args.log, config=config or None,
                   mode=args.mode)
    result = train(run, resume=args.resume, quiet=args.quiet)
    print(f"completed {result.episodes_completed} episodes -> {result.log_path}")
    return 0


def cmd_summarize(args) -> int:
    episodes, rewards = load_log(args.log)
    rows = summarize(rewards, window=args.window)
    if args.out:
        write_curve(args.out, rows)
        print(f"wrote {len(rows)} rows -> {args.out}")
    else:
        episode, mean, low, high = rows[-1]
        print(f"episode {episode}: mean {mean:.3f}, "
              f"95% band [{low:.3f}, {high:.3f}]")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            return cmd_train(args)
        return cmd_summarize(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"uavtrainer: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
