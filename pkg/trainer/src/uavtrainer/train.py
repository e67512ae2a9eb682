"""Training loop driving a remote simulation server over its wire protocol.

A run is described by :class:`TrainRun`.  ``train`` connects to the server,
plays the requested number of episodes, appends one CSV row per finished
episode to the log (``episode,steps,reward,status``), and writes the
learner's hyperparameters verbatim to a JSON sidecar next to the log.  If
the connection drops mid-run the log keeps every completed episode and a
:class:`ConnectionLostError` reports where to resume from.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path
from typing import Optional

import numpy as np

from .client import EnvClient, ServerDisconnected
from .normalize import Normalizer
from .remote_env import RemoteEnv

MODES = ("learn", "random")

# shrunken spawn region and episode cap used for short training budgets
DEFAULT_REDUCED_CONFIG = {
    "spawn_x": [-150.0, 150.0],
    "spawn_h": [700.0, 900.0],
    "max_steps": 150,
}

LOG_FIELDS = ("episode", "steps", "reward", "status")

# large prime stride keeps per-episode seeds disjoint across run seeds
EPISODE_SEED_STRIDE = 1_000_003


@dataclasses.dataclass
class TrainRun:
    """Everything needed to reproduce a training run."""

    algorithm: str = "SAC"
    scenario: int = 1
    episodes: int = 300
    seed: int = 0
    host: str = "127.0.0.1"
    port: int = 0
    log_path: str = "train_log.csv"
    config: Optional[dict] = None
    mode: str = "learn"
    hyperparameters: Optional[dict] = None  # overrides for the learner


@dataclasses.dataclass
class TrainResult:
    episodes_completed: int
    log_path: str
    hyperparameters: dict
    server_episode_count: int


class ConnectionLostError(RuntimeError):
    """Connection dropped mid-run; the log holds every completed episode."""

    def __init__(self, last_completed_episode: int, log_path: str,
                 cause: Exception):
        self.last_completed_episode = last_completed_episode
        self.log_path = log_path
        super().__init__(
            f"connection lost after episode {last_completed_episode}; "
            f"log {log_path!r} is intact, rerun with resume=True ({cause})")


def episode_seed(run_seed: int, episode: int) -> int:
    return run_seed * EPISODE_SEED_STRIDE + episode


def completed_episodes(log_path: str) -> int:
    """Number of finished-episode rows already present in a log file."""
    path = Path(log_path)
    if not path.exists():
        return 0
    with path.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    return len(rows)


def _open_log(log_path: str, resume: bool):
    path = Path(log_path)
    start = completed_episodes(log_path) if resume else 0
    if not resume or not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            csv.writer(fh).writerow(LOG_FIELDS)
    return start


def _write_sidecar(log_path: str, payload: dict) -> str:
    sidecar = str(Path(log_path).with_suffix(".hyperparameters.json"))
    Path(sidecar).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return sidecar


def train(run: TrainRun, resume: bool = False, quiet: bool = True) -> TrainResult:
    if run.mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {run.mode!r}")
    if run.episodes <= 0:
        raise ValueError("episodes must be positive")

    start_episode = _open_log(run.log_path, resume)
    if start_episode >= run.episodes:
        return TrainResult(0, run.log_path, {}, 0)

    client = EnvClient(run.host, run.port)
    try:
        env = RemoteEnv(client, scenario=run.scenario, config=run.config)

        if run.mode == "learn":
            from .algorithms import make_learner
            learner = make_learner(run.algorithm, env.observation_dim,
                                   env.action_dim, seed=run.seed,
                                   **(run.hyperparameters or {}))
            normalizer = Normalizer(env.observation_dim, learner.hp["gamma"])
            hp = dict(learner.hyperparameters, normalize_obs=True,
                      normalize_reward=True, normalize_clip=normalizer.clip)
        else:
            learner = None
            normalizer = None
            hp = {"algorithm": "random", "seed": run.seed}
        hp = dict(hp, scenario=run.scenario, episodes=run.episodes,
                  mode=run.mode, config=run.config)
        _write_sidecar(run.log_path, hp)
        if not quiet:
            print("hyperparameters: " + json.dumps(hp, sort_keys=True))

        action_rng = np.random.default_rng(run.seed)
        completed = start_episode
        try:
            for episode in range(start_episode, run.episodes):
                obs = env.reset(seed=episode_seed(run.seed, episode))
                if normalizer is not None:
                    obs = normalizer.observation(obs)
                total_reward = 0.0
                steps = 0
                status = ""
                done = False
                while not done:
                    if learner is None:
                        action = action_rng.uniform(-1.0, 1.0, env.action_dim)
                    else:
                        action = learner.act(obs)
                    nxt, reward, done, status = env.step(action)
                    if learner is not None:
                        nxt = normalizer.observation(nxt)
                        learner.observe(obs, action,
                                        normalizer.reward(reward, done),
                                        nxt, done)
                    obs = nxt
                    total_reward += reward
                    steps += 1
                with open(run.log_path, "a", newline="") as fh:
                    csv.writer(fh).writerow(
                        [episode + 1, steps, repr(total_reward), status])
                completed = episode + 1
                if not quiet:
                    print(f"episode {episode + 1}/{run.episodes}: "
                          f"steps={steps} reward={total_reward:.3f} {status}")
        except (ServerDisconnected, ConnectionError, OSError) as exc:
            raise ConnectionLostError(completed, run.log_path, exc) from exc

        server_count = client.close()
        started_here = client.episodes_started
        if server_count is not None and server_count != started_here:
            raise RuntimeError(
                f"episode accounting mismatch: server saw {server_count} "
                f"resets on this connection, trainer issued {started_here}")
        return TrainResult(completed - start_episode, run.log_path, hp,
                           server_count if server_count is not None else started_here)
    finally:
        client.disconnect()
