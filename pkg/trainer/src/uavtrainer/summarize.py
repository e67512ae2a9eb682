"""Learning-curve summaries: rolling mean with a 95% percentile band.

``summarize`` turns a per-episode reward sequence into one row per episode
containing the mean and the [2.5, 97.5] percentiles of the trailing window
(200 episodes by default).  Early episodes use however much history exists;
a window larger than the whole log shrinks to the log length with a warning.
"""

from __future__ import annotations

import csv
import warnings
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

DEFAULT_WINDOW = 200
PERCENTILES = (2.5, 97.5)

CURVE_FIELDS = ("episode", "mean", "p95_low", "p95_high")


def load_log(path: str) -> Tuple[List[int], np.ndarray]:
    """Read a training log; returns (episode numbers, rewards)."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"log {path!r} has no episodes")
    episodes = [int(row["episode"]) for row in rows]
    rewards = np.array([float(row["reward"]) for row in rows])
    return episodes, rewards


def summarize(rewards: Sequence[float],
              window: int = DEFAULT_WINDOW) -> List[Tuple[int, float, float, float]]:
    """Rolling mean and 95% band over the trailing ``window`` episodes."""
    rewards = np.asarray(rewards, dtype=float)
    if rewards.ndim != 1 or rewards.size == 0:
        raise ValueError("rewards must be a non-empty 1-d sequence")
    if window <= 0:
        raise ValueError("window must be positive")
    if window > rewards.size:
        warnings.warn(
            f"window {window} exceeds log length {rewards.size}; "
            f"shrinking to {rewards.size}", stacklevel=2)
        window = rewards.size
    rows = []
    for i in range(rewards.size):
        chunk = rewards[max(0, i + 1 - window):i + 1]
        low, high = np.percentile(chunk, PERCENTILES)
        rows.append((i + 1, float(chunk.mean()), float(low), float(high)))
    return rows


def write_curve(path: str, rows: Sequence[Tuple[int, float, float, float]]) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_FIELDS)
        for episode, mean, low, high in rows:
            writer.writerow([episode, repr(mean), repr(low), repr(high)])
