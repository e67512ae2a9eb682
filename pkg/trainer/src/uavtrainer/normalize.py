"""Running normalization of observations and rewards.

Raw observations span wildly different scales (metres in the hundreds,
velocities in tens, angles of order one) and terminal rewards are two
orders of magnitude larger than step rewards; feeding them to a value
network unscaled destabilizes learning.  This implements the usual
running-statistics scheme: observations are standardized by a running
mean/variance, rewards are divided by the running standard deviation of
the discounted return, and both are clipped.  All state updates are
deterministic functions of the transition stream, so seeded runs remain
exactly reproducible.
"""

from __future__ import annotations

import numpy as np

CLIP = 10.0
EPS = 1e-8


class RunningMeanStd:
    """Parallel-variance (Chan et al.) accumulation of mean and variance."""

    def __init__(self, shape=()):
        self.mean = np.zeros(shape)
        self.var = np.ones(shape)
        self.count = 0.0

    def update(self, batch: np.ndarray) -> None:
        batch = np.asarray(batch, dtype=float).reshape(-1, *self.mean.shape)
        b_mean = batch.mean(axis=0)
        b_var = batch.var(axis=0)
        b_count = batch.shape[0]
        delta = b_mean - self.mean
        total = self.count + b_count
        new_mean = self.mean + delta * b_count / total
        m_a = self.var * self.count
        m_b = b_var * b_count
        m2 = m_a + m_b + delta ** 2 * self.count * b_count / total
        self.mean = new_mean
        self.var = m2 / total
        self.count = total


class Normalizer:
    """Stateful observation/reward normalizer for one training run."""

    def __init__(self, obs_dim: int, gamma: float, clip: float = CLIP):
        self.obs_rms = RunningMeanStd(shape=(obs_dim,))
        self.ret_rms = RunningMeanStd(shape=())
        self.gamma = float(gamma)
        self.clip = float(clip)
        self._return = 0.0

    def observation(self, obs: np.ndarray) -> np.ndarray:
        self.obs_rms.update(obs)
        scaled = (obs - self.obs_rms.mean) / np.sqrt(self.obs_rms.var + EPS)
        return np.clip(scaled, -self.clip, self.clip)

    def reward(self, reward: float, done: bool) -> float:
        self._return = self._return * self.gamma + reward
        self.ret_rms.update(self._return)
        scaled = reward / np.sqrt(self.ret_rms.var + EPS)
        if done:
            self._return = 0.0
        return float(np.clip(scaled, -self.clip, self.clip))
