"""Single-agent view of a remote episode.

The trainer controls the evader; in scenario 3 the opposing UAV receives a
fixed hold action (it is scripted server-side in scenario 2 and absent in
scenario 1).  Actions arrive in [-1, 1] (the usual policy output range) and
are mapped to the rotor range advertised by the server spec.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .client import EnvClient

HOLD_ACTION = (0.5837, 0.5837)


class RemoteEnv:
    def __init__(self, client: EnvClient, scenario: int = 1,
                 config: Optional[dict] = None):
        self.client = client
        self.scenario = scenario
        self.config = dict(config) if config else None
        spec = client.spec()
        self.observation_dim = spec["observation_dim"]
        self.action_dim = spec["action_dim"]
        self.action_low = spec["action_low"]
        self.action_high = spec["action_high"]
        self.agents = spec["agents"][str(scenario)]
        self.max_steps = spec["max_steps"]

    def scale_action(self, action: np.ndarray) -> list:
        """[-1, 1] policy output to the server's action range."""
        a = np.clip(np.asarray(action, dtype=float), -1.0, 1.0)
        lo, hi = self.action_low, self.action_high
        return list(lo + (a + 1.0) * 0.5 * (hi - lo))

    def reset(self, seed: int) -> np.ndarray:
        reply = self.client.reset(self.scenario, seed, self.config)
        return np.asarray(reply["observations"]["evader"], dtype=np.float64)

    def step(self, action: np.ndarray):
        actions = {"evader": self.scale_action(action)}
        for agent in self.agents:
            if agent != "evader":
                actions[agent] = list(HOLD_ACTION)
        reply = self.client.step(actions)
        obs = np.asarray(reply["observations"]["evader"], dtype=np.float64)
        return obs, reply["rewards"]["evader"], reply["done"], reply["status"]
