"""Remote-training toolkit for the uavsim flight environment.

Talks to a running ``uavsim serve`` instance over its newline-delimited
JSON protocol, trains an off-policy learner (SAC, DDPG or TD3) on the
evader agent, logs one CSV row per episode, and summarizes logs into
rolling-mean learning curves with 95% percentile bands.
"""

from .client import (EnvClient, ProtocolError, ServerDisconnected,
                     validate_request)
from .remote_env import HOLD_ACTION, RemoteEnv
from .summarize import DEFAULT_WINDOW, load_log, summarize, write_curve
from .train import (DEFAULT_REDUCED_CONFIG, ConnectionLostError, TrainResult,
                    TrainRun, completed_episodes, episode_seed, train)

__all__ = [
    "EnvClient", "ProtocolError", "ServerDisconnected", "validate_request",
    "HOLD_ACTION", "RemoteEnv",
    "DEFAULT_WINDOW", "load_log", "summarize", "write_curve",
    "DEFAULT_REDUCED_CONFIG", "ConnectionLostError", "TrainResult",
    "TrainRun", "completed_episodes", "episode_seed", "train",
]

__version__ = "0.1.0"
