"""TCP environment server.

One session per connection; each request is a single JSON object on its own
line, each reply likewise.  Successful replies carry {"ok": true, ...}; errors
carry {"ok": false, "error": code, "detail": text} and leave the session
alive.  Floats are emitted in repr form, which round-trips 64-bit values
exactly, so a remote client sees bit-identical numbers to an in-process run.
"""

from __future__ import annotations

import json
import socket
import socketserver
from typing import Optional

from . import environment
from .config import ConfigError, apply_overrides
from .dynamics import ControlInput
from .environment import (OBSERVATION_FIELDS, SCENARIO_AGENTS, STATUS_RUNNING,
                          STATUSES, EpisodeConfig, EpisodeConfigurationError)
from .rollout import episode_snapshot

PROTOCOL_VERSION = 1
DEFAULT_PORT = 5555

_JSON_SEPARATORS = (",", ":")


def encode(message: dict) -> bytes:
    return (json.dumps(message, separators=_JSON_SEPARATORS, allow_nan=False)
            + "\n").encode("utf-8")


def _error(code: str, detail: str) -> dict:
    return {"ok": False, "error": code, "detail": detail}


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class Session:
    """Protocol state machine for one connection; no socket involved, so it
    is directly unit-testable."""

    def __init__(self, base_config: Optional[EpisodeConfig] = None):
        self.base_config = base_config if base_config is not None else EpisodeConfig()
        self.state = None
        self.episodes = 0

    def handle(self, message) -> tuple[dict, bool]:
        """Process one decoded request; returns (reply, keep_connection)."""
        if not isinstance(message, dict):
            return _error("bad_request", "request must be a JSON object"), True
        cmd = message.get("cmd")
        if cmd == "spec":
            return self._spec(), True
        if cmd == "reset":
            return self._reset(message), True
        if cmd == "step":
            return self._step(message), True
        if cmd == "close":
            return {"ok": True, "closed": True, "episodes": self.episodes}, False
        return _error("bad_request", f"unknown cmd {cmd!r}"), True

    def _spec(self) -> dict:
        return {
            "ok": True,
            "protocol": PROTOCOL_VERSION,
            "scenarios": sorted(SCENARIO_AGENTS),
            "agents": {str(k): list(v) for k, v in SCENARIO_AGENTS.items()},
            "observation_dim": 13,
            "observation_fields": list(OBSERVATION_FIELDS),
            "action_dim": 2,
            "action_low": 0.0,
            "action_high": 1.0,
            "statuses": list(STATUSES),
            "max_steps": self.base_config.max_steps,
        }

    def _reset(self, message: dict) -> dict:
        scenario = message.get("scenario")
        seed = message.get("seed")
        if not _is_int(scenario) or scenario not in SCENARIO_AGENTS:
            return _error("bad_request", "reset requires `scenario` in {1, 2, 3}")
        if not _is_int(seed):
            return _error("bad_request", "reset requires an integer `seed`")
        cfg = self.base_config
        overrides = message.get("config")
        if overrides is not None:
            if not isinstance(overrides, dict):
                return _error("bad_request", "`config` must be an object of key/value overrides")
            try:
                cfg = apply_overrides(cfg, overrides)
            except ConfigError as exc:
                return _error("bad_request", str(exc))
        try:
            state, obs = environment.reset(scenario, seed, cfg)
        except (ValueError, EpisodeConfigurationError) as exc:
            return _error("bad_request", str(exc))
        self.state = state
        self.episodes += 1
        return {
            "ok": True,
            "episode": self.episodes,
            "agents": list(state.agents),
            "observations": {a: v.tolist() for a, v in obs.items()},
            "info": episode_snapshot(state),
        }

    def _step(self, message: dict) -> dict:
        if self.state is None:
            return _error("no_episode", "no active episode; send reset first")
        if self.state.status != STATUS_RUNNING:
            return _error("no_episode",
                          f"episode finished with status {self.state.status!r}; send reset")
        actions = message.get("actions")
        if not isinstance(actions, dict):
            return _error("bad_request", "step requires an `actions` object")
        expected = set(self.state.agents)
        if set(actions) != expected:
            return _error("bad_action",
                          f"expected actions for {sorted(expected)}, got {sorted(actions)}")
        controls = {}
        for agent, pair in actions.items():
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(_is_number(v) for v in pair)):
                return _error("bad_action", f"action for {agent!r} must be [a1, a2]")
            try:
                controls[agent] = ControlInput(float(pair[0]), float(pair[1]))
            except ValueError as exc:
                return _error("bad_action", str(exc))
        outcome = environment.step(self.state, controls)
        return {
            "ok": True,
            "observations": {a: v.tolist() for a, v in outcome.observations.items()},
            "rewards": outcome.rewards,
            "done": outcome.done,
            "status": outcome.status,
            "info": outcome.info,
        }


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        session = Session(self.server.base_config)
        for raw in self.rfile:
            line = raw.strip()
            if not line:
                continue
            try:
                request = json.loads(line.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                reply, keep = _error("bad_request", f"invalid JSON: {exc}"), True
            else:
                reply, keep = session.handle(request)
            try:
                self.wfile.write(encode(reply))
                self.wfile.flush()
            except (BrokenPipeError, ConnectionResetError):
                return
            if not keep:
                return


class EnvServer(socketserver.ThreadingTCPServer):
    """Bind-and-serve wrapper; sessions share only the immutable base config."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address: tuple[str, int] = ("127.0.0.1", 0),
                 base_config: Optional[EpisodeConfig] = None):
        self.base_config = base_config if base_config is not None else EpisodeConfig()
        super().__init__(address, _Handler)

    @property
    def port(self) -> int:
        return self.server_address[1]


class Client:
    """Minimal blocking protocol client, used by tests and demo scripts."""

    def __init__(self, host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                 timeout: float = 60.0):
        self._sock = socket.create_connection((host, port), timeout=timeout)
        self._file = self._sock.makefile("rwb")

    def request(self, message: dict) -> dict:
        self._file.write(encode(message))
        self._file.flush()
        line = self._file.readline()
        if not line:
            raise ConnectionError("server closed the connection")
        return json.loads(line.decode("utf-8"))

    def close(self) -> None:
        try:
            self._file.write(encode({"cmd": "close"}))
            self._file.flush()
            self._file.readline()
        except OSError:
            pass
        finally:
            self._file.close()
            self._sock.close()

    def __enter__(self) -> "Client":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
