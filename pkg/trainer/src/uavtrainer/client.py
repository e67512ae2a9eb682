"""Wire-protocol client for the simulation server.

Newline-delimited JSON over TCP, one request per line.  Every outgoing
message is schema-checked before it is written to the socket, so a buggy
caller fails locally instead of poisoning the session.
"""

from __future__ import annotations

import json
import math
import socket
from typing import Optional

VALID_COMMANDS = ("spec", "reset", "step", "close")
VALID_SCENARIOS = (1, 2, 3)


class ProtocolError(RuntimeError):
    """A request failed schema validation or the server rejected it."""


class ServerDisconnected(ConnectionError):
    """The connection dropped mid-session."""


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return (isinstance(value, (int, float)) and not isinstance(value, bool)
            and math.isfinite(value))


def validate_request(message) -> None:
    """Raise ProtocolError unless `message` is a well-formed request."""
    if not isinstance(message, dict):
        raise ProtocolError("request must be a dict")
    cmd = message.get("cmd")
    if cmd not in VALID_COMMANDS:
        raise ProtocolError(f"cmd must be one of {VALID_COMMANDS}, got {cmd!r}")
    if cmd == "reset":
        if not _is_int(message.get("scenario")) or message["scenario"] not in VALID_SCENARIOS:
            raise ProtocolError("reset needs scenario in {1, 2, 3}")
        if not _is_int(message.get("seed")):
            raise ProtocolError("reset needs an integer seed")
        config = message.get("config")
        if config is not None:
            if not isinstance(config, dict):
                raise ProtocolError("config must be a dict")
            for key, value in config.items():
                if not isinstance(key, str):
                    raise ProtocolError(f"config key {key!r} is not a string")
                ok = (_is_number(value) or isinstance(value, (str, bool))
                      or (isinstance(value, (list, tuple))
                          and all(_is_number(v) for v in value)))
                if not ok:
                    raise ProtocolError(f"config value for {key!r} is not serializable")
    elif cmd == "step":
        actions = message.get("actions")
        if not isinstance(actions, dict) or not actions:
            raise ProtocolError("step needs a non-empty actions dict")
        for agent, pair in actions.items():
            if not isinstance(agent, str):
                raise ProtocolError(f"agent name {agent!r} is not a string")
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(_is_number(v) for v in pair)):
                raise ProtocolError(f"action for {agent!r} must be two finite numbers")


class EnvClient:
    """One protocol session against a running server."""

    def __init__(self, host: str = "127.0.0.1", port: int = 5555,
                 timeout: float = 60.0):
        self.host = host
        self.port = port
        try:
            self._sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as exc:
            raise ServerDisconnected(f"cannot connect to {host}:{port}: {exc}") from exc
        self._file = self._sock.makefile("rwb")
        self.episodes_started = 0

    def request(self, message: dict) -> dict:
        validate_request(message)
        payload = json.dumps(message, separators=(",", ":")) + "\n"
        try:
            self._file.write(payload.encode("utf-8"))
            self._file.flush()
            line = self._file.readline()
        except OSError as exc:
            raise ServerDisconnected(str(exc)) from exc
        if not line:
            raise ServerDisconnected("server closed the connection")
        reply = json.loads(line.decode("utf-8"))
        if not reply.get("ok", False):
            raise ProtocolError(
                f"{reply.get('error', 'unknown')}: {reply.get('detail', '')}")
        return reply

    def spec(self) -> dict:
        return self.request({"cmd": "spec"})

    def reset(self, scenario: int, seed: int,
              config: Optional[dict] = None) -> dict:
        message = {"cmd": "reset", "scenario": scenario, "seed": seed}
        if config:
            message["config"] = config
        reply = self.request(message)
        self.episodes_started += 1
        return reply

    def step(self, actions: dict) -> dict:
        return self.request({"cmd": "step", "actions": actions})

    def disconnect(self) -> None:
        """Drop the socket without the close handshake.  Idempotent."""
        try:
            self._file.close()
        finally:
            self._sock.close()

    def close(self) -> Optional[int]:
        """Close the session; returns the server's episode counter if the
        clean handshake succeeds."""
        episodes = None
        try:
            reply = self.request({"cmd": "close"})
            episodes = reply.get("episodes")
        except (ProtocolError, ServerDisconnected):
            pass
        finally:
            self.disconnect()
        return episodes

    def __enter__(self) -> "EnvClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
