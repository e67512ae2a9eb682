"""Flat key=value configuration files.

One key per line, `#` starts a comment, blank lines ignored.  Top-level keys
match EpisodeConfig field names; nested parameter blocks use dotted keys
(uav.mass, limits.v_max, reward.stop_radius, atmosphere.rho0).  Interval
fields take two comma-separated numbers.  The same file drives the CLI and
the server, and its path can come from the UAVSIM_CONFIG environment
variable when not given explicitly.
"""

from __future__ import annotations

import dataclasses
import os
from typing import Optional

from .environment import EpisodeConfig

CONFIG_ENV_VAR = "UAVSIM_CONFIG"

_SECTIONS = ("uav", "limits", "reward", "atmosphere")


class ConfigError(ValueError):
    """Raised for unknown keys or unparseable values."""


def _fields_of(obj) -> tuple[str, ...]:
    if dataclasses.is_dataclass(obj):
        return tuple(f.name for f in dataclasses.fields(obj))
    return tuple(obj._fields)  # NamedTuple


def _replace(obj, **changes):
    if dataclasses.is_dataclass(obj):
        return dataclasses.replace(obj, **changes)
    return obj._replace(**changes)


def _coerce(key: str, raw, default):
    """Parse `raw` (a string from a file, or a JSON-typed value from the
    server) into the same shape as `default`."""
    if isinstance(default, bool):
        if isinstance(raw, bool):
            return raw
        word = str(raw).strip().lower()
        if word in ("true", "1", "yes", "on"):
            return True
        if word in ("false", "0", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    if isinstance(default, tuple):
        if isinstance(raw, str):
            parts = [p for p in raw.replace(",", " ").split() if p]
        elif isinstance(raw, (list, tuple)):
            parts = list(raw)
        else:
            raise ConfigError(f"{key}: expected {len(default)} numbers, got {raw!r}")
        if len(parts) != len(default):
            raise ConfigError(f"{key}: expected {len(default)} numbers, got {raw!r}")
        try:
            return tuple(float(p) for p in parts)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: expected numbers, got {raw!r}") from None
    try:
        if isinstance(default, int):
            value = int(str(raw).strip(), 0) if isinstance(raw, str) else int(raw)
            if isinstance(raw, float) and raw != value:
                raise ValueError
            return value
        if isinstance(default, float):
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: could not parse {raw!r}") from None
    if isinstance(default, str):
        return str(raw).strip()
    raise ConfigError(f"{key}: unsupported field type {type(default).__name__}")


def apply_overrides(cfg: EpisodeConfig, overrides: dict) -> EpisodeConfig:
    """Return a copy of `cfg` with the given flat/dotted keys replaced."""
    top: dict = {}
    nested: dict[str, dict] = {}
    top_names = _fields_of(cfg)
    for key, raw in overrides.items():
        name, dot, sub = str(key).partition(".")
        if dot:
            if name not in _SECTIONS:
                raise ConfigError(f"unknown config section {name!r} in key {key!r}")
            block = getattr(cfg, name)
            if sub not in _fields_of(block):
                raise ConfigError(f"unknown config key {key!r}")
            nested.setdefault(name, {})[sub] = _coerce(key, raw, getattr(block, sub))
        else:
            if name not in top_names or name in _SECTIONS:
                raise ConfigError(f"unknown config key {key!r}")
            top[name] = _coerce(key, raw, getattr(cfg, name))
    for name, changes in nested.items():
        top[name] = _replace(getattr(cfg, name), **changes)
    return dataclasses.replace(cfg, **top)


def loads(text: str) -> EpisodeConfig:
    overrides: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, eq, raw = body.partition("=")
        if not eq:
            raise ConfigError(f"line {lineno}: expected `key = value`, got {line!r}")
        overrides[key.strip()] = raw.strip()
    try:
        return apply_overrides(EpisodeConfig(), overrides)
    except ConfigError as exc:
        raise ConfigError(f"{exc}") from None


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dumps(cfg: EpisodeConfig) -> str:
    """Full round-trippable dump: every key, one per line."""
    lines = []
    for name in _fields_of(cfg):
        value = getattr(cfg, name)
        if name in _SECTIONS:
            for sub in _fields_of(value):
                lines.append(f"{name}.{sub} = {_format(getattr(value, sub))}")
        else:
            lines.append(f"{name} = {_format(value)}")
    return "\n".join(lines) + "\n"


def load_file(path: str) -> EpisodeConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(cfg: EpisodeConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cfg))


def resolve_path(explicit: Optional[str] = None) -> Optional[str]:
    """Explicit path wins; otherwise fall back to $UAVSIM_CONFIG if set."""
    if explicit:
        return explicit
    env = os.environ.get(CONFIG_ENV_VAR, "").strip()
    return env or None


def load(explicit: Optional[str] = None) -> EpisodeConfig:
    path = resolve_path(explicit)
    return EpisodeConfig() if path is None else load_file(path)
