"""Layered configuration: defaults < config file < environment < flags.

The config file is JSON with flat keys. Environment variables use the
AIRCTL_ prefix with the key upper-cased (AIRCTL_CLICK_DIST=0.05). The
effective config is echoed at startup so any run can be reproduced.
"""

import json
import os

from .gestures import FsmConfig
from .pointer import MapConfig
from .session import SessionConfig

ENV_PREFIX = "AIRCTL_"

_FLOAT_KEYS = ("click_dist", "scroll_deadzone", "scroll_gain", "margin", "smooth", "deadzone_px")
_INT_KEYS = ("stable_frames", "click_refractory_ms", "screen_w", "screen_h")
_STR_KEYS = (
    "backend",
    "rules",
    "weather_provider",
    "weather_fixtures",
    "default_city",
    "screenshot_dir",
)
CONFIG_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS


class ConfigError(ValueError):
    pass


def defaults() -> dict:
    fsm = FsmConfig()
    mapping = MapConfig()
    session = SessionConfig()
    return {
        "click_dist": fsm.click_dist,
        "stable_frames": fsm.stable_frames,
        "click_refractory_ms": fsm.click_refractory_ms,
        "scroll_deadzone": fsm.scroll_deadzone,
        "scroll_gain": fsm.scroll_gain,
        "margin": mapping.margin,
        "screen_w": mapping.screen_w,
        "screen_h": mapping.screen_h,
        "smooth": mapping.smooth,
        "deadzone_px": mapping.deadzone_px,
        "backend": session.backend,
        "rules": session.rules_path,
        "weather_provider": session.weather_provider,
        "weather_fixtures": session.weather_fixtures,
        "default_city": session.default_city,
        "screenshot_dir": session.screenshot_dir,
    }


def _coerce(key: str, value):
    if value is None:
        return None
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"config key {key!r} has non-numeric value {value!r}") from None
    return str(value)


def load_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    out = {}
    for key, value in raw.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        out[key] = _coerce(key, value)
    return out


def from_env(environ=None) -> dict:
    environ = environ if environ is not None else os.environ
    out = {}
    for key in CONFIG_KEYS:
        value = environ.get(ENV_PREFIX + key.upper())
        if value is not None:
            out[key] = _coerce(key, value)
    return out


def effective(file_path: str | None = None, environ=None, overrides: dict | None = None) -> dict:
    """Merge all layers; `overrides` holds CLI flag values (highest wins)."""
    merged = defaults()
    if file_path:
        merged.update(load_file(file_path))
    merged.update(from_env(environ))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        merged[key] = _coerce(key, value)
    return merged


def session_config(merged: dict) -> SessionConfig:
    return SessionConfig(
        fsm=FsmConfig(
            click_dist=merged["click_dist"],
            stable_frames=merged["stable_frames"],
            click_refractory_ms=merged["click_refractory_ms"],
            scroll_deadzone=merged["scroll_deadzone"],
            scroll_gain=merged["scroll_gain"],
        ),
        map=MapConfig(
            margin=merged["margin"],
            screen_w=merged["screen_w"],
            screen_h=merged["screen_h"],
            smooth=merged["smooth"],
            deadzone_px=merged["deadzone_px"],
        ),
        backend=merged["backend"],
        rules_path=merged["rules"],
        weather_provider=merged["weather_provider"],
        weather_fixtures=merged["weather_fixtures"],
        default_city=merged["default_city"],
        screenshot_dir=merged["screenshot_dir"],
    )


def parse_screen(text: str) -> tuple[int, int]:
    try:
        w_text, h_text = text.lower().split("x")
        w, h = int(w_text), int(h_text)
    except ValueError:
        raise ConfigError(f"bad screen spec {text!r}, expected WxH") from None
    if w < 1 or h < 1:
        raise ConfigError(f"bad screen size {text!r}")
    return w, h
