"""Normalized camera coordinates to screen pixels, with smoothing and deadzone.

The active region is the camera frame inset by a margin on every side; it
maps onto the full screen with a horizontal mirror so that moving the hand
right (as the user sees it) moves the cursor right. Smoothing is the
incremental filter x += (target - x) / s; a pixel deadzone suppresses
jitter by comparing against the last position actually emitted, so slow
drifts still move the cursor eventually.
"""

from dataclasses import dataclass, replace

from .util import clamp, round_half_up


@dataclass(frozen=True)
class MapConfig:
    margin: float = 0.1     # normalized inset of the active region per side
    screen_w: int = 1920
    screen_h: int = 1080
    smooth: float = 5.0     # smoothing divisor, 1 = no smoothing
    deadzone_px: float = 2.0

    def __post_init__(self):
        if not (0.0 <= self.margin < 0.5):
            raise ValueError("margin must be in [0, 0.5)")
        if self.screen_w < 1 or self.screen_h < 1:
            raise ValueError("screen size must be at least 1x1")
        if self.smooth < 1:
            raise ValueError("smooth must be >= 1")
        if self.deadzone_px < 0:
            raise ValueError("deadzone_px must be >= 0")


@dataclass(frozen=True)
class PointerState:
    """Smoothed cursor position; real-valued internally, rounded on output."""

    sx: float = 0.0
    sy: float = 0.0
    last_emitted: tuple[int, int] | None = None


def map_to_screen(x: float, y: float, cfg: MapConfig) -> tuple[int, int]:
    """Map a normalized camera point into screen pixels (mirrored, clamped)."""
    span = 1.0 - 2.0 * cfg.margin
    u = clamp((x - cfg.margin) / span, 0.0, 1.0)
    v = clamp((y - cfg.margin) / span, 0.0, 1.0)
    px = round_half_up((1.0 - u) * (cfg.screen_w - 1))
    py = round_half_up(v * (cfg.screen_h - 1))
    return px, py


def smooth(
    state: PointerState, target: tuple[int, int], cfg: MapConfig
) -> tuple[PointerState, tuple[int, int] | None]:
    """Advance the smoother toward target; return (new state, output pixel).

    Output is None (no motion) when the rounded position stays within
    deadzone_px of the last emitted output. Internal state advances either
    way.
    """
    sx = state.sx + (target[0] - state.sx) / cfg.smooth
    sy = state.sy + (target[1] - state.sy) / cfg.smooth
    out = (round_half_up(sx), round_half_up(sy))
    if state.last_emitted is not None:
        dx = out[0] - state.last_emitted[0]
        dy = out[1] - state.last_emitted[1]
        if (dx * dx + dy * dy) ** 0.5 < cfg.deadzone_px:
            return replace(state, sx=sx, sy=sy), None
    return PointerState(sx=sx, sy=sy, last_emitted=out), out
