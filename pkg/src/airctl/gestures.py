"""Debounced finite state machine turning finger states into gesture events.

Pose table (thumb ignored unless stated):

    MOVE       index up; middle, ring, pinky down
    CLICK_ARM  index + middle up, ring + pinky down, tips pinched
               (x-y distance between index and middle tips < click_dist)
    RIGHT_ARM  middle up; index, ring, pinky down
    SCROLL     all five fingers up
    IDLE       anything else, including index + middle up but not pinched

A pose change is accepted only after the new pose has been observed for
stable_frames consecutive frames; until then the previously accepted pose
keeps governing output. Clicks are edge-triggered on pose entry with a
shared refractory period. Scroll output is accumulated against the entry
anchor and emitted as deltas, so total steps depend on displacement, not
frame rate.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

from .fingers import FingerState, fingers_up
from .landmarks import HandFrame, INDEX_TIP, MIDDLE_TIP
from .util import round_half_up


class Pose(str, Enum):
    IDLE = "idle"
    MOVE = "move"
    CLICK_ARM = "click_arm"
    RIGHT_ARM = "right_arm"
    SCROLL = "scroll"


class GestureKind(str, Enum):
    MOVE = "move"
    LEFT_CLICK = "left_click"
    RIGHT_CLICK = "right_click"
    SCROLL = "scroll"
    NONE = "none"


class NonMonotonicTime(Exception):
    """Frame timestamps went backwards; the stream should have dropped it."""


@dataclass(frozen=True)
class GestureEvent:
    """Semantic FSM output for one frame.

    MOVE carries the raw normalized index-tip position; SCROLL carries a
    nonzero signed step count. Other kinds carry no payload.
    """

    kind: GestureKind
    t_ms: int
    x: float | None = None
    y: float | None = None
    dy: int | None = None


@dataclass(frozen=True)
class FsmConfig:
    click_dist: float = 0.04        # normalized pinch threshold for left click
    stable_frames: int = 3          # consecutive frames before a pose change is accepted
    click_refractory_ms: int = 300  # minimum gap between click events (either button)
    scroll_deadzone: float = 0.03   # normalized vertical deadzone around the scroll anchor
    scroll_gain: float = 40.0       # scroll steps per normalized unit beyond the deadzone

    def __post_init__(self):
        if self.click_dist <= 0 or self.click_refractory_ms <= 0:
            raise ValueError("click thresholds must be > 0")
        if self.scroll_deadzone <= 0 or self.scroll_gain <= 0:
            raise ValueError("scroll thresholds must be > 0")
        if self.stable_frames < 1:
            raise ValueError("stable_frames must be >= 1")


@dataclass(frozen=True)
class FsmState:
    accepted: Pose = Pose.IDLE
    candidate: Pose = Pose.IDLE
    stable_count: int = 0
    last_click_ms: int | None = None
    scroll_anchor_y: float | None = None
    scroll_steps_emitted: int = 0
    last_fingers: FingerState | None = None
    last_t_ms: int | None = None


def classify_pose(fs: FingerState, frame: HandFrame, cfg: FsmConfig) -> Pose:
    """Map one frame's finger state (plus pinch geometry) to a pose label."""
    if fs.thumb and fs.index and fs.middle and fs.ring and fs.pinky:
        return Pose.SCROLL
    if fs.index and fs.middle and not fs.ring and not fs.pinky:
        tip_i = frame.lm[INDEX_TIP]
        tip_m = frame.lm[MIDDLE_TIP]
        pinch = math.hypot(tip_i.x - tip_m.x, tip_i.y - tip_m.y)
        # Unpinched index+middle is a hover, not MOVE.
        return Pose.CLICK_ARM if pinch < cfg.click_dist else Pose.IDLE
    if fs.index and not fs.middle and not fs.ring and not fs.pinky:
        return Pose.MOVE
    if fs.middle and not fs.index and not fs.ring and not fs.pinky:
        return Pose.RIGHT_ARM
    return Pose.IDLE


def _scroll_target_steps(displacement: float, cfg: FsmConfig) -> int:
    """Total steps owed for a displacement from the anchor (signed, deadzoned)."""
    magnitude = abs(displacement)
    if magnitude <= cfg.scroll_deadzone:
        return 0
    steps = round_half_up(cfg.scroll_gain * (magnitude - cfg.scroll_deadzone))
    return steps if displacement > 0 else -steps


def step(state: FsmState, frame: HandFrame, cfg: FsmConfig) -> tuple[FsmState, GestureEvent]:
    """Advance the FSM one frame and emit at most one gesture event.

    Raises NonMonotonicTime if the frame's timestamp is older than the
    previous one (an ordered stream never does this).
    """
    if state.last_t_ms is not None and frame.t_ms < state.last_t_ms:
        raise NonMonotonicTime(f"t_ms {frame.t_ms} after {state.last_t_ms}")

    fs = fingers_up(frame)
    pose = classify_pose(fs, frame, cfg)
    t = frame.t_ms

    accepted = state.accepted
    candidate = state.candidate
    stable = state.stable_count
    last_click = state.last_click_ms
    anchor = state.scroll_anchor_y
    steps_emitted = state.scroll_steps_emitted
    entered = False

    if pose == accepted:
        candidate, stable = accepted, 0
    else:
        stable = stable + 1 if pose == candidate else 1
        candidate = pose
        if stable >= cfg.stable_frames:
            accepted = pose
            stable = 0
            entered = True

    event = GestureEvent(GestureKind.NONE, t)
    if entered:
        if accepted is Pose.CLICK_ARM:
            if last_click is None or t - last_click >= cfg.click_refractory_ms:
                event = GestureEvent(GestureKind.LEFT_CLICK, t)
                last_click = t
        elif accepted is Pose.RIGHT_ARM:
            if last_click is None or t - last_click >= cfg.click_refractory_ms:
                event = GestureEvent(GestureKind.RIGHT_CLICK, t)
                last_click = t
        elif accepted is Pose.SCROLL:
            # Anchor frame: record the reference, emit nothing yet.
            anchor = frame.lm[INDEX_TIP].y
            steps_emitted = 0
        elif accepted is Pose.MOVE:
            tip = frame.lm[INDEX_TIP]
            event = GestureEvent(GestureKind.MOVE, t, x=tip.x, y=tip.y)
    else:
        if accepted is Pose.MOVE:
            tip = frame.lm[INDEX_TIP]
            event = GestureEvent(GestureKind.MOVE, t, x=tip.x, y=tip.y)
        elif accepted is Pose.SCROLL and anchor is not None:
            target = _scroll_target_steps(anchor - frame.lm[INDEX_TIP].y, cfg)
            dy = target - steps_emitted
            if dy != 0:
                event = GestureEvent(GestureKind.SCROLL, t, dy=dy)
                steps_emitted = target

    new_state = replace(
        state,
        accepted=accepted,
        candidate=candidate,
        stable_count=stable,
        last_click_ms=last_click,
        scroll_anchor_y=anchor if accepted is Pose.SCROLL else None,
        scroll_steps_emitted=steps_emitted if accepted is Pose.SCROLL else 0,
        last_fingers=fs,
        last_t_ms=t,
    )
    return new_state, event


class GestureFsm:
    """Single-owner stateful wrapper around step(); one stream, one instance."""

    def __init__(self, cfg: FsmConfig | None = None):
        self.cfg = cfg or FsmConfig()
        self.state = FsmState()

    def step(self, frame: HandFrame) -> GestureEvent:
        self.state, event = step(self.state, frame, self.cfg)
        return event
