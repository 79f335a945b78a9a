"""Per-gesture accuracy evaluation over labeled replays, plus synthesis.

The original experiment this mirrors scored each mouse operation over many
attempts; the dataset is not available, so this module ships a synthetic
generator instead: geometrically valid landmark trajectories for each
gesture with seeded Gaussian jitter, scored against labeled segments.

Scoring rule: a segment counts as correct iff the expected event kind is
emitted at least once inside it and no contradictory click event occurs
inside it. Overall accuracy is the unweighted mean of per-gesture
accuracies.

Label file format (JSONL): {"start": ms, "end": ms, "expect": "<gesture>"}
with gestures in {move, left_click, right_click, scroll_up, scroll_down}.
"""

import json
import random
from dataclasses import dataclass

from .fingers import FingerState
from .gestures import FsmConfig, GestureEvent, GestureFsm, GestureKind
from .landmarks import HandFrame, Landmark, MalformedRecord
from .util import round_half_up

GESTURE_KINDS = ("move", "left_click", "right_click", "scroll_up", "scroll_down")


class LabelError(Exception):
    pass


class NoLabels(LabelError):
    """Empty label set; nothing to score."""


class LabelOutOfRange(LabelError):
    """A segment lies outside the time range covered by the frames."""


class InvalidLabels(LabelError):
    """Segments are degenerate, overlapping, unsorted, or name no known gesture."""


@dataclass(frozen=True)
class LabeledSegment:
    start_ms: int
    end_ms: int
    expect: str


@dataclass(frozen=True)
class GestureScore:
    attempts: int
    correct: int

    @property
    def accuracy(self) -> float:
        return 100.0 * self.correct / self.attempts


@dataclass(frozen=True)
class AccuracyReport:
    per_gesture: dict  # gesture name -> GestureScore
    overall: float

    def to_dict(self) -> dict:
        return {
            "per_gesture": {
                name: {"attempts": s.attempts, "correct": s.correct, "accuracy": s.accuracy}
                for name, s in self.per_gesture.items()
            },
            "overall": self.overall,
        }

    def render_table(self) -> str:
        rows = [("gesture", "attempts", "correct", "accuracy")]
        for name, s in self.per_gesture.items():
            rows.append((name, str(s.attempts), str(s.correct), f"{s.accuracy:.1f}%"))
        rows.append(("overall", "", "", f"{self.overall:.1f}%"))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = []
        for r in rows:
            lines.append(
                r[0].ljust(widths[0])
                + "  " + r[1].rjust(widths[1])
                + "  " + r[2].rjust(widths[2])
                + "  " + r[3].rjust(widths[3])
            )
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Synthetic hand construction

_FINGERS = {"index": 5, "middle": 9, "ring": 13, "pinky": 17}
_COLUMN = {"index": -0.06, "middle": -0.02, "ring": 0.02, "pinky": 0.06}

_POSES = {
    "move": (FingerState(False, True, False, False, False), False),
    "left_click": (FingerState(False, True, True, False, False), True),
    "right_click": (FingerState(False, False, True, False, False), False),
    "scroll_up": (FingerState(True, True, True, True, True), False),
    "scroll_down": (FingerState(True, True, True, True, True), False),
    "idle": (FingerState(False, False, False, False, False), False),
}


def build_hand(
    t_ms: int,
    fs: FingerState,
    base: tuple[float, float],
    pinched: bool = False,
    hand: str = "Right",
) -> HandFrame:
    """Construct a frame whose fingers classify exactly as `fs`.

    The geometry keeps wide margins between tip and PIP (0.15 extended,
    0.08 folded) so moderate jitter cannot flip a finger. With `pinched`
    the index and middle tips sit 0.01 apart, well inside the default
    click threshold.
    """
    bx, by = base
    lm: list[tuple[float, float, float]] = [(0.0, 0.0, 0.0)] * 21
    lm[0] = (bx, by + 0.25, 0.0)
    lm[1] = (bx - 0.08, by + 0.12, 0.0)
    lm[2] = (bx - 0.11, by + 0.08, 0.0)
    lm[3] = (bx - 0.13, by + 0.05, 0.0)
    lm[4] = (bx - 0.20, by + 0.02, 0.0) if fs.thumb else (bx - 0.07, by + 0.03, 0.0)
    for name, mcp in _FINGERS.items():
        dx = _COLUMN[name]
        up = getattr(fs, name)
        lm[mcp] = (bx + dx, by + 0.05, 0.0)
        lm[mcp + 1] = (bx + dx, by + 0.00, 0.0)
        lm[mcp + 2] = (bx + dx, by - 0.07, 0.0) if up else (bx + dx, by + 0.04, 0.0)
        lm[mcp + 3] = (bx + dx, by - 0.15, 0.0) if up else (bx + dx, by + 0.08, 0.0)
    if pinched:
        lm[8] = (bx - 0.045, by - 0.15, 0.0)
        lm[12] = (bx - 0.035, by - 0.15, 0.0)
    return HandFrame(t_ms=t_ms, hand=hand, lm=tuple(Landmark(*p) for p in lm))


def _jitter(frame: HandFrame, sigma: float, rng: random.Random) -> HandFrame:
    if sigma == 0.0:
        return frame
    noisy = tuple(
        Landmark(p.x + rng.gauss(0.0, sigma), p.y + rng.gauss(0.0, sigma), p.z + rng.gauss(0.0, sigma))
        for p in frame.lm
    )
    return HandFrame(t_ms=frame.t_ms, hand=frame.hand, lm=noisy)


def _scroll_ramp(progress: float) -> float:
    """Hold 20%, move linearly for 60%, hold 20%: returns ramp in [0, 1]."""
    if progress <= 0.2:
        return 0.0
    if progress >= 0.8:
        return 1.0
    return (progress - 0.2) / 0.6


def _base_for(kind: str, progress: float) -> tuple[float, float]:
    if kind == "move":
        return 0.35 + 0.30 * progress, 0.5
    if kind == "scroll_up":
        return 0.5, 0.55 - 0.15 * _scroll_ramp(progress)
    if kind == "scroll_down":
        return 0.5, 0.45 + 0.15 * _scroll_ramp(progress)
    return 0.5, 0.5


def synthesize(
    kind: str,
    duration_ms: int,
    fps: float,
    noise_sigma: float = 0.0,
    seed: int = 0,
    t0_ms: int = 1,
    rng: random.Random | None = None,
) -> list[HandFrame]:
    """Generate a seeded landmark trajectory performing one gesture.

    Reproducible: the same arguments always yield identical frames. Pass a
    shared `rng` to chain several clips off one seed.
    """
    if kind not in _POSES:
        raise ValueError(f"unknown gesture kind {kind!r}")
    if noise_sigma < 0:
        raise ValueError("noise sigma must be >= 0")
    if rng is None:
        rng = random.Random(seed)
    fs, pinched = _POSES[kind]
    n = max(1, round(duration_ms * fps / 1000.0))
    frames = []
    for i in range(n):
        t = t0_ms + round_half_up(i * 1000.0 / fps)
        progress = i / (n - 1) if n > 1 else 0.0
        frame = build_hand(t, fs, _base_for(kind, progress), pinched)
        frames.append(_jitter(frame, noise_sigma, rng))
    return frames


def make_suite(
    kinds=GESTURE_KINDS,
    clip_ms: int = 1000,
    gap_ms: int = 200,
    fps: float = 30.0,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> tuple[list[HandFrame], list[LabeledSegment]]:
    """Build one labeled timeline: an idle gap before each gesture clip.

    The gaps let the FSM settle back to IDLE between clips so segments are
    independent attempts.
    """
    rng = random.Random(seed)
    frames: list[HandFrame] = []
    labels: list[LabeledSegment] = []
    step_ms = max(1, round_half_up(1000.0 / fps))
    cursor = 1
    for kind in kinds:
        gap = synthesize("idle", gap_ms, fps, noise_sigma, rng=rng, t0_ms=cursor)
        frames.extend(gap)
        cursor = gap[-1].t_ms + step_ms
        clip = synthesize(kind, clip_ms, fps, noise_sigma, rng=rng, t0_ms=cursor)
        frames.extend(clip)
        labels.append(LabeledSegment(clip[0].t_ms, clip[-1].t_ms, kind))
        cursor = clip[-1].t_ms + step_ms
    return frames, labels


# ---------------------------------------------------------------------------
# Scoring

_CLICK_KINDS = (GestureKind.LEFT_CLICK, GestureKind.RIGHT_CLICK)


def _matches(expect: str, ev: GestureEvent) -> bool:
    if expect == "move":
        return ev.kind is GestureKind.MOVE
    if expect == "left_click":
        return ev.kind is GestureKind.LEFT_CLICK
    if expect == "right_click":
        return ev.kind is GestureKind.RIGHT_CLICK
    if expect == "scroll_up":
        return ev.kind is GestureKind.SCROLL and ev.dy > 0
    if expect == "scroll_down":
        return ev.kind is GestureKind.SCROLL and ev.dy < 0
    raise InvalidLabels(f"unknown expected gesture {expect!r}")


def _contradicts(expect: str, ev: GestureEvent) -> bool:
    if ev.kind not in _CLICK_KINDS:
        return False
    if expect == "left_click":
        return ev.kind is GestureKind.RIGHT_CLICK
    if expect == "right_click":
        return ev.kind is GestureKind.LEFT_CLICK
    return True  # any click inside a non-click segment


def _validate_labels(labels: list[LabeledSegment], first_t: int, last_t: int) -> list[LabeledSegment]:
    """Normalize to sorted order and enforce the segment invariants."""
    if not labels:
        raise NoLabels("no labeled segments")
    labels = sorted(labels, key=lambda seg: seg.start_ms)
    prev_end = None
    for seg in labels:
        if seg.expect not in GESTURE_KINDS:
            raise InvalidLabels(f"unknown gesture {seg.expect!r}")
        if seg.start_ms >= seg.end_ms:
            raise InvalidLabels(f"segment [{seg.start_ms}, {seg.end_ms}] is degenerate")
        if prev_end is not None and seg.start_ms <= prev_end:
            raise InvalidLabels("segments overlap or are unsorted")
        prev_end = seg.end_ms
        if seg.start_ms < first_t or seg.end_ms > last_t:
            raise LabelOutOfRange(
                f"segment [{seg.start_ms}, {seg.end_ms}] outside frames [{first_t}, {last_t}]"
            )
    return labels


def evaluate(
    frames: list[HandFrame], labels: list[LabeledSegment], cfg: FsmConfig | None = None
) -> AccuracyReport:
    """Score labeled segments against the FSM's output on the frames."""
    if not frames:
        raise LabelOutOfRange("no frames to evaluate")
    cfg = cfg or FsmConfig()
    labels = _validate_labels(labels, frames[0].t_ms, frames[-1].t_ms)

    fsm = GestureFsm(cfg)
    events = [ev for ev in (fsm.step(f) for f in frames) if ev.kind is not GestureKind.NONE]

    attempts: dict[str, int] = {}
    correct: dict[str, int] = {}
    for seg in labels:
        inside = [ev for ev in events if seg.start_ms <= ev.t_ms <= seg.end_ms]
        hit = any(_matches(seg.expect, ev) for ev in inside)
        clash = any(_contradicts(seg.expect, ev) for ev in inside)
        attempts[seg.expect] = attempts.get(seg.expect, 0) + 1
        correct[seg.expect] = correct.get(seg.expect, 0) + (1 if hit and not clash else 0)

    per_gesture = {name: GestureScore(attempts[name], correct[name]) for name in attempts}
    overall = sum(s.accuracy for s in per_gesture.values()) / len(per_gesture)
    return AccuracyReport(per_gesture=per_gesture, overall=overall)


# ---------------------------------------------------------------------------
# Label file I/O

def parse_label_line(line: str) -> LabeledSegment:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(rec, dict):
        raise MalformedRecord("label record is not a JSON object")
    start, end, expect = rec.get("start"), rec.get("end"), rec.get("expect")
    if not isinstance(start, int) or not isinstance(end, int) or not isinstance(expect, str):
        raise MalformedRecord("label record needs integer 'start'/'end' and string 'expect'")
    return LabeledSegment(start, end, expect)


def load_labels(path: str) -> list[LabeledSegment]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(parse_label_line(line))
            except MalformedRecord as exc:
                raise MalformedRecord(str(exc), line=line_no) from exc
    return out


def write_labels(labels: list[LabeledSegment], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for seg in labels:
            fh.write(
                json.dumps({"start": seg.start_ms, "end": seg.end_ms, "expect": seg.expect})
                + "\n"
            )
