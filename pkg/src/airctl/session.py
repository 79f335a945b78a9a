"""Session pipeline: merge frame and utterance sources, execute, log.

A session is one sequential event loop. Frames drive the gesture FSM and
pointer mapping; utterances drive the intent parser; both reduce to
actions executed by the backend and appended to a JSONL action log. In
replay mode every record is processed; in live mode the loop keeps up by
discarding stale frames in favor of the newest (latest-frame-wins), which
skips forward but never reorders. A failing action increments an error
counter and never aborts the session.
"""

import json
import queue
import threading
import time
from dataclasses import dataclass, field, asdict
from typing import Callable, Iterable

from .actions import PlanContext, gesture_to_actions, intent_to_actions
from .gestures import FsmConfig, GestureFsm, GestureKind
from .intents import DEFAULT_TABLE, RuleTable, load_rules
from .landmarks import FrameStream, HandFrame, MalformedRecord
from .pointer import MapConfig, PointerState
from .weather import HttpWeatherProvider, StubWeatherProvider


@dataclass(frozen=True)
class Utterance:
    t_ms: int
    text: str


def parse_utterance(line: str) -> Utterance:
    """Parse one utterance record: {"t": <ms>, "text": "..."}."""
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(rec, dict):
        raise MalformedRecord("utterance record is not a JSON object")
    t = rec.get("t")
    if isinstance(t, bool) or not isinstance(t, int) or t <= 0:
        raise MalformedRecord("utterance field 't' must be a positive integer")
    text = rec.get("text")
    if not isinstance(text, str):
        raise MalformedRecord("utterance field 'text' must be a string")
    return Utterance(t_ms=t, text=text)


def load_utterances(path: str) -> list[Utterance]:
    """Load an utterance file; strict, with line numbers on errors."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(parse_utterance(line))
            except MalformedRecord as exc:
                raise MalformedRecord(str(exc), line=line_no) from exc
    out.sort(key=lambda u: u.t_ms)
    return out


@dataclass
class SessionConfig:
    fsm: FsmConfig = field(default_factory=FsmConfig)
    map: MapConfig = field(default_factory=MapConfig)
    backend: str = "mock"
    rules_path: str | None = None
    weather_provider: str = "stub"  # "stub" | "http"
    weather_fixtures: str | None = None
    default_city: str = "meerut"
    screenshot_dir: str = "screenshots"

    def rule_table(self) -> RuleTable:
        return load_rules(self.rules_path) if self.rules_path else DEFAULT_TABLE

    def make_weather(self):
        if self.weather_provider == "http":
            return HttpWeatherProvider()
        return StubWeatherProvider(path=self.weather_fixtures)


@dataclass
class SessionMetrics:
    frames: int = 0
    dropped_malformed: int = 0
    dropped_out_of_order: int = 0
    dropped_stale: int = 0
    utterances: int = 0
    events: int = 0
    actions: int = 0
    action_errors: int = 0
    parse_seconds: float = 0.0
    handle_seconds: float = 0.0

    @property
    def mean_frame_latency_ms(self) -> float:
        if self.frames == 0:
            return 0.0
        return (self.parse_seconds + self.handle_seconds) / self.frames * 1000.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["mean_frame_latency_ms"] = self.mean_frame_latency_ms
        return out

    def summary(self) -> str:
        d = self.to_dict()
        d["mean_frame_latency_ms"] = round(d["mean_frame_latency_ms"], 4)
        return " ".join(f"{k}={v}" for k, v in d.items())


class _Executor:
    """Runs actions against the backend and appends accepted ones to the log."""

    def __init__(self, backend, log_fh, metrics: SessionMetrics):
        self.backend = backend
        self.log_fh = log_fh
        self.metrics = metrics

    def run(self, actions) -> None:
        for action in actions:
            try:
                self.backend.execute(action)
            except Exception:
                self.metrics.action_errors += 1
                continue
            self.log_fh.write(action.to_json_line() + "\n")
            self.metrics.actions += 1


def _merge(frames: Iterable[HandFrame], utterances: list[Utterance]):
    """Yield frames and utterances in t_ms order; frames first on ties."""
    pending = iter(utterances)
    next_u = next(pending, None)
    for frame in frames:
        while next_u is not None and next_u.t_ms < frame.t_ms:
            yield next_u
            next_u = next(pending, None)
        yield frame
    while next_u is not None:
        yield next_u
        next_u = next(pending, None)


def run_session(
    frames: Iterable[HandFrame],
    utterances: list[Utterance] | None,
    cfg: SessionConfig,
    backend,
    log_fh,
    live: bool = False,
    should_stop: Callable[[], bool] | None = None,
) -> SessionMetrics:
    """Drive one full session; returns metrics after the sources end.

    `frames` is typically a FrameStream (its drop counters are folded into
    the metrics). `log_fh` is an open text file receiving one JSON line per
    executed action. `live=True` enables latest-frame-wins on the frame
    source and ignores utterances (live voice capture is out of scope).
    """
    metrics = SessionMetrics()
    executor = _Executor(backend, log_fh, metrics)
    fsm = GestureFsm(cfg.fsm)
    ptr = PointerState()
    ctx = PlanContext(
        weather=cfg.make_weather(),
        backend=backend,
        default_city=cfg.default_city,
        screenshot_dir=cfg.screenshot_dir,
    )
    table = cfg.rule_table()

    def handle_frame(frame: HandFrame) -> None:
        nonlocal ptr
        t0 = time.perf_counter()
        event = fsm.step(frame)
        if event.kind is not GestureKind.NONE:
            metrics.events += 1
        ptr, actions = gesture_to_actions(event, ptr, cfg.map)
        executor.run(actions)
        metrics.handle_seconds += time.perf_counter() - t0
        metrics.frames += 1

    def handle_utterance(utt: Utterance) -> None:
        intent = table.parse(utt.text)
        executor.run(intent_to_actions(intent, utt.t_ms, ctx))
        metrics.utterances += 1

    if live:
        _run_live(frames, handle_frame, metrics, should_stop)
    else:
        for item in _merge(frames, utterances or []):
            if should_stop is not None and should_stop():
                break
            if isinstance(item, HandFrame):
                handle_frame(item)
            else:
                handle_utterance(item)

    if isinstance(frames, FrameStream):
        metrics.dropped_malformed = frames.dropped_malformed
        metrics.dropped_out_of_order = frames.dropped_out_of_order
        metrics.parse_seconds = frames.parse_seconds
    return metrics


def _run_live(frames, handle_frame, metrics: SessionMetrics, should_stop) -> None:
    """Consume a real-time source with a latest-frame-wins policy.

    A reader thread feeds an unbounded queue; before handling, the consumer
    drains whatever else has piled up and keeps only the newest frame, so a
    slow handler degrades to skipping forward instead of falling behind.
    """
    feed: queue.SimpleQueue = queue.SimpleQueue()
    done = object()

    def reader():
        try:
            for frame in frames:
                feed.put(frame)
        finally:
            feed.put(done)

    thread = threading.Thread(target=reader, daemon=True)
    thread.start()

    finished = False
    while not finished:
        if should_stop is not None and should_stop():
            break
        item = feed.get()
        if item is done:
            break
        while True:
            try:
                newer = feed.get_nowait()
            except queue.Empty:
                break
            if newer is done:
                finished = True
                break
            metrics.dropped_stale += 1
            item = newer
        handle_frame(item)
