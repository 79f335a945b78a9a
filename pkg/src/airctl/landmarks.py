"""Hand-landmark data model, JSONL wire format, and frame stream ingestion.

One frame is 21 landmarks in normalized image coordinates plus a handedness
label and a millisecond timestamp. Frames arrive as newline-delimited JSON
records with the same schema whether they come from a file, stdin, or a TCP
producer:

    {"t": 1234, "hand": "Right", "lm": [[x, y, z], ...21 entries...]}

Landmark indices follow the standard 21-point hand topology: 0 wrist,
1-4 thumb (CMC, MCP, IP, tip), 5-8 index, 9-12 middle, 13-16 ring,
17-20 pinky (MCP, PIP, DIP, tip per finger).
"""

import json
import math
import socket
import sys
import time
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

LANDMARK_COUNT = 21

# Detectors overshoot the image a little; accept a band around [0, 1] and
# leave clamping to the pointer-mapping stage.
COORD_MIN = -0.5
COORD_MAX = 1.5

WRIST = 0
THUMB_IP = 3
THUMB_TIP = 4
INDEX_PIP = 6
INDEX_TIP = 8
MIDDLE_PIP = 10
MIDDLE_TIP = 12
RING_PIP = 14
RING_TIP = 16
PINKY_MCP = 17
PINKY_PIP = 18
PINKY_TIP = 20


class FrameError(ValueError):
    """Base class for frame validation failures. Carries the source line
    number when raised by a stream in strict mode."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class MalformedRecord(FrameError):
    """Record is not valid JSON or does not have the expected shape/types."""


class WrongArity(FrameError):
    """Record does not contain exactly 21 landmarks."""


class OutOfRange(FrameError):
    """A coordinate is non-finite or outside the accepted band."""


class BadTimestamp(FrameError):
    """Timestamp is missing, non-integer, or not strictly positive."""


class SourceUnavailable(Exception):
    """The requested frame source cannot be opened (missing file, bind failure)."""


@dataclass(frozen=True)
class Landmark:
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class HandFrame:
    """One validated sample: timestamp, handedness, and 21 landmarks."""

    t_ms: int
    hand: str  # "Left" | "Right"
    lm: tuple[Landmark, ...]


def _coord(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedRecord(f"{name} is not a number")
    return float(value)


def parse_frame(line: str) -> HandFrame:
    """Parse and validate one JSONL frame record.

    Raises MalformedRecord, WrongArity, OutOfRange, or BadTimestamp. Never
    returns a partially valid frame.
    """
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(rec, dict):
        raise MalformedRecord("record is not a JSON object")

    t = rec.get("t")
    if isinstance(t, bool) or not isinstance(t, int):
        raise MalformedRecord("field 't' must be an integer millisecond count")
    if t <= 0:
        raise BadTimestamp(f"t_ms must be > 0, got {t}")

    hand = rec.get("hand")
    if hand not in ("Left", "Right"):
        raise MalformedRecord(f"field 'hand' must be 'Left' or 'Right', got {hand!r}")

    lm = rec.get("lm")
    if not isinstance(lm, list):
        raise MalformedRecord("field 'lm' must be a list")
    if len(lm) != LANDMARK_COUNT:
        raise WrongArity(f"expected {LANDMARK_COUNT} landmarks, got {len(lm)}")

    points = []
    for i, entry in enumerate(lm):
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedRecord(f"landmark {i} is not an [x, y, z] triple")
        x = _coord(entry[0], f"landmark {i} x")
        y = _coord(entry[1], f"landmark {i} y")
        z = _coord(entry[2], f"landmark {i} z")
        if not (COORD_MIN <= x <= COORD_MAX):
            raise OutOfRange(f"landmark {i} x={x} outside [{COORD_MIN}, {COORD_MAX}]")
        if not (COORD_MIN <= y <= COORD_MAX):
            raise OutOfRange(f"landmark {i} y={y} outside [{COORD_MIN}, {COORD_MAX}]")
        if not math.isfinite(z):
            raise OutOfRange(f"landmark {i} z is not finite")
        points.append(Landmark(x, y, z))

    return HandFrame(t_ms=t, hand=hand, lm=tuple(points))


def serialize_frame(frame: HandFrame) -> str:
    """Serialize a frame back to its wire form (no trailing newline).

    Round-trips exactly: parse_frame(serialize_frame(f)) == f.
    """
    rec = {
        "t": frame.t_ms,
        "hand": frame.hand,
        "lm": [[p.x, p.y, p.z] for p in frame.lm],
    }
    return json.dumps(rec, separators=(",", ":"))


class FrameStream:
    """Ordered single-consumer stream of validated frames.

    Enforces non-decreasing t_ms: out-of-order frames are dropped and
    counted, never reordered. By default malformed records are also dropped
    and counted (a live capture must survive glitches); in strict mode they
    raise with the offending line number, which is what replay wants.
    """

    policy = "drop-out-of-order"

    def __init__(self, lines: Iterable[str], kind: str, strict: bool = False):
        self._lines = lines
        self.kind = kind  # "file" | "stdin" | "socket"
        self.strict = strict
        self.emitted = 0
        self.dropped_out_of_order = 0
        self.dropped_malformed = 0
        self.parse_seconds = 0.0
        self._last_t: int | None = None

    def __iter__(self) -> Iterator[HandFrame]:
        for line_no, line in enumerate(self._lines, start=1):
            if not line.strip():
                continue
            t0 = time.perf_counter()
            try:
                frame = parse_frame(line)
            except FrameError as exc:
                self.parse_seconds += time.perf_counter() - t0
                if self.strict:
                    raise type(exc)(str(exc), line=line_no) from exc
                self.dropped_malformed += 1
                continue
            self.parse_seconds += time.perf_counter() - t0
            if self._last_t is not None and frame.t_ms < self._last_t:
                self.dropped_out_of_order += 1
                continue
            self._last_t = frame.t_ms
            self.emitted += 1
            yield frame


class SocketFrameStream(FrameStream):
    """Frame stream served over a listening TCP socket.

    Binds eagerly (so bind failures surface as SourceUnavailable at open
    time), accepts a single producer connection on first iteration, and
    ends the stream when that producer disconnects.
    """

    def __init__(self, host: str, port: int, strict: bool = False):
        try:
            self._server = socket.create_server((host, port))
        except OSError as exc:
            raise SourceUnavailable(f"cannot bind tcp:{host}:{port}: {exc}") from exc
        self.address = self._server.getsockname()[:2]
        super().__init__(self._socket_lines(), kind="socket", strict=strict)

    def _socket_lines(self) -> Iterator[str]:
        conn, _ = self._server.accept()
        try:
            with conn.makefile("r", encoding="utf-8", newline="\n") as reader:
                for line in reader:
                    yield line
        finally:
            conn.close()
            self._server.close()

    def close(self) -> None:
        self._server.close()


def _file_lines(path: str) -> Iterator[str]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            yield line


def open_stream(source: str, strict: bool = False, stdin: IO[str] | None = None) -> FrameStream:
    """Open a frame source named by a descriptor string.

    Descriptors: "stdin" or "-" for standard input, "tcp:HOST:PORT" to
    listen for one producer connection, anything else is a file path.
    Raises SourceUnavailable if the file is missing or the bind fails.
    """
    if source in ("stdin", "-"):
        return FrameStream(stdin if stdin is not None else sys.stdin, kind="stdin", strict=strict)
    if source.startswith("tcp:"):
        parts = source.split(":")
        if len(parts) != 3:
            raise SourceUnavailable(f"bad tcp source {source!r}, expected tcp:HOST:PORT")
        host, port_text = parts[1], parts[2]
        try:
            port = int(port_text)
        except ValueError:
            raise SourceUnavailable(f"bad tcp port {port_text!r}") from None
        return SocketFrameStream(host, port, strict=strict)
    import os

    if not os.path.isfile(source):
        raise SourceUnavailable(f"no such frame file: {source}")
    return FrameStream(_file_lines(source), kind="file", strict=strict)
