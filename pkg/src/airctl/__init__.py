"""airctl: deterministic gesture and voice input control engine.

Turns 21-point hand-landmark frame streams into pointer events (move,
clicks, scroll) and transcribed voice commands into assistant actions,
executed through a pluggable injection backend. Fully replayable: the same
inputs and config always produce the same action log.
"""

from .fingers import FingerState, fingers_up
from .gestures import FsmConfig, GestureEvent, GestureFsm, GestureKind
from .intents import Intent, IntentKind, parse_intent
from .landmarks import HandFrame, Landmark, open_stream, parse_frame, serialize_frame
from .pointer import MapConfig, PointerState, map_to_screen, smooth

__version__ = "0.1.0"

__all__ = [
    "FingerState",
    "FsmConfig",
    "GestureEvent",
    "GestureFsm",
    "GestureKind",
    "HandFrame",
    "Intent",
    "IntentKind",
    "Landmark",
    "MapConfig",
    "PointerState",
    "fingers_up",
    "map_to_screen",
    "open_stream",
    "parse_frame",
    "parse_intent",
    "serialize_frame",
    "smooth",
    "__version__",
]
