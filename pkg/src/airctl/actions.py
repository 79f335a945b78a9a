"""Backend-level actions and the planners that produce them.

Gesture events and parsed intents both reduce to a flat Action stream that
an injection backend executes and the session logs as JSONL:

    {"t": <ms>, "action": "<kind>", "args": {...}}

Planning is deterministic: with the stub weather provider and the mock
backend, the same inputs always produce byte-identical logs. YouTube media
control is keystroke-based on the platform's public shortcut bindings
(k play/pause, j back, l forward, < slower, > faster, f fullscreen).
"""

import json
from dataclasses import dataclass
from enum import Enum
from urllib.parse import quote

from .gestures import GestureEvent, GestureKind
from .intents import Intent, IntentKind
from .pointer import MapConfig, PointerState, map_to_screen, smooth
from .weather import CityUnknown, ProviderUnreachable, format_report


class ActionKind(str, Enum):
    MOVE_TO = "move_to"
    CLICK = "click"
    SCROLL = "scroll"
    KEY_TAP = "key_tap"
    BRIGHTNESS_DELTA = "brightness_delta"
    SCREENSHOT = "screenshot"
    OPEN_URL = "open_url"
    SAY = "say"
    QUERY_WEATHER = "query_weather"


@dataclass(frozen=True)
class Action:
    t_ms: int
    kind: ActionKind
    args: dict

    def to_json_line(self) -> str:
        return json.dumps(
            {"t": self.t_ms, "action": self.kind.value, "args": self.args},
            separators=(",", ":"),
        )


def move_to(t_ms: int, px: int, py: int, cfg: MapConfig) -> Action:
    if not (0 <= px <= cfg.screen_w - 1 and 0 <= py <= cfg.screen_h - 1):
        raise ValueError(f"MoveTo ({px}, {py}) outside screen {cfg.screen_w}x{cfg.screen_h}")
    return Action(t_ms, ActionKind.MOVE_TO, {"x": px, "y": py})


def click(t_ms: int, button: str) -> Action:
    if button not in ("left", "right"):
        raise ValueError(f"bad button {button!r}")
    return Action(t_ms, ActionKind.CLICK, {"button": button})


def scroll(t_ms: int, dy: int) -> Action:
    if dy == 0:
        raise ValueError("scroll dy must be nonzero")
    return Action(t_ms, ActionKind.SCROLL, {"dy": dy})


def key_tap(t_ms: int, key: str) -> Action:
    return Action(t_ms, ActionKind.KEY_TAP, {"key": key})


def say(t_ms: int, text: str) -> Action:
    return Action(t_ms, ActionKind.SAY, {"text": text})


YOUTUBE_KEYS = {
    IntentKind.MEDIA_PLAY_PAUSE: "k",
    IntentKind.SEEK_FORWARD: "l",
    IntentKind.SEEK_BACKWARD: "j",
    IntentKind.SPEED_UP: ">",
    IntentKind.SLOW_DOWN: "<",
    IntentKind.FULLSCREEN: "f",
}

SITE_URLS = {
    "youtube": "https://www.youtube.com",
    "google": "https://www.google.com",
    "github": "https://www.github.com",
    "gmail": "https://mail.google.com",
}


def resolve_site(site: str) -> str:
    known = SITE_URLS.get(site)
    if known:
        return known
    return f"https://www.{site.replace(' ', '')}.com"


def gesture_to_actions(
    ev: GestureEvent, ptr: PointerState, cfg: MapConfig
) -> tuple[PointerState, list[Action]]:
    """Translate one gesture event, threading the pointer smoothing state.

    Returns the advanced pointer state and zero or more actions (zero when
    the event is NONE or the smoothed move lands inside the deadzone).
    """
    if ev.kind is GestureKind.MOVE:
        target = map_to_screen(ev.x, ev.y, cfg)
        ptr, out = smooth(ptr, target, cfg)
        if out is None:
            return ptr, []
        return ptr, [move_to(ev.t_ms, out[0], out[1], cfg)]
    if ev.kind is GestureKind.LEFT_CLICK:
        return ptr, [click(ev.t_ms, "left")]
    if ev.kind is GestureKind.RIGHT_CLICK:
        return ptr, [click(ev.t_ms, "right")]
    if ev.kind is GestureKind.SCROLL:
        return ptr, [scroll(ev.t_ms, ev.dy)]
    return ptr, []


@dataclass
class PlanContext:
    """Everything intent planning may consult besides the intent itself."""

    weather: object  # provider with .query(city)
    backend: object  # for battery status
    default_city: str = "meerut"
    screenshot_dir: str = "screenshots"


def intent_to_actions(intent: Intent, t_ms: int, ctx: PlanContext) -> list[Action]:
    """Plan the action sequence for one parsed intent.

    Never raises: provider and lookup failures turn into spoken error
    replies so a bad command cannot take the session down.
    """
    kind = intent.kind
    if kind in YOUTUBE_KEYS:
        return [key_tap(t_ms, YOUTUBE_KEYS[kind])]
    if kind is IntentKind.YOUTUBE_SEARCH:
        url = "https://www.youtube.com/results?search_query=" + quote(intent.query, safe="")
        return [Action(t_ms, ActionKind.OPEN_URL, {"url": url})]
    if kind is IntentKind.GOOGLE_SEARCH:
        url = "https://www.google.com/search?q=" + quote(intent.query, safe="")
        return [Action(t_ms, ActionKind.OPEN_URL, {"url": url})]
    if kind is IntentKind.OPEN_URL:
        return [Action(t_ms, ActionKind.OPEN_URL, {"url": resolve_site(intent.site)})]
    if kind is IntentKind.BRIGHTNESS_DELTA:
        return [Action(t_ms, ActionKind.BRIGHTNESS_DELTA, {"percent": intent.amount})]
    if kind is IntentKind.SCREENSHOT:
        path = f"{ctx.screenshot_dir}/shot_{t_ms}.png"
        return [Action(t_ms, ActionKind.SCREENSHOT, {"path": path})]
    if kind is IntentKind.TEMPERATURE_QUERY:
        city = intent.city or ctx.default_city
        lookup = Action(t_ms, ActionKind.QUERY_WEATHER, {"city": city})
        try:
            reply = format_report(ctx.weather.query(city))
        except CityUnknown:
            reply = f"I have no weather data for {city}."
        except ProviderUnreachable:
            reply = "The weather service is unreachable."
        return [lookup, say(t_ms, reply)]
    if kind is IntentKind.BATTERY_STATUS:
        percent, charging = ctx.backend.battery_status()
        status = "charging" if charging else "not charging"
        return [say(t_ms, f"Battery at {percent} percent, {status}.")]
    return [say(t_ms, "command not recognized")]
