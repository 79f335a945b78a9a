"""Injection backends: where actions actually land.

The mock backend is the reference implementation; it records every action
it accepts and keeps everything deterministic and headless-safe. The OS
backend is a thin adapter over desktop automation libraries and is only
constructed on demand, so the engine runs on CI boxes with no display.
A backend must reject unsupported action kinds with UnsupportedAction,
never drop them silently.
"""

from .actions import Action, ActionKind

ALL_KINDS = frozenset(ActionKind)


class UnsupportedAction(Exception):
    """The backend does not implement this action kind."""


class BackendUnavailable(Exception):
    """The backend cannot run here (missing libraries, no display)."""


class MockBackend:
    """Records accepted actions; fixed battery status; no side effects."""

    def __init__(self, capabilities: frozenset = ALL_KINDS):
        self.capabilities = capabilities
        self.actions: list[Action] = []

    def execute(self, action: Action) -> None:
        if action.kind not in self.capabilities:
            raise UnsupportedAction(f"mock backend configured without {action.kind.value}")
        self.actions.append(action)

    def battery_status(self) -> tuple[int, bool]:
        return 100, True

    def screen_size(self) -> tuple[int, int] | None:
        return None


class OsBackend:
    """Adapter over pyautogui and friends for live desktop control."""

    def __init__(self):
        try:
            import pyautogui
        except Exception as exc:  # ImportError or display init failure
            raise BackendUnavailable(f"pyautogui unavailable: {exc}") from exc
        self._gui = pyautogui
        try:
            import screen_brightness_control
            self._brightness = screen_brightness_control
        except Exception:
            self._brightness = None
        caps = {
            ActionKind.MOVE_TO,
            ActionKind.CLICK,
            ActionKind.SCROLL,
            ActionKind.KEY_TAP,
            ActionKind.SCREENSHOT,
            ActionKind.OPEN_URL,
            ActionKind.SAY,
            ActionKind.QUERY_WEATHER,
        }
        if self._brightness is not None:
            caps.add(ActionKind.BRIGHTNESS_DELTA)
        self.capabilities = frozenset(caps)

    def execute(self, action: Action) -> None:
        if action.kind not in self.capabilities:
            raise UnsupportedAction(f"os backend cannot {action.kind.value}")
        args = action.args
        if action.kind is ActionKind.MOVE_TO:
            self._gui.moveTo(args["x"], args["y"])
        elif action.kind is ActionKind.CLICK:
            self._gui.click(button=args["button"])
        elif action.kind is ActionKind.SCROLL:
            self._gui.scroll(args["dy"])
        elif action.kind is ActionKind.KEY_TAP:
            self._gui.press(args["key"])
        elif action.kind is ActionKind.BRIGHTNESS_DELTA:
            current = self._brightness.get_brightness(display=0)[0]
            self._brightness.set_brightness(max(0, min(100, current + args["percent"])))
        elif action.kind is ActionKind.SCREENSHOT:
            self._gui.screenshot(args["path"])
        elif action.kind is ActionKind.OPEN_URL:
            import webbrowser

            webbrowser.open(args["url"])
        elif action.kind is ActionKind.SAY:
            print(f"[say] {args['text']}")
        # QUERY_WEATHER is a log record; the provider already did the work.

    def battery_status(self) -> tuple[int, bool]:
        try:
            import psutil

            info = psutil.sensors_battery()
            if info is not None:
                return int(info.percent), bool(info.power_plugged)
        except Exception:
            pass
        return 100, True

    def screen_size(self) -> tuple[int, int] | None:
        size = self._gui.size()
        return int(size[0]), int(size[1])


def make_backend(name: str):
    """Backend factory for the CLI: 'mock' or 'os'."""
    if name == "mock":
        return MockBackend()
    if name == "os":
        return OsBackend()
    raise BackendUnavailable(f"unknown backend {name!r}")
