"""Pluggable weather providers for the temperature intent.

The default provider is an offline stub backed by a JSON fixtures file
(city -> {temp_c, condition}), which keeps sessions and tests fully
deterministic and network-free. A small HTTP provider is included for live
use; any failure there surfaces as ProviderUnreachable and never kills the
session.
"""

import json
from dataclasses import dataclass
from importlib import resources


class WeatherError(Exception):
    pass


class CityUnknown(WeatherError):
    """The provider has no data for the requested city."""


class ProviderUnreachable(WeatherError):
    """Live provider could not be reached (timeout, DNS, bad response)."""


@dataclass(frozen=True)
class WeatherReport:
    city: str
    temp_c: float
    condition: str


def _normalize_city(city: str) -> str:
    return " ".join(city.lower().split())


class StubWeatherProvider:
    """Offline provider returning canned fixtures keyed by city name."""

    def __init__(self, fixtures: dict | None = None, path: str | None = None):
        if fixtures is None:
            if path is None:
                text = resources.files("airctl.data").joinpath("weather_fixtures.json").read_text("utf-8")
            else:
                with open(path, "r", encoding="utf-8") as fh:
                    text = fh.read()
            fixtures = json.loads(text)
        self._fixtures = {_normalize_city(name): rec for name, rec in fixtures.items()}

    def query(self, city: str) -> WeatherReport:
        key = _normalize_city(city)
        rec = self._fixtures.get(key)
        if rec is None:
            raise CityUnknown(f"no weather fixture for {city!r}")
        return WeatherReport(city=key, temp_c=float(rec["temp_c"]), condition=str(rec["condition"]))


class HttpWeatherProvider:
    """Live provider using the wttr.in JSON endpoint."""

    def __init__(self, base_url: str = "https://wttr.in", timeout_s: float = 5.0):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s

    def query(self, city: str) -> WeatherReport:
        import requests

        key = _normalize_city(city)
        try:
            resp = requests.get(f"{self.base_url}/{key}", params={"format": "j1"}, timeout=self.timeout_s)
            resp.raise_for_status()
            current = resp.json()["current_condition"][0]
            return WeatherReport(
                city=key,
                temp_c=float(current["temp_C"]),
                condition=str(current["weatherDesc"][0]["value"]),
            )
        except Exception as exc:
            raise ProviderUnreachable(f"weather lookup for {city!r} failed: {exc}") from exc


def query_weather(city: str, provider) -> WeatherReport:
    """Ask the configured provider; raises CityUnknown or ProviderUnreachable."""
    return provider.query(city)


def format_report(report: WeatherReport) -> str:
    """Spoken-reply text for a weather report; stable across runs."""
    return f"It is {report.temp_c:g} degrees Celsius with {report.condition} in {report.city.title()}."
