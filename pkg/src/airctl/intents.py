"""Rule-based intent grammar for transcribed voice commands.

Parsing is condition matching over an ordered rule table: the first rule
(lowest priority number) whose keyword set is fully present in the
normalized token sequence, and whose slot template (if any) matches, wins.
A catch-all rule maps everything else to Unknown, so every string parses
to exactly one intent. The table is immutable once built and can be loaded
from a config file so the vocabulary is extensible without rebuilds.

Rule file format, one rule per line, '#' comments allowed:

    priority | comma,separated,keywords | template with <slot> | intent_name

Both the keywords field and the template field may be empty. Exactly one
'unknown' rule is required and it must carry the highest priority number.
"""

from dataclasses import dataclass
from enum import Enum


class IntentKind(str, Enum):
    MEDIA_PLAY_PAUSE = "media_play_pause"
    SEEK_FORWARD = "seek_forward"
    SEEK_BACKWARD = "seek_backward"
    SPEED_UP = "speed_up"
    SLOW_DOWN = "slow_down"
    FULLSCREEN = "fullscreen"
    YOUTUBE_SEARCH = "youtube_search"
    GOOGLE_SEARCH = "google_search"
    OPEN_URL = "open_url"
    BRIGHTNESS_DELTA = "brightness_delta"
    SCREENSHOT = "screenshot"
    TEMPERATURE_QUERY = "temperature_query"
    BATTERY_STATUS = "battery_status"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Intent:
    kind: IntentKind
    query: str | None = None
    city: str | None = None
    amount: int | None = None  # signed brightness percent, in [-100, 100], nonzero
    site: str | None = None
    raw: str | None = None

    def slots(self) -> dict:
        out = {}
        for name in ("query", "city", "amount", "site", "raw"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


DEFAULT_BRIGHTNESS_STEP = 10


def normalize(text: str) -> list[str]:
    """Lowercase, strip punctuation, collapse whitespace, split into tokens.

    Apostrophes are deleted so contractions stay one token ("what's" ->
    "whats"); hyphens between alphanumerics survive ("lo-fi"); any other
    punctuation acts as a separator. Idempotent over join-and-renormalize.
    """
    text = text.lower().replace("'", "").replace("’", "")
    chars = []
    for i, ch in enumerate(text):
        if ch.isalnum() or ch.isspace():
            chars.append(ch)
        elif ch == "-" and 0 < i < len(text) - 1 and text[i - 1].isalnum() and text[i + 1].isalnum():
            chars.append(ch)
        else:
            chars.append(" ")
    return "".join(chars).split()


class RuleTableError(ValueError):
    """The rule table violates its structural invariants."""


@dataclass(frozen=True)
class Rule:
    priority: int
    keywords: frozenset[str]
    template: str | None
    intent: str  # rule-table intent name, see _BUILDERS


def _parse_template(template: str) -> tuple[list[str], bool, list[str]]:
    """Split a template into (prefix tokens, has-slot, suffix tokens)."""
    tokens = template.split()
    slots = [i for i, tok in enumerate(tokens) if tok.startswith("<") and tok.endswith(">")]
    if not slots:
        return tokens, False, []
    if len(slots) > 1:
        raise RuleTableError(f"template {template!r} has more than one slot")
    i = slots[0]
    return tokens[:i], True, tokens[i + 1 :]


def _find_seq(tokens: list[str], seq: list[str], start: int = 0) -> int:
    """Index where seq occurs contiguously in tokens at or after start, else -1."""
    if not seq:
        return start
    for i in range(start, len(tokens) - len(seq) + 1):
        if tokens[i : i + len(seq)] == seq:
            return i
    return -1


def _match_template(tokens: list[str], template: str) -> tuple[bool, str | None]:
    """Match a template against tokens; return (matched, captured span).

    The capture is the token span between the template's literal prefix and
    suffix (or end of utterance); it must be non-empty for the match to
    count.
    """
    prefix, has_slot, suffix = _parse_template(template)
    at = _find_seq(tokens, prefix)
    if at < 0:
        return False, None
    if not has_slot:
        return True, None
    span_start = at + len(prefix)
    if suffix:
        end = _find_seq(tokens, suffix, span_start + 1)
        if end < 0:
            return False, None
        span = tokens[span_start:end]
    else:
        span = tokens[span_start:]
    if not span:
        return False, None
    return True, " ".join(span)


def _extract_amount(tokens: list[str]) -> int:
    """Brightness step magnitude: first numeric token, else the default."""
    for tok in tokens:
        if tok.isdigit():
            value = int(tok)
            if value == 0:
                return DEFAULT_BRIGHTNESS_STEP
            return min(value, 100)
    return DEFAULT_BRIGHTNESS_STEP


def _make_brightness(sign: int, tokens: list[str]) -> Intent:
    return Intent(IntentKind.BRIGHTNESS_DELTA, amount=sign * _extract_amount(tokens))


_BUILDERS = {
    "media_play_pause": lambda cap, toks, raw: Intent(IntentKind.MEDIA_PLAY_PAUSE),
    "seek_forward": lambda cap, toks, raw: Intent(IntentKind.SEEK_FORWARD),
    "seek_backward": lambda cap, toks, raw: Intent(IntentKind.SEEK_BACKWARD),
    "speed_up": lambda cap, toks, raw: Intent(IntentKind.SPEED_UP),
    "slow_down": lambda cap, toks, raw: Intent(IntentKind.SLOW_DOWN),
    "fullscreen": lambda cap, toks, raw: Intent(IntentKind.FULLSCREEN),
    "youtube_search": lambda cap, toks, raw: Intent(IntentKind.YOUTUBE_SEARCH, query=cap),
    "google_search": lambda cap, toks, raw: Intent(IntentKind.GOOGLE_SEARCH, query=cap),
    "open_url": lambda cap, toks, raw: Intent(IntentKind.OPEN_URL, site=cap),
    "brightness_up": lambda cap, toks, raw: _make_brightness(+1, toks),
    "brightness_down": lambda cap, toks, raw: _make_brightness(-1, toks),
    "screenshot": lambda cap, toks, raw: Intent(IntentKind.SCREENSHOT),
    "temperature_query": lambda cap, toks, raw: Intent(IntentKind.TEMPERATURE_QUERY, city=cap),
    "battery_status": lambda cap, toks, raw: Intent(IntentKind.BATTERY_STATUS),
    "unknown": lambda cap, toks, raw: Intent(IntentKind.UNKNOWN, raw=raw),
}


class RuleTable:
    """Ordered, validated rule list; immutable after construction."""

    def __init__(self, rules: list[Rule]):
        priorities = [r.priority for r in rules]
        if len(set(priorities)) != len(priorities):
            raise RuleTableError("rule priorities must be unique")
        for rule in rules:
            if rule.intent not in _BUILDERS:
                raise RuleTableError(f"unknown intent name {rule.intent!r}")
            if rule.template is not None:
                _parse_template(rule.template)  # raises on malformed templates
        ordered = sorted(rules, key=lambda r: r.priority)
        catch_alls = [r for r in ordered if r.intent == "unknown"]
        if len(catch_alls) != 1 or ordered[-1].intent != "unknown":
            raise RuleTableError("exactly one 'unknown' catch-all rule is required, last")
        self.rules = tuple(ordered)

    def parse(self, text: str) -> Intent:
        tokens = normalize(text)
        for rule in self.rules:
            if rule.intent == "unknown":
                return Intent(IntentKind.UNKNOWN, raw=text)
            if rule.keywords and not rule.keywords.issubset(tokens):
                continue
            capture = None
            if rule.template is not None:
                matched, capture = _match_template(tokens, rule.template)
                if not matched:
                    continue
            return _BUILDERS[rule.intent](capture, tokens, text)
        raise AssertionError("unreachable: table always ends with the catch-all")


def parse_rule_lines(lines) -> RuleTable:
    rules = []
    for line_no, line in enumerate(lines, start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        parts = [field.strip() for field in body.split("|")]
        if len(parts) != 4:
            raise RuleTableError(f"line {line_no}: expected 4 '|' separated fields")
        priority_text, keywords_text, template_text, intent_name = parts
        try:
            priority = int(priority_text)
        except ValueError:
            raise RuleTableError(f"line {line_no}: bad priority {priority_text!r}") from None
        keywords = frozenset(k.strip() for k in keywords_text.split(",") if k.strip())
        template = template_text if template_text else None
        rules.append(Rule(priority, keywords, template, intent_name))
    return RuleTable(rules)


def load_rules(path: str) -> RuleTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rule_lines(fh)


# Built-in vocabulary covering media control, search, brightness,
# screenshot, temperature, and battery commands. Seek/speed synonyms follow
# common phrasing: "fast"/"forward" seek ahead, "back"/"rewind"/"backward"
# seek back, "speed"/"faster" and "slow"/"slower" change playback rate.
_DEFAULT_RULES = """
10  |                      | search <q> on youtube | youtube_search
11  |                      | play <q> on youtube   | youtube_search
12  |                      | search <q> on google  | google_search
13  |                      | google <q>            | google_search
20  |                      | temperature in <city> | temperature_query
21  |                      | weather in <city>     | temperature_query
22  | temperature          |                       | temperature_query
23  | weather              |                       | temperature_query
30  | increase,brightness  |                       | brightness_up
31  | brightness,up        |                       | brightness_up
32  | decrease,brightness  |                       | brightness_down
33  | brightness,down      |                       | brightness_down
40  | fullscreen           |                       | fullscreen
41  | full,screen          |                       | fullscreen
50  | screenshot           |                       | screenshot
51  | capture,screen       |                       | screenshot
60  | battery              |                       | battery_status
70  | open                 | open <site>           | open_url
80  | forward              |                       | seek_forward
81  | fast                 |                       | seek_forward
82  | back                 |                       | seek_backward
83  | rewind               |                       | seek_backward
84  | backward             |                       | seek_backward
85  | speed                |                       | speed_up
86  | faster               |                       | speed_up
87  | slow                 |                       | slow_down
88  | slower               |                       | slow_down
90  | play                 |                       | media_play_pause
91  | pause                |                       | media_play_pause
92  | resume               |                       | media_play_pause
999 |                      |                       | unknown
"""

DEFAULT_TABLE = parse_rule_lines(_DEFAULT_RULES.splitlines())


def parse_intent(text: str, table: RuleTable | None = None) -> Intent:
    """Parse one utterance into exactly one Intent (total, stateless)."""
    return (table or DEFAULT_TABLE).parse(text)
