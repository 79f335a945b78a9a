import json
import random
import string
from importlib import resources

import pytest

from airctl.intents import (
    DEFAULT_TABLE,
    Intent,
    IntentKind,
    Rule,
    RuleTable,
    RuleTableError,
    load_rules,
    normalize,
    parse_intent,
    parse_rule_lines,
)


# --- normalization ------------------------------------------------------------


def test_normalize_examples():
    assert normalize("  Play   Music! ") == ["play", "music"]
    assert normalize("") == []
    assert normalize("What's the TEMPERATURE in Meerut?") == ["whats", "the", "temperature", "in", "meerut"]


def test_normalize_keeps_interior_hyphens():
    assert normalize("search lo-fi beats") == ["search", "lo-fi", "beats"]
    assert normalize("- leading and trailing -") == ["leading", "and", "trailing"]


def test_normalize_idempotent():
    rng = random.Random(4)
    alphabet = string.ascii_letters + string.digits + " '-!?,." + "’"
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        once = normalize(text)
        assert normalize(" ".join(once)) == once


# --- parsing ------------------------------------------------------------------


def test_pause_music():
    assert parse_intent("pause music").kind is IntentKind.MEDIA_PLAY_PAUSE


def test_increase_brightness_default_step():
    intent = parse_intent("increase brightness")
    assert intent.kind is IntentKind.BRIGHTNESS_DELTA
    assert intent.amount == 10


def test_youtube_search_slot():
    intent = parse_intent("search lo-fi beats on youtube")
    assert intent.kind is IntentKind.YOUTUBE_SEARCH
    assert intent.query == "lo-fi beats"


def test_unknown_fallback():
    intent = parse_intent("blorp the fizzle")
    assert intent.kind is IntentKind.UNKNOWN
    assert intent.raw == "blorp the fizzle"


def test_explicit_brightness_amount():
    assert parse_intent("decrease brightness by 25 percent").amount == -25
    assert parse_intent("increase brightness by 300 percent").amount == 100
    assert parse_intent("increase brightness by 0 percent").amount == 10


def test_temperature_city_optional():
    assert parse_intent("temperature").city is None
    assert parse_intent("what is the temperature in san francisco").city == "san francisco"


def test_template_requires_nonempty_capture():
    # "search on youtube" has nothing between the anchors (and no other rule fires).
    assert parse_intent("search on youtube").kind is IntentKind.UNKNOWN
    assert parse_intent("play on youtube").kind is IntentKind.MEDIA_PLAY_PAUSE


def test_priority_soundness():
    # Matches both the play-template rule and the bare play rule; the
    # higher-priority template wins.
    intent = parse_intent("play hand tracking demos on youtube")
    assert intent.kind is IntentKind.YOUTUBE_SEARCH
    assert intent.query == "hand tracking demos"


def test_totality_never_raises():
    rng = random.Random(77)
    alphabet = string.printable
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))
        intent = parse_intent(text)
        assert isinstance(intent, Intent)
        assert intent.kind in IntentKind


def test_stateless_and_order_independent():
    a = parse_intent("open youtube")
    parse_intent("search cats on google")
    parse_intent("nonsense words here")
    b = parse_intent("open youtube")
    assert a == b


def test_shipped_corpus_parses_exactly():
    text = resources.files("airctl.data").joinpath("intent_corpus.jsonl").read_text("utf-8")
    cases = [json.loads(line) for line in text.splitlines() if line.strip()]
    assert len(cases) >= 30
    kinds = {}
    for case in cases:
        intent = parse_intent(case["text"])
        assert intent.kind.value == case["expect"], case["text"]
        assert intent.slots() == case["slots"], case["text"]
        kinds[case["expect"]] = kinds.get(case["expect"], 0) + 1
    assert all(count >= 2 for count in kinds.values())
    assert set(kinds) == {k.value for k in IntentKind}
    assert kinds["unknown"] >= 5


# --- rule table ---------------------------------------------------------------


def test_table_rejects_duplicate_priorities():
    with pytest.raises(RuleTableError):
        RuleTable(
            [
                Rule(1, frozenset({"a"}), None, "screenshot"),
                Rule(1, frozenset({"b"}), None, "screenshot"),
                Rule(9, frozenset(), None, "unknown"),
            ]
        )


def test_table_requires_single_trailing_catch_all():
    with pytest.raises(RuleTableError):
        RuleTable([Rule(1, frozenset({"a"}), None, "screenshot")])
    with pytest.raises(RuleTableError):
        RuleTable(
            [
                Rule(1, frozenset(), None, "unknown"),
                Rule(2, frozenset({"a"}), None, "screenshot"),
            ]
        )
    with pytest.raises(RuleTableError):
        RuleTable(
            [
                Rule(1, frozenset(), None, "unknown"),
                Rule(2, frozenset(), None, "unknown"),
            ]
        )


def test_table_rejects_unknown_intent_name():
    with pytest.raises(RuleTableError):
        RuleTable([Rule(1, frozenset({"a"}), None, "warp_drive"), Rule(9, frozenset(), None, "unknown")])


def test_rule_line_errors():
    with pytest.raises(RuleTableError):
        parse_rule_lines(["1 | a | b"])
    with pytest.raises(RuleTableError):
        parse_rule_lines(["x | a |  | screenshot", "9 |  |  | unknown"])
    with pytest.raises(RuleTableError):
        parse_rule_lines(["1 |  | give <a> to <b> | screenshot", "9 |  |  | unknown"])


def test_load_rules_from_file(tmp_path):
    path = tmp_path / "rules.txt"
    path.write_text(
        "# custom vocabulary\n"
        "5 | jump |  | screenshot\n"
        "999 |  |  | unknown\n"
    )
    table = load_rules(str(path))
    assert table.parse("jump around").kind is IntentKind.SCREENSHOT
    assert table.parse("play music").kind is IntentKind.UNKNOWN


def test_default_table_is_valid():
    assert DEFAULT_TABLE.rules[-1].intent == "unknown"
    priorities = [r.priority for r in DEFAULT_TABLE.rules]
    assert priorities == sorted(priorities)
