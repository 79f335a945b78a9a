"""Command-line entry points.

Subcommands:
    run     live session from a frame source until interrupted
    record  passthrough-save a frame source to a file for later replay
    replay  deterministic offline session from frame/utterance files
    eval    per-gesture accuracy of a frame file against labels
    parse   one-shot intent parse, printed as JSON

Exit codes: 0 success, 2 usage error, 3 source unavailable, 4 malformed
record (with line number), 5 label error, 6 backend unavailable,
7 config error.
"""

import argparse
import json
import os
import signal
import sys

from . import config as cfgmod
from .backends import BackendUnavailable, make_backend
from .evaluation import LabelError, evaluate, load_labels
from .intents import parse_intent
from .landmarks import FrameError, SourceUnavailable, open_stream, serialize_frame
from .session import load_utterances, run_session

EX_OK = 0
EX_SOURCE = 3
EX_MALFORMED = 4
EX_LABELS = 5
EX_BACKEND = 6
EX_CONFIG = 7


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--screen", help="screen size WxH (overrides detection)")
    sub.add_argument("--backend", choices=["mock", "os"], help="injection backend")
    for key in cfgmod.CONFIG_KEYS:
        if key in ("backend", "screen_w", "screen_h"):
            continue
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key, help=f"override config key {key}")


def _merged_config(args) -> dict:
    overrides = {key: getattr(args, key, None) for key in cfgmod.CONFIG_KEYS}
    overrides["backend"] = getattr(args, "backend", None)
    if getattr(args, "screen", None):
        w, h = cfgmod.parse_screen(args.screen)
        overrides["screen_w"], overrides["screen_h"] = w, h
    merged = cfgmod.effective(file_path=getattr(args, "config", None), overrides=overrides)
    print(f"config: {json.dumps(merged, sort_keys=True)}", file=sys.stderr)
    return merged


def _write_metrics(args, metrics) -> None:
    path = getattr(args, "metrics_out", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(metrics.to_dict(), fh, sort_keys=True)
            fh.write("\n")


def _screen_pinned(args) -> bool:
    """True when the screen size was set explicitly (flag, env, or file)."""
    if getattr(args, "screen", None):
        return True
    if "AIRCTL_SCREEN_W" in os.environ or "AIRCTL_SCREEN_H" in os.environ:
        return True
    if getattr(args, "config", None):
        file_cfg = cfgmod.load_file(args.config)
        return "screen_w" in file_cfg or "screen_h" in file_cfg
    return False


def _cmd_run(args) -> int:
    merged = _merged_config(args)
    session_cfg = cfgmod.session_config(merged)
    backend = make_backend(session_cfg.backend)

    # Live screens come from the backend unless pinned explicitly.
    if not _screen_pinned(args):
        detected = backend.screen_size()
        if detected is not None:
            merged["screen_w"], merged["screen_h"] = detected
            session_cfg = cfgmod.session_config(merged)

    stop = {"flag": False}

    def on_sigint(signum, frame):
        stop["flag"] = True

    previous = signal.signal(signal.SIGINT, on_sigint)
    try:
        stream = open_stream(args.source)
        live = stream.kind in ("socket", "stdin")
        with open(args.out, "w", encoding="utf-8") as log_fh:
            metrics = run_session(
                stream,
                None,
                session_cfg,
                backend,
                log_fh,
                live=live,
                should_stop=lambda: stop["flag"],
            )
    finally:
        signal.signal(signal.SIGINT, previous)
    print(metrics.summary())
    _write_metrics(args, metrics)
    return EX_OK


def _cmd_record(args) -> int:
    stream = open_stream(args.source)
    count = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for frame in stream:
            fh.write(serialize_frame(frame) + "\n")
            count += 1
    print(
        f"recorded={count} dropped_malformed={stream.dropped_malformed} "
        f"dropped_out_of_order={stream.dropped_out_of_order}"
    )
    return EX_OK


def _cmd_replay(args) -> int:
    merged = _merged_config(args)
    session_cfg = cfgmod.session_config(merged)
    backend = make_backend(session_cfg.backend)
    stream = open_stream(args.frames, strict=True)
    utterances = load_utterances(args.utterances) if args.utterances else None
    with open(args.out, "w", encoding="utf-8") as log_fh:
        metrics = run_session(stream, utterances, session_cfg, backend, log_fh, live=False)
    print(metrics.summary())
    _write_metrics(args, metrics)
    return EX_OK


def _cmd_eval(args) -> int:
    merged = _merged_config(args)
    session_cfg = cfgmod.session_config(merged)
    stream = open_stream(args.frames, strict=True)
    frames = list(stream)
    labels = load_labels(args.labels)
    report = evaluate(frames, labels, session_cfg.fsm)
    print(report.render_table())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True)
            fh.write("\n")
    return EX_OK


def _cmd_parse(args) -> int:
    intent = parse_intent(args.text)
    print(json.dumps({"intent": intent.kind.value, "slots": intent.slots()}))
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="airctl", description=__doc__.split("\n")[0])
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="live session from a frame source")
    run_p.add_argument("--source", required=True, help="frame source: path, stdin, or tcp:HOST:PORT")
    run_p.add_argument("--out", default="actions.jsonl", help="action log path")
    run_p.add_argument("--metrics-out", help="write session metrics JSON here")
    _add_config_flags(run_p)
    run_p.set_defaults(func=_cmd_run)

    rec_p = subs.add_parser("record", help="save a frame source to a file")
    rec_p.add_argument("--source", required=True)
    rec_p.add_argument("--out", required=True)
    rec_p.set_defaults(func=_cmd_record)

    rep_p = subs.add_parser("replay", help="deterministic offline session")
    rep_p.add_argument("--frames", required=True)
    rep_p.add_argument("--utterances")
    rep_p.add_argument("--out", required=True, help="action log path")
    rep_p.add_argument("--metrics-out", help="write session metrics JSON here")
    _add_config_flags(rep_p)
    rep_p.set_defaults(func=_cmd_replay)

    eval_p = subs.add_parser("eval", help="score a frame file against labels")
    eval_p.add_argument("--frames", required=True)
    eval_p.add_argument("--labels", required=True)
    eval_p.add_argument("--json", help="also write the report as JSON here")
    _add_config_flags(eval_p)
    eval_p.set_defaults(func=_cmd_eval)

    parse_p = subs.add_parser("parse", help="parse one utterance to an intent")
    parse_p.add_argument("text")
    parse_p.set_defaults(func=_cmd_parse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SourceUnavailable, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_SOURCE
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_MALFORMED
    except LabelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_LABELS
    except BackendUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_BACKEND
    except cfgmod.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONFIG


if __name__ == "__main__":
    sys.exit(main())
