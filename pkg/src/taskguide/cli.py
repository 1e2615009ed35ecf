"""Command line entry point.

    taskguide author   --app APP --trace TRACE [--request REQ] --out PKG
    taskguide play     --app APP --package PKG --script SCRIPT [--events LOG]
    taskguide simulate --config CONFIG [--output DIR] [--format csv --format json]
    taskguide match    --screen SCREEN --snapshot SNAPSHOT
    taskguide validate --app APP --package PKG
    taskguide report   --input REPORT --format table

Exit codes: 0 success, 1 input error, 2 task not finished.

``--app`` and ``--package`` also accept ``fixture:<id>`` to use the bundled
corpus, e.g. ``--app fixture:outlook --package fixture:t6``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, TextIO

from . import fixtures
from .authoring import AuthoringError, begin_task, run_trace, validate_package
from .guidance import Guide, GuidanceError, GuidanceEvent
from .harness import ConfigError, ExperimentConfig, load_report, render_report, run_experiment
from .matching import find_target
from .records import TaskPackage, ViewSnapshot, dump_package, load_package, load_request
from .simulator import DEFAULT_BUDGET, DeviceError, NavAction, SimDevice
from .ui_model import Action, AppGraph, FormatError, InvariantError, canonical_json, load_app_graph, load_screen

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNFINISHED = 2

FIXTURE_PREFIX = "fixture:"

INPUT_ERRORS = (
    OSError,
    ValueError,
    KeyError,
    FormatError,
    InvariantError,
    AuthoringError,
    ConfigError,
    DeviceError,
    GuidanceError,
)


class InputError(Exception):
    pass


def _load_app(ref: str) -> AppGraph:
    if ref.startswith(FIXTURE_PREFIX):
        return fixtures.load_app(ref[len(FIXTURE_PREFIX) :])
    return load_app_graph(ref)


def _load_package(ref: str) -> TaskPackage:
    if ref.startswith(FIXTURE_PREFIX):
        return fixtures.load_package_for(ref[len(FIXTURE_PREFIX) :])
    return load_package(ref)


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc


# -- author ------------------------------------------------------------------

AUTHOR_HELP = """\
commands:
  screen                      list the interactive views on the current screen
  describe <text>             record the screen description
  accept | reject             review the description
  act <node> [kind] [value]   demonstrate an action (default kind: click)
  flag <node>                 mark a view as sensitive
  prompts <p1> | <p2> ...     prompts for the edited fields of the last step
  finish [<title> | <desc>]   end the demonstration
  quit"""


def _author_interactive(app: AppGraph, request, author_id: str, stdin: TextIO, out: TextIO) -> TaskPackage:
    session = begin_task(app, request, author_id=author_id)
    print(AUTHOR_HELP, file=out)
    for line in stdin:
        cmd, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        try:
            if cmd == "screen":
                tree = session.tree
                print(f"[{tree.screen_id}] {tree.title}", file=out)
                for node_id in tree.interactive:
                    print(f"  {node_id}: {tree.closest_text(node_id)!r}", file=out)
            elif cmd == "describe":
                session.record_screen_description(rest)
            elif cmd == "accept":
                session.review_description(True)
            elif cmd == "reject":
                session.review_description(False)
            elif cmd == "act":
                parts = rest.split(" ", 2)
                kind = parts[1] if len(parts) > 1 else "click"
                session.demonstrate_action(parts[0], Action(kind, parts[2] if len(parts) > 2 else None))
            elif cmd == "flag":
                session.flag_sensitive(rest)
            elif cmd == "prompts":
                session.provide_edit_prompts([p.strip() for p in rest.split("|")])
            elif cmd == "finish":
                title, _, desc = rest.partition("|")
                return session.finalize_task(title.strip() or None, desc.strip() or None)
            elif cmd == "quit":
                break
            elif cmd:
                print(f"unknown command {cmd!r}", file=out)
                continue
            print(f"phase: {session.phase.value}", file=out)
        except (AuthoringError, ValueError, KeyError) as exc:
            print(f"error: {exc}", file=out)
    raise InputError("authoring ended before the task was finished")


def cmd_author(args: argparse.Namespace) -> int:
    app = _load_app(args.app)
    request = load_request(args.request) if args.request else None
    if args.interactive:
        pkg = _author_interactive(app, request, args.author_id, sys.stdin, sys.stderr)
    else:
        trace = _read_json(args.trace)
        if not isinstance(trace, list):
            raise FormatError(args.trace, "an authoring trace is a JSON list of commands")
        pkg = run_trace(app, trace, request, author_id=args.author_id)
    dump_package(pkg, args.out)
    sys.stdout.write(canonical_json(validate_package(pkg, app).to_dict()))
    return EXIT_OK


# -- play --------------------------------------------------------------------

KEYMAP = {
    "n": NavAction("swipe_next"),
    "p": NavAction("swipe_prev"),
    "": NavAction("double_tap_activate"),
    "l": NavAction("long_press_activate"),
    "h": NavAction("activate_hint"),
}


def _render_event(event: GuidanceEvent) -> str | None:
    if event.kind == "beep":
        return "[beep]"
    if event.kind == "bop":
        return "[bop]"
    if event.kind == "hint":
        return f"Hint {event.hint}: {event.text}"
    if event.text:
        return event.text
    if event.kind in ("success_tune", "exited", "restarted"):
        return f"[{event.kind}]"
    return None


def _interactive_actions(device: SimDevice, stdin: TextIO, out: TextIO):
    print("keys: n/p swipe, enter activate, l long press, h hint, m more options, t type", file=out)
    for line in stdin:
        key = line.rstrip("\n").strip()
        if key == "m":
            print("more options: exit or restart?", file=out)
            choice = stdin.readline().strip()
            yield NavAction("activate_more_options", choice=choice)
        elif key == "t":
            print("text:", file=out)
            yield NavAction("type_text", text=stdin.readline().rstrip("\n"))
        elif key in KEYMAP:
            yield KEYMAP[key]
        else:
            print(f"unknown key {key!r}", file=out)
            continue
        if device.focus is not None:
            print(f"  focus: {device.focus} {device.tree.closest_text(device.focus)!r}", file=out)


def cmd_play(args: argparse.Namespace) -> int:
    app = _load_app(args.app)
    pkg = _load_package(args.package)
    device = SimDevice(app)
    guide = Guide(pkg, device)
    device.attach(guide)
    events = list(guide.start())
    if args.interactive:
        actions = _interactive_actions(device, sys.stdin, sys.stderr)
        show: Callable[[GuidanceEvent], None] | None = lambda e: print(_render_event(e), file=sys.stderr)  # noqa: E731
    else:
        script = _read_json(args.script)
        if not isinstance(script, list):
            raise FormatError(args.script, "a play script is a JSON list of navigation actions")
        actions = [NavAction.from_dict(a) for a in script]
        show = None
    if show:
        for e in events:
            if _render_event(e):
                show(e)
    used = 0
    for action in actions:
        if guide.done or used >= args.budget:
            break
        used += 1
        try:
            batch = device.nav_step(action)
        except (DeviceError, GuidanceError) as exc:
            if not args.interactive:
                raise
            print(f"error: {exc}", file=sys.stderr)
            continue
        events += batch
        if show:
            for e in batch:
                if _render_event(e):
                    show(e)
    log = "".join(json.dumps(e.to_dict(), sort_keys=True, ensure_ascii=False) + "\n" for e in events)
    if args.events:
        Path(args.events).write_text(log, encoding="utf-8")
    if not args.interactive:
        sys.stdout.write(log)
    return EXIT_OK if guide.finished else EXIT_UNFINISHED


# -- simulate / report -------------------------------------------------------


def cmd_simulate(args: argparse.Namespace) -> int:
    config = ExperimentConfig.load(args.config)
    overrides: dict[str, Any] = {}
    if args.output:
        overrides["output"] = args.output
    if args.format:
        overrides["formats"] = list(dict.fromkeys(args.format))
    if args.workers:
        overrides["workers"] = args.workers
    if overrides:
        config = ExperimentConfig(**{**config.__dict__, **overrides})
    report = run_experiment(config)
    sys.stdout.write(render_report(report, "table"))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    text = render_report(load_report(args.input), args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- match / validate --------------------------------------------------------


def cmd_match(args: argparse.Namespace) -> int:
    tree = load_screen(args.screen)
    data = _read_json(args.snapshot)
    if isinstance(data, dict) and "clicked_view" in data:
        data = data["clicked_view"]
    outcome = find_target(tree, ViewSnapshot.from_dict(data))
    sys.stdout.write(
        canonical_json(
            {
                "node_id": outcome.node_id,
                "candidate_count": outcome.candidate_count,
                "rank_trace": list(outcome.rank_trace),
            }
        )
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate_package(_load_package(args.package), _load_app(args.app))
    sys.stdout.write(canonical_json(report.to_dict()))
    return EXIT_OK if report.ok else EXIT_INPUT


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taskguide",
        description="Author, play and evaluate nonvisual step-by-step task guidance.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("author", help="record a task package from an authoring trace")
    p.add_argument("--app", required=True, help="app graph JSON file or fixture:<app_id>")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--trace", help="JSON list of authoring commands")
    src.add_argument("--interactive", action="store_true", help="read authoring commands from the terminal")
    p.add_argument("--request", help="task request JSON; its title and description are used")
    p.add_argument("--out", required=True, help="where to write the task package")
    p.add_argument("--author-id", default="author", help="author recorded in the package (default: author)")
    p.set_defaults(func=cmd_author)

    p = sub.add_parser("play", help="run a guided playthrough and print the event log")
    p.add_argument("--app", required=True, help="app graph JSON file or fixture:<app_id>")
    p.add_argument("--package", required=True, help="task package JSON file or fixture:<task_id>")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--script", help="JSON list of navigation actions")
    src.add_argument("--interactive", action="store_true", help="navigate from the terminal")
    p.add_argument("--events", help="also write the event log (line-delimited JSON) here")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help=f"action budget (default: {DEFAULT_BUDGET})")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("simulate", help="run a guided vs unguided experiment")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--output", help="report directory (overrides the config)")
    p.add_argument(
        "--format", action="append", choices=("table", "csv", "json"), help="report format, repeatable (overrides the config)"
    )
    p.add_argument("--workers", type=int, help="worker processes (overrides the config)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("match", help="resolve a recorded target on a screen")
    p.add_argument("--screen", required=True, help="screen tree JSON")
    p.add_argument("--snapshot", required=True, help="view snapshot JSON (or a step record)")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("validate", help="replay a package over an app graph")
    p.add_argument("--app", required=True, help="app graph JSON file or fixture:<app_id>")
    p.add_argument("--package", required=True, help="task package JSON file or fixture:<task_id>")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="render a saved JSON report")
    p.add_argument("--input", required=True, help="report.json written by simulate")
    p.add_argument("--format", default="table", choices=("table", "csv", "json"))
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "budget", 1) < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
