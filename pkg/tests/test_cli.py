from __future__ import annotations

import json

import pytest

from taskguide import fixtures
from taskguide.cli import EXIT_INPUT, EXIT_OK, EXIT_UNFINISHED, build_parser, main
from taskguide.simulator import Agent, run_episode
from taskguide.ui_model import dump_screen


def compliant_script(task_id, tmp_path, cut=None):
    app, pkg = fixtures.load_task(task_id)
    actions = run_episode(pkg, app, Agent.compliant()).actions
    path = tmp_path / f"{task_id}.json"
    path.write_text(json.dumps([a.to_dict() for a in actions[:cut]]), encoding="utf-8")
    return path


def test_play_outlook_compliant_script_finishes(tmp_path, capsys):
    script = compliant_script("t6", tmp_path)
    events = tmp_path / "events.jsonl"
    code = main(["play", "--app", str(fixtures.app_path("outlook")), "--package", str(fixtures.package_path("t6")),
                 "--script", str(script), "--events", str(events)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out == events.read_text(encoding="utf-8")
    assert json.loads(out.splitlines()[-2])["kind"] == "success_tune"


def test_play_script_ending_mid_task_exits_2(tmp_path, capsys):
    script = compliant_script("t6", tmp_path, cut=3)
    assert main(["play", "--app", "fixture:outlook", "--package", "fixture:t6", "--script", str(script)]) == EXIT_UNFINISHED


def test_play_budget_exhaustion_exits_2(tmp_path, capsys):
    script = compliant_script("t6", tmp_path)
    args = ["play", "--app", "fixture:outlook", "--package", "fixture:t6", "--script", str(script), "--budget", "2"]
    assert main(args) == EXIT_UNFINISHED


def test_play_interactive(monkeypatch, capsys):
    import io

    keys = "h\nn\n\nn\n"
    monkeypatch.setattr("sys.stdin", io.StringIO(keys))
    code = main(["play", "--app", "fixture:outlook", "--package", "fixture:t6", "--interactive"])
    err = capsys.readouterr().err
    assert code == EXIT_UNFINISHED
    assert "Select Open navigation drawer" in err
    assert "Hint C: The target Open navigation drawer is at the top left corner" in err
    assert "[beep]" in err
    assert "Select Settings" in err


def test_author_from_trace_and_request(tmp_path, capsys):
    out = tmp_path / "pkg.json"
    code = main(["author", "--app", "fixture:contacts", "--trace", str(fixtures.trace_path("tt1")), "--out", str(out)])
    report = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK and report["ok"]
    assert json.loads(out.read_text(encoding="utf-8"))["title"] == "Add new contact"
    request = tmp_path / "req.json"
    request.write_text(json.dumps({"request_id": "r", "app_id": "contacts", "title": "Save a friend", "description": "d"}))
    assert main(["author", "--app", "fixture:contacts", "--trace", str(fixtures.trace_path("tt1")),
                 "--request", str(request), "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["title"] == "Save a friend"


def test_author_illegal_trace_exits_1(tmp_path, capsys):
    trace = tmp_path / "bad.json"
    trace.write_text(json.dumps([{"op": "describe", "text": "x"}, {"op": "review"}, {"op": "act", "node": "title"}]))
    assert main(["author", "--app", "fixture:contacts", "--trace", str(trace), "--out", str(tmp_path / "o.json")]) == EXIT_INPUT
    assert "clickable" in capsys.readouterr().err


def test_author_interactive(monkeypatch, tmp_path, capsys):
    import io

    lines = "screen\ndescribe the list\naccept\nact row_john\nfinish Open John | Look at a contact\n"
    monkeypatch.setattr("sys.stdin", io.StringIO(lines))
    out = tmp_path / "pkg.json"
    assert main(["author", "--app", "fixture:contacts", "--interactive", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["title"] == "Open John"


def test_match(tmp_path, capsys):
    app, pkg = fixtures.load_task("t4")
    screen = tmp_path / "screen.json"
    dump_screen(app.screen("main_es_phrase"), screen)
    snap = tmp_path / "snap.json"
    snap.write_text(json.dumps(pkg.steps[-1].clicked_view.to_dict()))
    assert main(["match", "--screen", str(screen), "--snapshot", str(snap)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"node_id": "listen_target", "candidate_count": 2, "rank_trace": ["size"]}


def test_validate(capsys):
    assert main(["validate", "--app", "fixture:translate", "--package", "fixture:t4"]) == EXIT_OK
    assert main(["validate", "--app", "fixture:outlook", "--package", "fixture:t4"]) == EXIT_INPUT


def test_simulate_and_report(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"task_sets": ["training"], "seed_count": 2, "agents": [{"policy": "compliant"}]}))
    out = tmp_path / "out"
    assert main(["simulate", "--config", str(config), "--output", str(out), "--format", "csv", "--format", "json"]) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["report.csv", "report.json"]
    capsys.readouterr()
    assert main(["report", "--input", str(out / "report.json"), "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == (out / "report.csv").read_text(encoding="utf-8")
    assert main(["simulate", "--config", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_usage_errors_fail_closed(capsys):
    assert main(["play", "--app", "x", "--package", "y", "--script", "z", "--turbo"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
    assert main(["play", "--app", "fixture:nope", "--package", "fixture:t6", "--script", "z"]) == EXIT_INPUT


@pytest.mark.parametrize("command", ["author", "play", "simulate", "match", "validate", "report"])
def test_help_lists_flags(command):
    sub = build_parser()._subparsers._group_actions[0].choices[command]
    text = sub.format_help()
    for action in sub._actions:
        for flag in action.option_strings:
            assert flag in text
