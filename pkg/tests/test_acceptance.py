"""One check per acceptance criterion.

Each test records a PASS/FAIL line (shown in the pytest terminal summary)
before asserting, so a failing criterion is still reported on its own line.
"""

from __future__ import annotations

import json
import random
import time

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import PRIORITY, _pixel_thirds, oracle_find_target, random_target, random_tree
from taskguide import fixtures
from taskguide.cli import main as cli_main
from taskguide.harness import ExperimentConfig, run_experiment
from taskguide.matching import find_target, sector_label
from taskguide.records import TaskPackage
from taskguide.simulator import Agent, NavAction, run_episode
from taskguide.ui_model import Bounds, app_graph_from_dict, app_graph_to_dict, canonical_json
from trace_gen import run_random_session


def record(log, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    log.append(line)
    print(line)
    assert ok, line


# 1 -------------------------------------------------------------------------


def test_criterion_1_matcher_oracle_equivalence(acceptance_log):
    cases = []
    for seed in range(1000):
        rng = random.Random(seed)
        tree = random_tree(rng)
        cases.append((tree, random_target(rng, tree)))
    start = time.perf_counter()
    outcomes = [find_target(tree, target) for tree, target in cases]
    elapsed = time.perf_counter() - start
    agree = sum((o.node_id, o.candidate_count) == oracle_find_target(t, s) for o, (t, s) in zip(outcomes, cases))
    planted = sum(o.candidate_count > 1 for o in outcomes)
    ok = agree == 1000 and elapsed < 5.0
    record(acceptance_log, 1, ok, f"{agree}/1000 trees agree with the oracle ({planted} with duplicates), {elapsed:.2f}s < 5s")


# 2 -------------------------------------------------------------------------


def test_criterion_2_sector_labels(acceptance_log):
    w, h = 1080, 1920
    full_top = sector_label(Bounds(0, 0, w, 200), w, h)
    # every rectangle whose corners sit on a 50x50 grid of the screen
    xs = [i * w // 50 for i in range(51)]
    ys = [j * h // 50 for j in range(51)]
    col_spans = {(a, b): _pixel_thirds(a, b, w) for i, a in enumerate(xs) for b in xs[i + 1 :]}
    row_spans = {(a, b): _pixel_thirds(a, b, h) for i, a in enumerate(ys) for b in ys[i + 1 :]}
    checked = mismatches = 0
    for (top, bottom), rows in row_spans.items():
        for (left, right), cols in col_spans.items():
            expected = next(label for (r, c), label in PRIORITY if r in rows and c in cols)
            checked += 1
            mismatches += sector_label(Bounds(left, top, right, bottom), w, h) != expected
    ok = full_top == "top left corner" and mismatches == 0
    record(acceptance_log, 2, ok, f"full top edge -> {full_top!r}; {checked - mismatches}/{checked} grid rectangles agree")


# 3 -------------------------------------------------------------------------


def _select(device, node):
    device.nav_step(NavAction("touch_explore", node=node))
    return device.nav_step(NavAction("double_tap_activate"))


def _hints(guide, n):
    return "".join(e.hint for _ in range(n) for e in guide.next_hint() if e.kind == "hint")


def test_criterion_3_hint_cycles(acceptance_log, guided):
    _, plain, _ = guided("tt1")
    first = _hints(plain, 7)

    device, edits, _ = guided("tt1")
    _select(device, "fab_create")
    _select(device, "row_device")
    second = _hints(edits, 8)

    device, lost, _ = guided("t1")
    _select(device, "nav_library")
    _select(device, "recent_cats")
    third = _hints(lost, 5)

    ok = (first, second, third) == ("CGHCGHC", "AACGHAAC", "FGHIF")
    record(acceptance_log, 3, ok, f"plain {first}, two edits {second}, deviated off-screen {third}")


# 4 -------------------------------------------------------------------------


def test_criterion_4_recovery_scenario(acceptance_log, guided):
    device, guide, _ = guided("t1")
    _select(device, "nav_library")
    _select(device, "row_history")
    wrong = _select(device, "nav_up")
    for node in ("row_history", "video_olive", "btn_share", "share_facebook"):
        _select(device, node)
    kinds = [e.kind for e in wrong]
    recovery = wrong[1] if len(wrong) > 1 else None
    expected = "You can resume the task from the step History that is currently at the bottom left corner"
    ok = (
        kinds[:2] == ["bop", "recovery"]
        and recovery.text == expected
        and guide.finished
        and guide.state.event_log[-2].kind == "success_tune"
    )
    record(acceptance_log, 4, ok, f"{kinds[:2]} {recovery.text if recovery else None!r}, finished={guide.finished}")


# 5 -------------------------------------------------------------------------


def test_criterion_5_compliant_end_to_end(acceptance_log, tmp_path, capsys):
    start = time.perf_counter()
    results = {}
    for task_id in fixtures.task_ids():
        app, pkg = fixtures.load_task(task_id)
        res = run_episode(pkg, app, Agent.compliant())
        script = tmp_path / f"{task_id}.json"
        script.write_text(json.dumps([a.to_dict() for a in res.actions]), encoding="utf-8")
        code = cli_main(
            [
                "play",
                "--app",
                str(fixtures.app_path(fixtures.task_info(task_id).app_id)),
                "--package",
                str(fixtures.package_path(task_id)),
                "--script",
                str(script),
            ]
        )
        results[task_id] = (res.success, res.deviations, code)
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    rate = sum(s for s, _, _ in results.values()) / len(results)
    deviations = sum(d for _, d, _ in results.values())
    codes = sorted({c for _, _, c in results.values()})
    ok = rate == 1.0 and deviations == 0 and codes == [0] and elapsed < 30
    record(acceptance_log, 5, ok, f"8 tasks, success rate {rate}, deviations {deviations}, exit codes {codes}, {elapsed:.1f}s < 30s")


# 6 -------------------------------------------------------------------------


def test_criterion_6_guided_beats_unguided(acceptance_log):
    agents = [
        {"name": "fallible-0.2", "policy": "fallible", "error_rate": 0.2},
        {"name": "random_walk", "policy": "random_walk"},
    ]
    report = run_experiment(ExperimentConfig(task_sets=["all"], agents=agents, seed_count=100, budget=200))
    pairs = {
        t: (report.row(t, "guided", "fallible-0.2").success_rate, report.row(t, "unguided", "random_walk").success_rate)
        for t in fixtures.task_ids()
    }
    ok = all(g > u for g, u in pairs.values())
    detail = ", ".join(f"{t} {g:.2f}>{u:.2f}" for t, (g, u) in pairs.items())
    record(acceptance_log, 6, ok, f"guided fallible(0.2) vs unguided random walk: {detail}")


# 7 -------------------------------------------------------------------------


def test_criterion_7_determinism_and_round_trip(acceptance_log, tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps({"task_sets": ["all"], "seed_count": 10, "formats": ["csv", "json", "table"]}), encoding="utf-8"
    )
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run
        assert cli_main(["simulate", "--config", str(config), "--output", str(out)]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    capsys.readouterr()
    reports_equal = outputs[0] == outputs[1] and len(outputs[0]) == 3

    corpus_ok = True
    for task_id in fixtures.task_ids():
        text = fixtures.package_path(task_id).read_text(encoding="utf-8")
        corpus_ok &= TaskPackage.from_dict(json.loads(text)).dumps() == text
    for app_id in fixtures.app_ids():
        text = fixtures.app_path(app_id).read_text(encoding="utf-8")
        corpus_ok &= canonical_json(app_graph_to_dict(app_graph_from_dict(json.loads(text)))) == text
    ok = reports_equal and corpus_ok
    record(
        acceptance_log,
        7,
        ok,
        f"two simulate runs byte-identical={reports_equal}; 8 packages + 7 app graphs round-trip byte-identical={corpus_ok}",
    )


# 8 -------------------------------------------------------------------------


def test_criterion_8_authoring_state_machine(acceptance_log):
    totals = {"examples": 0, "steps": 0, "illegal_rejected": 0, "count_mismatch_rejected": 0, "capability_rejected": 0}
    failure = []

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow], database=None, derandomize=True)
    @given(st.data())
    def check(data):
        stats = run_random_session(data)
        totals["examples"] += 1
        for key, value in stats.items():
            totals[key] += value

    try:
        check()
    except AssertionError as exc:
        failure.append(str(exc).splitlines()[0])
    ok = not failure and totals["illegal_rejected"] > 0 and totals["count_mismatch_rejected"] > 0
    detail = (
        f"{totals['examples']} random traces, {totals['steps']} steps = activations, "
        f"{totals['illegal_rejected']} illegal commands rejected, "
        f"{totals['count_mismatch_rejected']} prompt-count mismatches rejected"
    )
    record(acceptance_log, 8, ok, detail + (f"; {failure[0]}" if failure else ""))
