from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from taskguide import fixtures
from taskguide.authoring import (
    AuthoringError,
    Phase,
    PhaseError,
    begin_task,
    counting_clock,
    run_trace,
    validate_package,
)
from taskguide.guidance import announce_target
from taskguide.records import TaskPackage, TaskRequest, create_request
from taskguide.ui_model import Action, AppGraph
from trace_gen import run_random_session


@pytest.fixture
def contacts():
    return fixtures.load_app("contacts")


def test_begin_task_starts_on_entry_screen(contacts):
    session = begin_task(contacts)
    assert session.current_screen == "contacts_list"
    assert session.phase is Phase.DESCRIBE_INTERFACE


def test_description_review_and_retry(contacts):
    session = begin_task(contacts)
    with pytest.raises(AuthoringError):
        session.record_screen_description("   ")
    text = "top part where you write what you want translated"
    session.record_screen_description("first try").review_description(False)
    assert session.pending_description is None
    session.record_screen_description(text).review_description(True)
    session.demonstrate_action("fab_create", Action("click"))
    step = session.recorded_steps[0]
    assert step.description_transcript == text
    assert step.clicked_view.closest_text == "Create Contact"
    assert step.interaction.kind == "click"
    assert announce_target(step) == "Select Create Contact"
    assert session.current_screen == "account_picker"
    assert [v.closest_text for v in step.interactive_views] == [
        contacts.screen("contacts_list").closest_text(n) for n in contacts.screen("contacts_list").interactive
    ]


def _to_editor(session):
    for node in ("fab_create", "row_device"):
        session.record_screen_description("x").review_description(True)
        session.demonstrate_action(node, Action("click"))
    session.record_screen_description("form").review_description(True)


def test_edits_fold_into_the_step_and_need_prompts(contacts):
    session = begin_task(contacts)
    _to_editor(session)
    session.demonstrate_action("field_name", Action("set_text", "Bren"))
    session.demonstrate_action("field_name", Action("set_text", "Brenda"))
    session.demonstrate_action("field_phone", Action("set_text", "912"))
    assert session.phase is Phase.PERFORM_STEP
    session.demonstrate_action("btn_save", Action("click"))
    assert session.phase is Phase.ADD_INFORMATION
    step = session.recorded_steps[-1]
    assert [p.view.closest_text for p in step.edit_prompts] == ["Name", "Phone"]
    assert all(p.view.dynamic for p in step.edit_prompts)
    with pytest.raises(AuthoringError, match="2 text field"):
        session.provide_edit_prompts(["the new contact name"])
    with pytest.raises(AuthoringError):
        session.provide_edit_prompts(["a", " "])
    session.provide_edit_prompts(["the new contact name", "the contact number"])
    assert [p.prompt for p in session.recorded_steps[-1].edit_prompts] == ["the new contact name", "the contact number"]
    assert session.phase is Phase.DESCRIBE_INTERFACE


def test_capability_and_phase_errors(contacts):
    session = begin_task(contacts)
    with pytest.raises(PhaseError):
        session.demonstrate_action("fab_create", Action("click"))
    session.record_screen_description("x").review_description(True)
    with pytest.raises(AuthoringError, match="long_clickable"):
        session.demonstrate_action("fab_create", Action("long_click"))
    with pytest.raises(AuthoringError):
        session.demonstrate_action("nope", Action("click"))
    with pytest.raises(AuthoringError):
        session.demonstrate_action("fab_create", Action("set_text", "x"))
    with pytest.raises(PhaseError):
        session.finalize_task("t", "d")


def test_flag_sensitive_marks_the_snapshot(contacts):
    session = begin_task(contacts)
    session.record_screen_description("x").review_description(True)
    session.flag_sensitive("row_john").demonstrate_action("row_john", Action("click"))
    assert session.recorded_steps[0].clicked_view.sensitive
    assert not session.recorded_steps[0].clicked_view.dynamic


def test_finalize_requires_steps_title_and_description(contacts):
    session = begin_task(contacts)
    with pytest.raises(AuthoringError, match="no steps"):
        session.finalize_task("t", "d")
    session.record_screen_description("x").review_description(True)
    session.demonstrate_action("row_john", Action("click"))
    with pytest.raises(AuthoringError, match="title"):
        session.finalize_task("", "d")
    with pytest.raises(AuthoringError, match="description"):
        session.finalize_task("t", None)
    pkg = session.finalize_task("Open John", "Open a contact")
    assert pkg.task_id == "contacts:open-john"
    assert session.phase is Phase.DONE


def test_request_supplies_title_and_skips_title_phase(contacts):
    request = create_request("req-7", "contacts", "I want to save a friend's number", title="Save a friend")
    trace = fixtures.load_trace("tt1")
    pkg = run_trace(contacts, trace, request, clock=counting_clock())
    assert (pkg.title, pkg.description) == ("Save a friend", "I want to save a friend's number")
    with pytest.raises(AuthoringError):
        begin_task(contacts, create_request("r", "outlook", "something"))
    with pytest.raises(ValueError):
        TaskRequest("r", "contacts", "t", "  ")


def test_contacts_trace_builds_the_add_contact_package(contacts):
    pkg = run_trace(contacts, fixtures.load_trace("tt1"), clock=counting_clock())
    assert pkg.title == "Add new contact"
    assert len(pkg.steps) == 4
    assert announce_target(pkg.steps[2]) == (
        "There are 2 text fields to fill. Then select Save. Enter: the new contact name; the contact number"
    )
    assert [s.timestamp for s in pkg.steps] == [1000, 2000, 3000, 4000]


def test_trace_errors_name_the_command(contacts):
    with pytest.raises(AuthoringError, match="trace command 1"):
        run_trace(contacts, [{"op": "describe", "text": "x"}, {"op": "act", "node": "fab_create"}])
    with pytest.raises(AuthoringError, match="without a finish"):
        run_trace(contacts, [{"op": "describe", "text": "x"}])
    with pytest.raises(AuthoringError, match="unknown op"):
        run_trace(contacts, [{"op": "dance"}])


def test_same_trace_twice_differs_only_in_timestamps(contacts):
    trace = fixtures.load_trace("tt1")
    a = run_trace(contacts, trace, clock=counting_clock(0))
    b = run_trace(contacts, trace, clock=counting_clock(10**12, 7))
    assert a.steps != b.steps
    strip = lambda p: [{**s.to_dict(), "timestamp": 0} for s in p.steps]  # noqa: E731
    assert strip(a) == strip(b)


def test_empty_package_is_rejected():
    with pytest.raises(ValueError):
        TaskPackage("t", "a", "p", "title", "desc", ())


@pytest.mark.parametrize("task_id", fixtures.task_ids())
def test_fixture_packages_validate_cleanly(task_id):
    app, pkg = fixtures.load_task(task_id)
    report = validate_package(pkg, app)
    assert report.ok, report.findings
    expected = {"t4": {4: "healed-by-tie-break"}}.get(task_id, {})
    assert {s.index: s.status for s in report.steps if s.status != "exact"} == expected


def test_validate_reports_renamed_button_and_wrong_app():
    app, pkg = fixtures.load_task("t6")
    data = app.screens["settings"]
    row = data.root.children[1 + 1]  # set_1: Do not disturb row
    assert row.node_id == "set_1"
    from dataclasses import replace

    label = replace(row.children[0], text="Quiet hours")
    settings_screen = replace(data, root=replace(data.root, children=tuple(
        replace(c, children=(label,)) if c.node_id == "set_1" else c for c in data.root.children
    )))
    mutated = AppGraph(app.app_id, app.package_name, app.entry_screen, {**app.screens, "settings": settings_screen}, app.transitions)
    report = validate_package(pkg, mutated)
    assert [s.status for s in report.steps][:3] == ["exact", "exact", "unmatched"]
    assert not report.ok
    wrong = validate_package(pkg, fixtures.load_app("contacts"))
    assert wrong.app_mismatch and not wrong.ok


@settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.data())
def test_random_legal_traces_respect_the_authoring_loop(data):
    run_random_session(data)
