"""Turn an author's demonstration over an app graph into a task package.

The session walks the authoring loop: describe the screen, review the
description, perform the step, add information for edited fields, and
finally give the task a title and description.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Iterable

from .matching import find_scroll_container, find_target
from .records import EditPrompt, StepRecord, TaskPackage, TaskRequest, ViewSnapshot
from .ui_model import REQUIRED_CAPABILITY, Action, AppGraph, ScreenTree


class Phase(str, Enum):
    DESCRIBE_INTERFACE = "DescribeInterface"
    REVIEW = "Review"
    PERFORM_STEP = "PerformStep"
    ADD_INFORMATION = "AddInformation"
    TITLE_AND_DESCRIPTION = "TitleAndDescription"
    DONE = "Done"


class AuthoringError(ValueError):
    pass


class PhaseError(AuthoringError):
    """An operation was attempted outside the phase that allows it."""


def _wall_clock_ms() -> int:
    return int(time.time() * 1000)


@dataclass
class _PendingEdit:
    node_id: str
    snapshot: ViewSnapshot
    value: str


@dataclass
class AuthoringSession:
    app: AppGraph
    current_screen: str
    author_id: str = "author"
    originating_request: TaskRequest | None = None
    clock: Callable[[], int] = _wall_clock_ms
    phase: Phase = Phase.DESCRIBE_INTERFACE
    pending_description: str | None = None
    recorded_steps: list[StepRecord] = field(default_factory=list)
    history: list[Phase] = field(default_factory=list)
    _edits: list[_PendingEdit] = field(default_factory=list, repr=False)
    _scrolled: list[ViewSnapshot] = field(default_factory=list, repr=False)
    _sensitive: set[tuple[str, str]] = field(default_factory=set, repr=False)

    @property
    def tree(self) -> ScreenTree:
        return self.app.screen(self.current_screen)

    def _require(self, *phases: Phase) -> None:
        if self.phase not in phases:
            allowed = ", ".join(p.value for p in phases)
            raise PhaseError(f"not allowed in phase {self.phase.value} (needs {allowed})")

    def _enter(self, phase: Phase) -> None:
        self.phase = phase
        self.history.append(phase)

    def record_screen_description(self, transcript: str) -> AuthoringSession:
        self._require(Phase.DESCRIBE_INTERFACE)
        if not transcript or not transcript.strip():
            raise AuthoringError("the screen description is empty")
        self.pending_description = transcript
        self._enter(Phase.REVIEW)
        return self

    def review_description(self, accept: bool) -> AuthoringSession:
        self._require(Phase.REVIEW)
        if accept:
            self._enter(Phase.PERFORM_STEP)
        else:
            self.pending_description = None
            self._enter(Phase.DESCRIBE_INTERFACE)
        return self

    def flag_sensitive(self, node_id: str) -> AuthoringSession:
        """Mark a view on the current screen as holding sensitive content."""
        self._require(Phase.PERFORM_STEP)
        self.tree.node(node_id)
        self._sensitive.add((self.current_screen, node_id))
        return self

    def _snapshot(self, node_id: str, dynamic: bool = False) -> ViewSnapshot:
        sensitive = (self.current_screen, node_id) in self._sensitive
        return ViewSnapshot.capture(self.tree, node_id, sensitive=sensitive, dynamic=dynamic)

    def demonstrate_action(self, node_id: str, action: Action) -> AuthoringSession:
        self._require(Phase.PERFORM_STEP)
        tree = self.tree
        if node_id not in tree:
            raise AuthoringError(f"no node {node_id!r} on screen {tree.screen_id!r}")
        node = tree.node(node_id)
        if not node.visible:
            raise AuthoringError(f"node {node_id!r} is not visible")
        needed = REQUIRED_CAPABILITY[action.kind]
        if not node.has(needed):
            raise AuthoringError(f"{action.kind} needs a {needed} node, {node_id!r} is not")

        if action.kind == "set_text":
            for edit in self._edits:
                if edit.node_id == node_id:
                    edit.value = action.value
                    break
            else:
                self._edits.append(_PendingEdit(node_id, self._snapshot(node_id, dynamic=True), action.value))
        elif action.kind.startswith("scroll"):
            self._scrolled.append(self._snapshot(node_id))
        else:
            step = StepRecord(
                clicked_view=self._snapshot(node_id),
                interaction=action,
                interactive_views=tuple(self._snapshot(v) for v in tree.interactive),
                scrolled_views=tuple(self._scrolled),
                description_transcript=self.pending_description or "",
                activity=tree.activity,
                package_name=tree.package_name,
                screen_title=tree.title,
                timestamp=self.clock(),
                edit_prompts=tuple(EditPrompt(e.snapshot, "") for e in self._edits),
            )
            self.recorded_steps.append(step)
            self._scrolled = []
            self.pending_description = None
            had_edits = bool(self._edits)
            self._edits = []

        target = self.app.next_screen(self.current_screen, node_id, action.kind)
        if target is not None:
            self.current_screen = target
        if action.is_activation:
            self._enter(Phase.ADD_INFORMATION if had_edits else Phase.DESCRIBE_INTERFACE)
        return self

    def provide_edit_prompts(self, prompts: Iterable[str]) -> AuthoringSession:
        self._require(Phase.ADD_INFORMATION)
        prompts = list(prompts)
        step = self.recorded_steps[-1]
        if len(prompts) != len(step.edit_prompts):
            raise AuthoringError(
                f"{len(step.edit_prompts)} text field(s) were edited but {len(prompts)} prompt(s) given"
            )
        if any(not p or not p.strip() for p in prompts):
            raise AuthoringError("edit prompts must not be empty")
        filled = tuple(EditPrompt(e.view, p) for e, p in zip(step.edit_prompts, prompts))
        self.recorded_steps[-1] = replace(step, edit_prompts=filled)
        self._enter(Phase.DESCRIBE_INTERFACE)
        return self

    def end_demonstration(self) -> AuthoringSession:
        self._require(Phase.DESCRIBE_INTERFACE)
        if not self.recorded_steps:
            raise AuthoringError("no steps were demonstrated")
        if self.originating_request is None:
            self._enter(Phase.TITLE_AND_DESCRIPTION)
        return self

    def finalize_task(
        self, title: str | None = None, description: str | None = None, task_id: str | None = None
    ) -> TaskPackage:
        if self.phase is Phase.DESCRIBE_INTERFACE:
            self.end_demonstration()
        request = self.originating_request
        if request is None:
            self._require(Phase.TITLE_AND_DESCRIPTION)
            if not title or not title.strip():
                raise AuthoringError("a title is required")
            if not description or not description.strip():
                raise AuthoringError("a description is required")
        else:
            self._require(Phase.DESCRIBE_INTERFACE)
            title, description = request.title, request.description
        pkg = TaskPackage(
            task_id=task_id or f"{self.app.app_id}:{_slug(title)}",
            app_id=self.app.app_id,
            package_name=self.app.package_name,
            title=title,
            description=description,
            steps=tuple(self.recorded_steps),
            author_id=self.author_id,
        )
        self._enter(Phase.DONE)
        return pkg


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-") or "task"


def begin_task(
    app: AppGraph,
    request: TaskRequest | None = None,
    *,
    author_id: str = "author",
    clock: Callable[[], int] | None = None,
) -> AuthoringSession:
    if request is not None and request.app_id != app.app_id:
        raise AuthoringError(f"request is for app {request.app_id!r}, not {app.app_id!r}")
    session = AuthoringSession(
        app=app,
        current_screen=app.entry_screen,
        author_id=author_id,
        originating_request=request,
        clock=clock or _wall_clock_ms,
    )
    session.history.append(session.phase)
    return session


def counting_clock(start: int = 0, step: int = 1000) -> Callable[[], int]:
    """Deterministic clock for tests and fixtures."""
    state = {"now": start}

    def tick() -> int:
        state["now"] += step
        return state["now"]

    return tick


# -- scripted traces ---------------------------------------------------------


def run_trace(
    app: AppGraph,
    trace: list[dict[str, Any]],
    request: TaskRequest | None = None,
    *,
    author_id: str = "author",
    clock: Callable[[], int] | None = None,
) -> TaskPackage:
    """Replay a JSON authoring trace (see docs/formats.md) and return its package."""
    session = begin_task(app, request, author_id=author_id, clock=clock)
    for i, cmd in enumerate(trace):
        op = cmd.get("op")
        try:
            if op == "describe":
                session.record_screen_description(cmd["text"])
            elif op == "review":
                session.review_description(cmd.get("accept", True))
            elif op == "act":
                session.demonstrate_action(cmd["node"], Action(cmd.get("action", "click"), cmd.get("value")))
            elif op == "prompts":
                session.provide_edit_prompts(cmd["prompts"])
            elif op == "flag":
                session.flag_sensitive(cmd["node"])
            elif op == "finish":
                return session.finalize_task(cmd.get("title"), cmd.get("description"), cmd.get("task_id"))
            else:
                raise AuthoringError(f"unknown op {op!r}")
        except (AuthoringError, KeyError, ValueError) as exc:
            raise AuthoringError(f"trace command {i} ({op}): {exc}") from exc
    raise AuthoringError("trace ended without a finish command")


# -- package validation ------------------------------------------------------


@dataclass(frozen=True)
class StepStatus:
    index: int
    status: str  # exact | healed-by-tie-break | unmatched
    screen_id: str
    node_id: str | None
    candidate_count: int


@dataclass(frozen=True)
class ValidationReport:
    app_mismatch: bool
    steps: tuple[StepStatus, ...]
    final_reached: bool
    findings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.app_mismatch and self.final_reached and all(s.status != "unmatched" for s in self.steps)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "app_mismatch": self.app_mismatch,
            "final_reached": self.final_reached,
            "findings": list(self.findings),
            "steps": [s.__dict__ for s in self.steps],
        }


def validate_package(pkg: TaskPackage, app: AppGraph, max_scrolls: int = 10) -> ValidationReport:
    """Replay a package's steps over an app graph and report how each target matched."""
    findings = []
    mismatch = pkg.app_id != app.app_id or pkg.package_name != app.package_name
    if mismatch:
        findings.append(f"package targets app {pkg.app_id!r} ({pkg.package_name}), not {app.app_id!r}")
    screen = app.entry_screen
    statuses = []
    for i, step in enumerate(pkg.steps):
        tree = app.screen(screen)
        outcome = find_target(tree, step.clicked_view)
        scrolls = 0
        while not outcome.found and step.scrolled_views and scrolls < max_scrolls:
            moved = False
            for scrolled in step.scrolled_views:
                container = find_scroll_container(tree, scrolled)
                nxt = container and app.next_screen(screen, container, "scroll_forward")
                if nxt:
                    screen, moved = nxt, True
                    break
            if not moved:
                break
            scrolls += 1
            tree = app.screen(screen)
            outcome = find_target(tree, step.clicked_view)
        if not outcome.found:
            statuses.append(StepStatus(i, "unmatched", screen, None, 0))
            findings.append(f"step {i}: target {step.target_text!r} not found on screen {screen!r}")
            continue
        status = "exact" if outcome.candidate_count == 1 else "healed-by-tie-break"
        statuses.append(StepStatus(i, status, screen, outcome.node_id, outcome.candidate_count))
        screen = app.next_screen(screen, outcome.node_id, step.interaction.kind) or screen
    final = all(s.status != "unmatched" for s in statuses)
    return ValidationReport(mismatch, tuple(statuses), final, tuple(findings))
