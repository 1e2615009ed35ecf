"""Step-by-step nonvisual guidance over a task package.

A :class:`Guide` is driven one device event at a time and answers with an
ordered batch of :class:`GuidanceEvent`. Speech is modelled as text events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol

from .matching import (
    find_previous_target,
    find_scroll_container,
    find_target,
    node_sector,
)
from .records import StepRecord, TaskPackage
from .ui_model import Action, AppGraph, ScreenTree

HINT_TYPES = "ABCDEFGHI"

LONG_PRESS_INSTRUCTIONS = (
    "To long press with the screen reader, focus the target, then double tap "
    "and keep your finger on the screen until you feel a vibration"
)
NOT_FOUND_TEXT = "The target is not on this screen. Try to look elsewhere"
GENERIC_RECOVER_TEXT = (
    "You have left the task path. You can resume the task from any previous step, "
    "or restart it from More Options"
)
SUCCESS_TEXT = "Task completed successfully"


class PlayPhase(str, Enum):
    ANNOUNCING = "Announcing"
    FREE_EXPLORATION = "FreeExploration"
    HINT_PLAYING = "HintPlaying"
    FINISHED = "Finished"
    EXITED = "Exited"


class GuidanceError(RuntimeError):
    pass


@dataclass(frozen=True)
class GuidanceEvent:
    """One cue or utterance. Unused fields stay None."""

    seq: int
    kind: str
    text: str | None = None
    hint: str | None = None
    step: int | None = None
    overlay: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> GuidanceEvent:
        return cls(**d)


class Device(Protocol):
    app: AppGraph

    @property
    def tree(self) -> ScreenTree: ...

    def reset(self) -> None: ...


def _verb(step: StepRecord) -> str:
    return "Long press" if step.interaction.kind == "long_click" else "Select"


def _target_name(step: StepRecord) -> str:
    text = step.target_text.strip()
    if text:
        return text
    return "the unlabeled " + step.clicked_view.class_name.rsplit(".", 1)[-1]


def announce_target(step: StepRecord, tree: ScreenTree | None = None) -> str:
    """What the user hears before exploring for a step's target."""
    verb = _verb(step)
    name = _target_name(step)
    prompts = [p.prompt for p in step.edit_prompts]
    if not prompts:
        return f"{verb} {name}"
    count = len(prompts)
    fields = "There is 1 text field" if count == 1 else f"There are {count} text fields"
    return f"{fields} to fill. Then {verb.lower()} {name}. Enter: {'; '.join(prompts)}"


@dataclass
class PlaythroughState:
    package: TaskPackage
    step_index: int = 0
    phase: PlayPhase = PlayPhase.ANNOUNCING
    deviated: bool = False
    hint_type: int = 0  # index into HINT_TYPES of the next type to probe
    editbox_index: int = 0
    overlay: str = "none"
    playing_hint: str | None = None
    event_log: list[GuidanceEvent] = field(default_factory=list)

    @property
    def step(self) -> StepRecord:
        return self.package.steps[self.step_index]

    @property
    def hint_cursor(self) -> tuple[str, int]:
        return HINT_TYPES[self.hint_type], self.editbox_index


class Guide:
    def __init__(self, package: TaskPackage, device: Device):
        if package.app_id != device.app.app_id or package.package_name != device.app.package_name:
            raise GuidanceError(
                f"package {package.task_id!r} is for app {package.app_id!r}, device runs {device.app.app_id!r}"
            )
        self.device = device
        self.state = PlaythroughState(package)

    # -- event plumbing ------------------------------------------------------

    def _emit(self, out: list[GuidanceEvent], kind: str, **fields) -> None:
        event = GuidanceEvent(len(self.state.event_log), kind, **fields)
        self.state.event_log.append(event)
        out.append(event)

    def _show(self, out: list[GuidanceEvent], overlay: str) -> None:
        self.state.overlay = overlay
        self._emit(out, "overlay_shown", overlay=overlay)

    def _to_free_exploration(self, out: list[GuidanceEvent]) -> None:
        self._emit(out, "overlay_removed")
        self.state.phase = PlayPhase.FREE_EXPLORATION
        self._show(out, "hint_bar")

    def _announce_current(self, out: list[GuidanceEvent]) -> None:
        st = self.state
        st.phase = PlayPhase.ANNOUNCING
        st.hint_type = 0
        st.editbox_index = 0
        self._show(out, "blocking")
        self._emit(out, "announcement", text=announce_target(st.step, self.device.tree), step=st.step_index)
        self._to_free_exploration(out)

    def _settle_hint(self, out: list[GuidanceEvent]) -> None:
        # a long hint still playing finishes before the next interaction is handled
        if self.state.phase is PlayPhase.HINT_PLAYING:
            self.state.playing_hint = None
            self._to_free_exploration(out)

    def _require_exploring(self) -> None:
        if self.state.phase is not PlayPhase.FREE_EXPLORATION:
            raise GuidanceError(f"not allowed in phase {self.state.phase.value}")

    # -- operations ----------------------------------------------------------

    def start(self) -> list[GuidanceEvent]:
        out: list[GuidanceEvent] = []
        self.device.reset()
        self.state.step_index = 0
        self._announce_current(out)
        return out

    def current_match(self, tree: ScreenTree | None = None):
        return find_target(tree or self.device.tree, self.state.step.clicked_view)

    def on_focus(self, node_id: str) -> list[GuidanceEvent]:
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        self._require_exploring()
        if self.current_match().node_id == node_id:
            self._emit(out, "beep")
        return out

    def on_select(self, node_id: str, action: Action, before: ScreenTree) -> list[GuidanceEvent]:
        """Handle an activation. ``before`` is the screen it happened on; the
        device has already applied the action when this is called."""
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        self._require_exploring()
        st = self.state
        step = st.step
        if find_target(before, step.clicked_view).node_id == node_id and action.kind == step.interaction.kind:
            st.deviated = False
            st.step_index += 1
            if st.step_index == len(st.package.steps):
                st.phase = PlayPhase.FINISHED
                self._emit(out, "success_message", text=SUCCESS_TEXT)
                self._emit(out, "success_tune")
                st.overlay = "none"
                self._emit(out, "overlay_removed")
            else:
                self._announce_current(out)
            return out

        self._emit(out, "bop")
        st.deviated = True
        if st.step_index == 0:
            return out
        tree = self.device.tree
        hit = find_previous_target(tree, st.package.steps, st.step_index)
        if hit is not None:
            index, found = hit
            self._emit(out, "recovery", step=index, text=self._resume_text(index, found, tree))
            st.step_index = index
            st.deviated = False
            self._announce_current(out)
        return out

    def _resume_text(self, index: int, node_id: str, tree: ScreenTree) -> str:
        name = _target_name(self.state.package.steps[index])
        return f"You can resume the task from the step {name} that is currently at the {node_sector(tree, node_id)}"

    # -- hints ---------------------------------------------------------------

    def _scroll_caption(self, tree: ScreenTree) -> str | None:
        for scrolled in self.state.step.scrolled_views:
            if find_scroll_container(tree, scrolled) is not None:
                return scrolled.closest_text
        return None

    def hint_text(self, hint: str, tree: ScreenTree) -> str | None:
        """Text for a hint type, or None when that type is unavailable right now."""
        st = self.state
        step = st.step
        match = find_target(tree, step.clicked_view)
        if hint == "A":
            if st.editbox_index >= len(step.edit_prompts):
                return None
            lead = "First" if st.editbox_index == 0 else "Next"
            return f"{lead} write {step.edit_prompts[st.editbox_index].prompt}"
        if hint == "B":
            return LONG_PRESS_INSTRUCTIONS if step.interaction.kind == "long_click" else None
        if hint == "C":
            if not match.found:
                return None
            return f"The target {_target_name(step)} is at the {node_sector(tree, match.node_id)}"
        if hint in "DE":
            if st.deviated or match.found:
                return None
            caption = self._scroll_caption(tree)
            if caption is None:
                return None
            if hint == "D":
                return f"Navigate in the list that has {caption}"
            return f"Find {caption} and navigate the list by swiping from left to right until you find the target"
        if hint == "F":
            if match.found or step.scrolled_views or not st.deviated:
                return None
            return NOT_FOUND_TEXT
        if hint == "G":
            return step.description_transcript or None
        if hint == "H":
            if st.deviated and st.step_index > 0:
                hit = find_previous_target(tree, st.package.steps, st.step_index)
                if hit is not None:
                    return announce_target(st.package.steps[hit[0]], tree)
            return announce_target(step, tree)
        if hint == "I":
            if not st.deviated:
                return None
            if st.step_index > 0:
                hit = find_previous_target(tree, st.package.steps, st.step_index)
                if hit is not None:
                    return self._resume_text(hit[0], hit[1], tree)
            return GENERIC_RECOVER_TEXT
        raise ValueError(f"unknown hint type {hint!r}")

    def next_hint(self) -> list[GuidanceEvent]:
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        self._require_exploring()
        st = self.state
        tree = self.device.tree
        for probe in range(len(HINT_TYPES)):
            index = (st.hint_type + probe) % len(HINT_TYPES)
            hint = HINT_TYPES[index]
            text = self.hint_text(hint, tree)
            if text is None:
                continue
            if hint == "A":
                st.editbox_index += 1
                if st.editbox_index < len(st.step.edit_prompts):
                    st.hint_type = index
                else:
                    st.editbox_index = 0
                    st.hint_type = index + 1
            else:
                st.hint_type = (index + 1) % len(HINT_TYPES)
            self._show(out, "blocking")
            self._emit(out, "hint", hint=hint, text=text, step=st.step_index)
            if hint == "G":
                # layout descriptions can be long; they keep the overlay until
                # finished or stopped with a double tap
                st.phase = PlayPhase.HINT_PLAYING
                st.playing_hint = hint
            else:
                self._to_free_exploration(out)
            return out
        raise AssertionError("hint G or H is always available")

    def stop_hint(self) -> list[GuidanceEvent]:
        """Double tap on the blocking overlay while a layout description plays."""
        if self.state.phase is not PlayPhase.HINT_PLAYING:
            raise GuidanceError("no hint is playing")
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        return out

    def finish_hint(self) -> list[GuidanceEvent]:
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        return out

    def more_options(self, choice: str) -> list[GuidanceEvent]:
        out: list[GuidanceEvent] = []
        self._settle_hint(out)
        self._require_exploring()
        st = self.state
        if choice == "exit":
            st.phase = PlayPhase.EXITED
            st.overlay = "none"
            self._emit(out, "overlay_removed")
            self._emit(out, "exited")
        elif choice == "restart":
            self._emit(out, "restarted")
            st.deviated = False
            out.extend(self.start())
        else:
            raise ValueError(f"unknown choice {choice!r}")
        return out

    @property
    def finished(self) -> bool:
        return self.state.phase is PlayPhase.FINISHED

    @property
    def done(self) -> bool:
        return self.state.phase in (PlayPhase.FINISHED, PlayPhase.EXITED)


def start_playthrough(package: TaskPackage, device: Device) -> Guide:
    guide = Guide(package, device)
    guide.start()
    return guide
