"""Simulated device with screen-reader navigation, scripted user agents and episodes."""

from __future__ import annotations

import json
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .guidance import HINT_TYPES, Guide, GuidanceEvent, PlayPhase
from .matching import find_target
from .records import StepRecord, TaskPackage
from .ui_model import Action, AppGraph, ScreenTree, normalize_text

DEFAULT_BUDGET = 200

NAV_KINDS = (
    "swipe_next",
    "swipe_prev",
    "touch_explore",
    "double_tap_activate",
    "long_press_activate",
    "type_text",
    "scroll_forward",
    "scroll_backward",
    "activate_hint",
    "activate_more_options",
)


class DeviceError(ValueError):
    pass


@dataclass(frozen=True)
class NavAction:
    kind: str
    node: str | None = None
    text: str | None = None
    choice: str | None = None

    def __post_init__(self):
        if self.kind not in NAV_KINDS:
            raise ValueError(f"unknown navigation action {self.kind!r}")
        if self.kind == "touch_explore" and self.node is None:
            raise ValueError("touch_explore needs a node")
        if self.kind == "type_text" and self.text is None:
            raise ValueError("type_text needs text")
        if self.kind == "activate_more_options" and self.choice not in ("exit", "restart"):
            raise ValueError("more options choice must be exit or restart")

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> NavAction:
        return cls(d["kind"], d.get("node"), d.get("text"), d.get("choice"))


@dataclass(frozen=True)
class Activation:
    """An element activation as observed on the device."""

    screen_id: str
    node_id: str
    kind: str


class SimDevice:
    """A phone running one app graph, navigated like a screen reader."""

    def __init__(self, app: AppGraph):
        self.app = app
        self.current_screen = app.entry_screen
        self.focus: str | None = None
        self.edit_values: dict[tuple[str, str], str] = {}
        self.guide: Guide | None = None
        self.activations: list[tuple[ScreenTree, str, str]] = []

    @property
    def tree(self) -> ScreenTree:
        return self.app.screen(self.current_screen)

    def reset(self) -> None:
        self.current_screen = self.app.entry_screen
        self.focus = None
        self.edit_values = {}

    def attach(self, guide: Guide) -> None:
        self.guide = guide

    def _move_to(self, screen_id: str | None) -> None:
        if screen_id is not None and screen_id != self.current_screen:
            self.current_screen = screen_id
            self.focus = None

    def _focus(self, node_id: str) -> list[GuidanceEvent]:
        self.focus = node_id
        return self.guide.on_focus(node_id) if self.guide else []

    def _activate(self, kind: str) -> list[GuidanceEvent]:
        if self.focus is None:
            raise DeviceError("activation needs a focused element")
        before = self.tree
        node = before.node(self.focus)
        if not node.has("clickable" if kind == "click" else "long_clickable"):
            return []
        node_id = self.focus
        self.activations.append((before, node_id, kind))
        self._move_to(self.app.next_screen(self.current_screen, node_id, kind))
        if self.guide:
            return self.guide.on_select(node_id, Action(kind), before)
        return []

    def nav_step(self, action: NavAction) -> list[GuidanceEvent]:
        guide = self.guide
        if guide and guide.state.phase is PlayPhase.HINT_PLAYING and action.kind == "double_tap_activate":
            return guide.stop_hint()
        tree = self.tree
        order = tree.focus_order
        kind = action.kind
        if kind in ("swipe_next", "swipe_prev"):
            if not order:
                return guide.finish_hint() if guide else []
            if self.focus not in order:
                index = 0 if kind == "swipe_next" else len(order) - 1
            else:
                step = 1 if kind == "swipe_next" else -1
                index = (order.index(self.focus) + step) % len(order)
            return self._focus(order[index])
        if kind == "touch_explore":
            if action.node not in order:
                raise DeviceError(f"{action.node!r} is not a focusable element on {tree.screen_id!r}")
            return self._focus(action.node)
        if kind == "double_tap_activate":
            return self._activate("click")
        if kind == "long_press_activate":
            return self._activate("long_click")
        if kind == "type_text":
            if self.focus is None or not tree.node(self.focus).has("editable"):
                raise DeviceError("typing needs a focused editable element")
            self.edit_values[(self.current_screen, self.focus)] = action.text
            self._move_to(self.app.next_screen(self.current_screen, self.focus, "set_text"))
            return guide.finish_hint() if guide else []
        if kind in ("scroll_forward", "scroll_backward"):
            if self.focus is None or not tree.node(self.focus).has("scrollable"):
                raise DeviceError("scrolling needs a focused scrollable element")
            self._move_to(self.app.next_screen(self.current_screen, self.focus, kind))
            return guide.finish_hint() if guide else []
        if guide is None:
            raise DeviceError(f"{kind} needs an active guide")
        if kind == "activate_hint":
            return guide.next_hint()
        return guide.more_options(action.choice)

    def legal_actions(self, guided: bool) -> list[NavAction]:
        tree = self.tree
        actions = [NavAction("swipe_next"), NavAction("swipe_prev")]
        actions += [NavAction("touch_explore", node=n) for n in tree.focus_order]
        if self.focus is not None:
            actions += [NavAction("double_tap_activate"), NavAction("long_press_activate")]
            node = tree.node(self.focus)
            if node.has("editable"):
                actions.append(NavAction("type_text", text="text"))
            if node.has("scrollable"):
                actions += [NavAction("scroll_forward"), NavAction("scroll_backward")]
        if guided:
            actions.append(NavAction("activate_hint"))
        return actions


def path_completed(activations: Iterable[tuple[ScreenTree, str, str]], steps: Iterable[StepRecord]) -> bool:
    """True when every step's target was activated somewhere in the trace, in any order."""
    activations = list(activations)
    for step in steps:
        for tree, node_id, kind in activations:
            if kind == step.interaction.kind and find_target(tree, step.clicked_view).node_id == node_id:
                break
        else:
            return False
    return True


# -- agents ------------------------------------------------------------------

_ANNOUNCE = re.compile(r"^(Select|Long press) (.*)$")
_ANNOUNCE_EDIT = re.compile(
    r"^There (?:is|are) (\d+) text fields? to fill\. Then (select|long press) (.*?)\. Enter: .*$"
)
_LIST_HINT = re.compile(r"^(?:Navigate in the list that has (.*)|Find (.*) and navigate the list by swiping.*)$")


@dataclass(frozen=True)
class Observation:
    events: tuple[GuidanceEvent, ...]
    tree: ScreenTree
    focus: str | None
    guided: bool
    legal: tuple[NavAction, ...]


@dataclass
class Agent:
    """A simulated user.

    ``policy`` is one of ``compliant``, ``fallible``, ``random_walk`` or
    ``hint_seeker``. Without guidance every policy explores at random.
    """

    policy: str = "compliant"
    seed: int = 0
    error_rate: float = 0.0
    threshold: int = 5
    name: str | None = None
    rng: random.Random = field(init=False, repr=False)
    goal: str | None = field(default=None, init=False)
    long_press: bool = field(default=False, init=False)
    queue: list[NavAction] = field(default_factory=list, init=False)
    tried: set[tuple[str, str]] = field(default_factory=set, init=False)
    beeped: str | None = field(default=None, init=False)
    will_err: bool = field(default=False, init=False)
    idle_hints: int = field(default=0, init=False)
    swipes: int = field(default=0, init=False)

    def __post_init__(self):
        if self.policy not in ("compliant", "fallible", "random_walk", "hint_seeker"):
            raise ValueError(f"unknown agent policy {self.policy!r}")
        self.rng = random.Random(self.seed)
        if self.name is None:
            self.name = self.policy

    @classmethod
    def compliant(cls, seed: int = 0) -> Agent:
        return cls("compliant", seed)

    @classmethod
    def fallible(cls, error_rate: float, seed: int = 0) -> Agent:
        return cls("fallible", seed, error_rate=error_rate)

    @classmethod
    def random_walk(cls, seed: int = 0) -> Agent:
        return cls("random_walk", seed)

    @classmethod
    def hint_seeker(cls, threshold: int = 5, seed: int = 0) -> Agent:
        return cls("hint_seeker", seed, threshold=threshold)

    def act(self, obs: Observation) -> NavAction:
        if self.policy == "random_walk" or not obs.guided:
            return self.rng.choice(obs.legal)
        self._listen(obs)
        if self.queue:
            return self.queue.pop(0)
        return self._decide(obs)

    # what the user takes away from each cue
    def _listen(self, obs: Observation) -> None:
        for event in obs.events:
            if event.kind == "announcement":
                self._new_goal(event.text, obs.tree)
            elif event.kind == "beep":
                self.beeped = obs.focus
            elif event.kind == "bop":
                self.queue.clear()
                self.tried.clear()
                self.beeped = None
            elif event.kind == "hint":
                self._hear_hint(event, obs.tree)

    def _new_goal(self, text: str, tree: ScreenTree) -> None:
        self.queue.clear()
        self.tried.clear()
        self.beeped = None
        self.idle_hints = 0
        self.swipes = 0
        m = _ANNOUNCE_EDIT.match(text)
        if m:
            count, verb, self.goal = int(m.group(1)), m.group(2), m.group(3)
            fields = [n for n in tree.focus_order if tree.node(n).has("editable")]
            for i, node in enumerate(fields[:count]):
                self.queue += [NavAction("touch_explore", node=node), NavAction("type_text", text=f"value {i + 1}")]
        else:
            m = _ANNOUNCE.match(text)
            verb, self.goal = (m.group(1), m.group(2)) if m else ("Select", text)
        self.long_press = verb.lower() == "long press"
        self.will_err = self.policy == "fallible" and self.rng.random() < self.error_rate

    def _hear_hint(self, event: GuidanceEvent, tree: ScreenTree) -> None:
        self.idle_hints += 1
        if event.hint in ("D", "E"):
            m = _LIST_HINT.match(event.text)
            caption = normalize_text(m.group(1) or m.group(2)) if m else ""
            for n in tree.preorder:
                if n.visible and n.has("scrollable") and normalize_text(tree.closest_text(n.node_id)) == caption:
                    self.queue += [NavAction("touch_explore", node=n.node_id), NavAction("scroll_forward")]
                    self.idle_hints = 0
                    return
        elif event.hint == "C" and self.policy == "hint_seeker":
            for node in self._candidates(tree):
                if (tree.screen_id, node) not in self.tried:
                    self.queue.append(NavAction("touch_explore", node=node))
                    self.swipes = 0
                    return
        if event.hint in ("F", "I") or self.idle_hints > len(HINT_TYPES):
            self.queue = [NavAction("activate_more_options", choice="restart")]

    def _candidates(self, tree: ScreenTree) -> list[str]:
        wanted = normalize_text(self.goal)
        return [n for n in tree.interactive if normalize_text(tree.closest_text(n)) == wanted]

    def _activate(self) -> NavAction:
        self.beeped = None
        self.idle_hints = 0
        return NavAction("long_press_activate" if self.long_press else "double_tap_activate")

    def _decide(self, obs: Observation) -> NavAction:
        tree = obs.tree
        if self.beeped is not None and self.beeped == obs.focus:
            if self.will_err:
                self.will_err = False
                wrong = [n for n in tree.interactive if n != obs.focus and n in tree.focus_order]
                if wrong:
                    self.beeped = None
                    self.queue.append(NavAction("double_tap_activate"))
                    return NavAction("touch_explore", node=self.rng.choice(wrong))
            return self._activate()
        if self.policy == "hint_seeker":
            if self.swipes > self.threshold:
                self.swipes = 0
                return NavAction("activate_hint")
            self.swipes += 1
            if obs.focus is not None:
                self.tried.add((tree.screen_id, obs.focus))
            return NavAction("swipe_next")
        for node in self._candidates(tree):
            if (tree.screen_id, node) not in self.tried:
                self.tried.add((tree.screen_id, node))
                return NavAction("touch_explore", node=node)
        return NavAction("activate_hint")


def agent_policy_step(agent: Agent, observation: Observation) -> NavAction:
    return agent.act(observation)


def make_agent(entry: dict[str, Any], seed: int) -> Agent:
    """Build an agent from a config entry such as ``{"policy": "fallible", "error_rate": 0.2}``."""
    params = {k: v for k, v in entry.items() if k in ("error_rate", "threshold", "name")}
    return Agent(entry["policy"], seed, **params)


# -- episodes ----------------------------------------------------------------


@dataclass
class EpisodeResult:
    success: bool
    reason: str
    actions_used: int
    hints_by_type: dict[str, int]
    deviations: int
    recoveries: int
    events: list[GuidanceEvent]
    actions: list[NavAction]
    activations: list[Activation]

    @property
    def hints_consumed(self) -> int:
        return sum(self.hints_by_type.values())

    def summary(self) -> dict[str, Any]:
        return {
            "success": self.success,
            "reason": self.reason,
            "actions_used": self.actions_used,
            "hints_consumed": self.hints_consumed,
            "hints_by_type": self.hints_by_type,
            "deviations": self.deviations,
            "recoveries": self.recoveries,
        }

    def trace_lines(self) -> list[str]:
        """Line-delimited JSON: a summary record, then actions, activations and events."""
        lines = [json.dumps({"record": "summary", **self.summary()}, sort_keys=True)]
        lines += [json.dumps({"record": "action", **a.to_dict()}, sort_keys=True) for a in self.actions]
        lines += [json.dumps({"record": "activation", **a.__dict__}, sort_keys=True) for a in self.activations]
        lines += [json.dumps({"record": "event", **e.to_dict()}, sort_keys=True) for e in self.events]
        return lines

    def write_trace(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.trace_lines()) + "\n", encoding="utf-8")


def run_episode(
    package: TaskPackage | None,
    app: AppGraph,
    agent: Agent,
    budget: int = DEFAULT_BUDGET,
    *,
    canonical: TaskPackage | None = None,
) -> EpisodeResult:
    """Run one agent against the app, guided by ``package`` or unguided.

    Unguided runs need ``canonical`` steps; they succeed when every step's
    target has been activated, in any order.
    """
    reference = package or canonical
    if reference is None:
        raise ValueError("an unguided episode needs the canonical task steps")
    device = SimDevice(app)
    guide = None
    events: list[GuidanceEvent] = []
    if package is not None:
        guide = Guide(package, device)
        device.attach(guide)
        events += guide.start()
    actions: list[NavAction] = []
    fresh = list(events)
    reason = "budget_exhausted"
    while len(actions) < budget:
        obs = Observation(
            tuple(fresh), device.tree, device.focus, guide is not None, tuple(device.legal_actions(guide is not None))
        )
        action = agent.act(obs)
        actions.append(action)
        fresh = device.nav_step(action)
        events += fresh
        if guide is not None:
            if guide.finished:
                reason = "finished"
                break
            if guide.state.phase is PlayPhase.EXITED:
                reason = "exited"
                break
        elif action.kind in ("double_tap_activate", "long_press_activate") and path_completed(
            device.activations, reference.steps
        ):
            reason = "path_completed"
            break
    success = reason in ("finished", "path_completed")
    hints = Counter(e.hint for e in events if e.kind == "hint")
    return EpisodeResult(
        success=success,
        reason=reason,
        actions_used=len(actions),
        hints_by_type={h: hints.get(h, 0) for h in HINT_TYPES},
        deviations=sum(1 for e in events if e.kind == "bop"),
        recoveries=sum(1 for e in events if e.kind == "recovery"),
        events=events,
        actions=actions,
        activations=[Activation(t.screen_id, n, k) for t, n, k in device.activations],
    )
