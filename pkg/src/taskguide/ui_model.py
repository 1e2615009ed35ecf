"""Accessibility-tree data model and the JSON formats for screens and app graphs."""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterator

CAPABILITIES = frozenset({"clickable", "long_clickable", "scrollable", "editable", "focusable"})
ACTION_KINDS = ("click", "long_click", "set_text", "scroll_forward", "scroll_backward")

# Capability an element must hold for each action kind.
REQUIRED_CAPABILITY = {
    "click": "clickable",
    "long_click": "long_clickable",
    "set_text": "editable",
    "scroll_forward": "scrollable",
    "scroll_backward": "scrollable",
}


class FormatError(ValueError):
    """A screen or app-graph document could not be parsed."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class InvariantError(ValueError):
    """A parsed document violates one or more model invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def normalize_text(text: str | None) -> str:
    """Trim, collapse internal whitespace and case-fold."""
    if not text:
        return ""
    return re.sub(r"\s+", " ", text.strip()).casefold()


@dataclass(frozen=True)
class Bounds:
    left: int
    top: int
    right: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.bottom - self.top

    @property
    def area(self) -> int:
        return self.width * self.height

    def translated(self, dx: int, dy: int) -> Bounds:
        return Bounds(self.left + dx, self.top + dy, self.right + dx, self.bottom + dy)

    def to_list(self) -> list[int]:
        return [self.left, self.top, self.right, self.bottom]


@dataclass(frozen=True)
class Action:
    """An interaction on a view. ``value`` is only used by ``set_text``."""

    kind: str
    value: str | None = None

    def __post_init__(self):
        if self.kind not in ACTION_KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.kind == "set_text" and self.value is None:
            raise ValueError("set_text requires a value")
        if self.kind != "set_text" and self.value is not None:
            raise ValueError(f"{self.kind} takes no value")

    @property
    def is_activation(self) -> bool:
        return self.kind in ("click", "long_click")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.value is not None:
            out["value"] = self.value
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Action:
        return cls(data["kind"], data.get("value"))


CLICK = Action("click")
LONG_CLICK = Action("long_click")


@dataclass(frozen=True)
class ViewNode:
    node_id: str
    class_name: str
    package_name: str
    bounds: Bounds
    text: str | None = None
    content_description: str | None = None
    capabilities: frozenset[str] = frozenset()
    visible: bool = True
    children: tuple[ViewNode, ...] = ()

    def has(self, capability: str) -> bool:
        return capability in self.capabilities

    @property
    def label(self) -> str:
        """Own text, else content description, else empty."""
        if self.text and self.text.strip():
            return self.text
        if self.content_description and self.content_description.strip():
            return self.content_description
        return ""

    def walk(self) -> Iterator[ViewNode]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class ScreenTree:
    screen_id: str
    title: str
    activity: str
    package_name: str
    screen_width: int
    screen_height: int
    root: ViewNode

    # Lookup tables are computed once per tree; the tree itself never changes.

    @cached_property
    def preorder(self) -> tuple[ViewNode, ...]:
        return tuple(self.root.walk())

    @cached_property
    def _index(self) -> dict[str, ViewNode]:
        return {n.node_id: n for n in self.preorder}

    @cached_property
    def _order(self) -> dict[str, int]:
        return {n.node_id: i for i, n in enumerate(self.preorder)}

    @cached_property
    def _parents(self) -> dict[str, ViewNode | None]:
        parents: dict[str, ViewNode | None] = {self.root.node_id: None}
        for node in self.preorder:
            for child in node.children:
                parents[child.node_id] = node
        return parents

    @cached_property
    def _depths(self) -> dict[str, int]:
        depths = {self.root.node_id: 0}
        for node in self.preorder:
            for child in node.children:
                depths[child.node_id] = depths[node.node_id] + 1
        return depths

    @cached_property
    def _closest(self) -> dict[str, str]:
        return {}

    def node(self, node_id: str) -> ViewNode:
        try:
            return self._index[node_id]
        except KeyError:
            raise KeyError(f"no node {node_id!r} on screen {self.screen_id!r}") from None

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._index

    def parent(self, node_id: str) -> ViewNode | None:
        self.node(node_id)
        return self._parents[node_id]

    def order_of(self, node_id: str) -> int:
        self.node(node_id)
        return self._order[node_id]

    def depth(self, node_id: str) -> int:
        self.node(node_id)
        return self._depths[node_id]

    def closest_text(self, node_id: str) -> str:
        cache = self._closest
        if node_id not in cache:
            cache[node_id] = _resolve_closest_text(self, node_id)
        return cache[node_id]

    @cached_property
    def interactive(self) -> tuple[str, ...]:
        return tuple(
            n.node_id
            for n in self.preorder
            if n.visible and (n.has("clickable") or n.has("long_clickable"))
        )

    @cached_property
    def focus_order(self) -> tuple[str, ...]:
        return tuple(n.node_id for n in self.preorder if n.visible and n.has("focusable"))

    def validate(self) -> list[str]:
        problems = []
        seen: set[str] = set()
        for node in self.root.walk():
            where = f"screen {self.screen_id!r} node {node.node_id!r}"
            if node.node_id in seen:
                problems.append(f"{where}: duplicate node_id")
            seen.add(node.node_id)
            b = node.bounds
            if not (b.left < b.right and b.top < b.bottom):
                problems.append(f"{where}: degenerate bounds {b.to_list()}")
            if b.left < 0 or b.top < 0 or b.right > self.screen_width or b.bottom > self.screen_height:
                problems.append(f"{where}: bounds {b.to_list()} outside screen")
            unknown = node.capabilities - CAPABILITIES
            if unknown:
                problems.append(f"{where}: unknown capabilities {sorted(unknown)}")
            if node.has("editable") and not node.has("focusable"):
                problems.append(f"{where}: editable node must be focusable")
        return problems


def resolve_closest_text(tree: ScreenTree, node_id: str) -> str:
    """Label for a view: itself, then its descendants breadth-first, then its ancestors.

    Each ancestor is tried with the same rule (own label, then its descendants
    breadth-first), nearest ancestor first. Returns "" when nothing on the
    screen carries text.
    """
    return tree.closest_text(node_id)


def _first_label_bfs(node: ViewNode) -> str:
    queue = deque(node.children)
    while queue:
        current = queue.popleft()
        if current.label:
            return current.label
        queue.extend(current.children)
    return ""


def _resolve_closest_text(tree: ScreenTree, node_id: str) -> str:
    node = tree.node(node_id)
    found = node.label or _first_label_bfs(node)
    ancestor = tree.parent(node_id)
    while not found and ancestor is not None:
        found = ancestor.label or _first_label_bfs(ancestor)
        ancestor = tree.parent(ancestor.node_id)
    return found


def interactive_views(tree: ScreenTree) -> list[str]:
    """Visible clickable or long-clickable nodes in pre-order."""
    return list(tree.interactive)


def node_depth(tree: ScreenTree, node_id: str) -> int:
    return tree.depth(node_id)


@dataclass(frozen=True)
class AppGraph:
    app_id: str
    package_name: str
    entry_screen: str
    screens: dict[str, ScreenTree]
    transitions: dict[tuple[str, str, str], str] = field(default_factory=dict)
    edit_effects: dict[tuple[str, str], str] = field(default_factory=dict)

    def screen(self, screen_id: str) -> ScreenTree:
        return self.screens[screen_id]

    def next_screen(self, screen_id: str, node_id: str, kind: str) -> str | None:
        return self.transitions.get((screen_id, node_id, kind))

    def validate(self) -> list[str]:
        problems = []
        if self.entry_screen not in self.screens:
            problems.append(f"entry screen {self.entry_screen!r} does not exist")
        for sid, tree in sorted(self.screens.items()):
            if sid != tree.screen_id:
                problems.append(f"screen key {sid!r} does not match screen_id {tree.screen_id!r}")
            problems.extend(tree.validate())
        for (sid, nid, kind), target in sorted(self.transitions.items()):
            where = f"transition ({sid}, {nid}, {kind})"
            if kind not in ACTION_KINDS:
                problems.append(f"{where}: unknown action kind")
                continue
            if sid not in self.screens:
                problems.append(f"{where}: source screen does not exist")
                continue
            if target not in self.screens:
                problems.append(f"{where}: target screen {target!r} does not exist")
            tree = self.screens[sid]
            if nid not in tree:
                problems.append(f"{where}: node does not exist")
            elif not tree.node(nid).has(REQUIRED_CAPABILITY[kind]):
                problems.append(f"{where}: node lacks {REQUIRED_CAPABILITY[kind]}")
        for (sid, nid) in sorted(self.edit_effects):
            if sid not in self.screens or nid not in self.screens[sid]:
                problems.append(f"edit effect ({sid}, {nid}): node does not exist")
            elif not self.screens[sid].node(nid).has("editable"):
                problems.append(f"edit effect ({sid}, {nid}): node is not editable")
        return problems


# -- serialization -----------------------------------------------------------


def node_to_dict(node: ViewNode) -> dict[str, Any]:
    return {
        "node_id": node.node_id,
        "class_name": node.class_name,
        "package_name": node.package_name,
        "text": node.text,
        "content_description": node.content_description,
        "bounds": node.bounds.to_list(),
        "capabilities": sorted(node.capabilities),
        "visible": node.visible,
        "children": [node_to_dict(c) for c in node.children],
    }


def screen_to_dict(tree: ScreenTree) -> dict[str, Any]:
    return {
        "screen_id": tree.screen_id,
        "title": tree.title,
        "activity": tree.activity,
        "package_name": tree.package_name,
        "screen_width": tree.screen_width,
        "screen_height": tree.screen_height,
        "root": node_to_dict(tree.root),
    }


def app_graph_to_dict(app: AppGraph) -> dict[str, Any]:
    return {
        "app_id": app.app_id,
        "package_name": app.package_name,
        "entry_screen": app.entry_screen,
        "screens": [screen_to_dict(app.screens[k]) for k in sorted(app.screens)],
        "transitions": [
            {"screen": s, "node": n, "action": a, "target": t}
            for (s, n, a), t in sorted(app.transitions.items())
        ],
        "edit_effects": [
            {"screen": s, "node": n, "meaning": m} for (s, n), m in sorted(app.edit_effects.items())
        ],
    }


def canonical_json(data: Any) -> str:
    """Bit-stable rendering used for every file this package writes."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_app_graph(app: AppGraph, path: str | Path) -> None:
    Path(path).write_text(canonical_json(app_graph_to_dict(app)), encoding="utf-8")


def dump_screen(tree: ScreenTree, path: str | Path) -> None:
    Path(path).write_text(canonical_json(screen_to_dict(tree)), encoding="utf-8")


class _Reader:
    """Typed field access that reports the JSON path of any problem."""

    def __init__(self, data: Any, where: str):
        if not isinstance(data, dict):
            raise FormatError(where, "expected an object")
        self.data = data
        self.where = where

    def get(self, key: str, kind: type | tuple[type, ...], default: Any = ..., allow_none: bool = False):
        if key not in self.data:
            if default is ...:
                raise FormatError(self.where, f"missing field {key!r}")
            return default
        value = self.data[key]
        if value is None and allow_none:
            return None
        if isinstance(value, bool) and kind is int:
            raise FormatError(f"{self.where}.{key}", "expected an integer")
        if not isinstance(value, kind):
            names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise FormatError(f"{self.where}.{key}", f"expected {names}")
        return value


def node_from_dict(data: Any, where: str = "root") -> ViewNode:
    r = _Reader(data, where)
    raw_bounds = r.get("bounds", list)
    if len(raw_bounds) != 4 or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw_bounds):
        raise FormatError(f"{where}.bounds", "expected four integers")
    caps = r.get("capabilities", list, default=[])
    if not all(isinstance(c, str) for c in caps):
        raise FormatError(f"{where}.capabilities", "expected strings")
    children = r.get("children", list, default=[])
    return ViewNode(
        node_id=r.get("node_id", str),
        class_name=r.get("class_name", str),
        package_name=r.get("package_name", str),
        text=r.get("text", str, default=None, allow_none=True),
        content_description=r.get("content_description", str, default=None, allow_none=True),
        bounds=Bounds(*raw_bounds),
        capabilities=frozenset(caps),
        visible=r.get("visible", bool, default=True),
        children=tuple(node_from_dict(c, f"{where}.children[{i}]") for i, c in enumerate(children)),
    )


def screen_from_dict(data: Any, where: str = "$") -> ScreenTree:
    r = _Reader(data, where)
    return ScreenTree(
        screen_id=r.get("screen_id", str),
        title=r.get("title", str),
        activity=r.get("activity", str),
        package_name=r.get("package_name", str),
        screen_width=r.get("screen_width", int),
        screen_height=r.get("screen_height", int),
        root=node_from_dict(r.get("root", dict), f"{where}.root"),
    )


def app_graph_from_dict(data: Any, where: str = "$", validate: bool = True) -> AppGraph:
    r = _Reader(data, where)
    screens: dict[str, ScreenTree] = {}
    problems = []
    for i, raw in enumerate(r.get("screens", list)):
        tree = screen_from_dict(raw, f"{where}.screens[{i}]")
        if tree.screen_id in screens:
            problems.append(f"duplicate screen_id {tree.screen_id!r}")
        screens[tree.screen_id] = tree
    transitions = {}
    for i, raw in enumerate(r.get("transitions", list, default=[])):
        t = _Reader(raw, f"{where}.transitions[{i}]")
        key = (t.get("screen", str), t.get("node", str), t.get("action", str))
        if key in transitions:
            problems.append(f"duplicate transition {key}")
        transitions[key] = t.get("target", str)
    effects = {}
    for i, raw in enumerate(r.get("edit_effects", list, default=[])):
        e = _Reader(raw, f"{where}.edit_effects[{i}]")
        effects[(e.get("screen", str), e.get("node", str))] = e.get("meaning", str)
    app = AppGraph(
        app_id=r.get("app_id", str),
        package_name=r.get("package_name", str),
        entry_screen=r.get("entry_screen", str),
        screens=screens,
        transitions=transitions,
        edit_effects=effects,
    )
    if validate:
        problems.extend(app.validate())
        if problems:
            raise InvariantError(problems)
    return app


def _read_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc


def load_app_graph(path: str | Path) -> AppGraph:
    return app_graph_from_dict(_read_json(path))


def load_screen(path: str | Path) -> ScreenTree:
    tree = screen_from_dict(_read_json(path))
    problems = tree.validate()
    if problems:
        raise InvariantError(problems)
    return tree
