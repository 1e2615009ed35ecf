"""Records captured while authoring: view snapshots, steps, task packages and requests."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .ui_model import Action, Bounds, FormatError, ScreenTree, canonical_json


@dataclass(frozen=True)
class ViewSnapshot:
    class_name: str
    package_name: str
    text: str | None
    content_description: str | None
    closest_text: str
    bounds: Bounds
    depth: int
    capabilities: frozenset[str]
    visible: bool = True
    sensitive: bool = False
    dynamic: bool = False

    @classmethod
    def capture(cls, tree: ScreenTree, node_id: str, sensitive: bool = False, dynamic: bool = False) -> ViewSnapshot:
        node = tree.node(node_id)
        return cls(
            class_name=node.class_name,
            package_name=node.package_name,
            text=node.text,
            content_description=node.content_description,
            closest_text=tree.closest_text(node_id),
            bounds=node.bounds,
            depth=tree.depth(node_id),
            capabilities=node.capabilities,
            visible=node.visible,
            sensitive=sensitive,
            dynamic=dynamic,
        )

    @property
    def area(self) -> int:
        return self.bounds.area

    def to_dict(self) -> dict[str, Any]:
        return {
            "class_name": self.class_name,
            "package_name": self.package_name,
            "text": self.text,
            "content_description": self.content_description,
            "closest_text": self.closest_text,
            "bounds": self.bounds.to_list(),
            "depth": self.depth,
            "capabilities": sorted(self.capabilities),
            "visible": self.visible,
            "sensitive": self.sensitive,
            "dynamic": self.dynamic,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ViewSnapshot:
        return cls(
            class_name=d["class_name"],
            package_name=d["package_name"],
            text=d.get("text"),
            content_description=d.get("content_description"),
            closest_text=d["closest_text"],
            bounds=Bounds(*d["bounds"]),
            depth=d["depth"],
            capabilities=frozenset(d.get("capabilities", ())),
            visible=d.get("visible", True),
            sensitive=d.get("sensitive", False),
            dynamic=d.get("dynamic", False),
        )


@dataclass(frozen=True)
class EditPrompt:
    view: ViewSnapshot
    prompt: str

    def to_dict(self) -> dict[str, Any]:
        return {"view": self.view.to_dict(), "prompt": self.prompt}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> EditPrompt:
        return cls(ViewSnapshot.from_dict(d["view"]), d["prompt"])


@dataclass(frozen=True)
class StepRecord:
    clicked_view: ViewSnapshot
    interaction: Action
    interactive_views: tuple[ViewSnapshot, ...]
    scrolled_views: tuple[ViewSnapshot, ...]
    description_transcript: str
    activity: str
    package_name: str
    screen_title: str
    timestamp: int
    edit_prompts: tuple[EditPrompt, ...] = ()

    @property
    def target_text(self) -> str:
        return self.clicked_view.closest_text

    def to_dict(self) -> dict[str, Any]:
        return {
            "clicked_view": self.clicked_view.to_dict(),
            "interaction": self.interaction.to_dict(),
            "interactive_views": [v.to_dict() for v in self.interactive_views],
            "scrolled_views": [v.to_dict() for v in self.scrolled_views],
            "description_transcript": self.description_transcript,
            "activity": self.activity,
            "package_name": self.package_name,
            "screen_title": self.screen_title,
            "timestamp": self.timestamp,
            "edit_prompts": [p.to_dict() for p in self.edit_prompts],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> StepRecord:
        return cls(
            clicked_view=ViewSnapshot.from_dict(d["clicked_view"]),
            interaction=Action.from_dict(d["interaction"]),
            interactive_views=tuple(ViewSnapshot.from_dict(v) for v in d.get("interactive_views", ())),
            scrolled_views=tuple(ViewSnapshot.from_dict(v) for v in d.get("scrolled_views", ())),
            description_transcript=d["description_transcript"],
            activity=d["activity"],
            package_name=d["package_name"],
            screen_title=d["screen_title"],
            timestamp=d["timestamp"],
            edit_prompts=tuple(EditPrompt.from_dict(p) for p in d.get("edit_prompts", ())),
        )


@dataclass(frozen=True)
class TaskPackage:
    task_id: str
    app_id: str
    package_name: str
    title: str
    description: str
    steps: tuple[StepRecord, ...]
    author_id: str = "author"

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a task package needs at least one step")
        if not self.title.strip() or not self.description.strip():
            raise ValueError("a task package needs a title and a description")

    def to_dict(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "app_id": self.app_id,
            "package_name": self.package_name,
            "title": self.title,
            "description": self.description,
            "author_id": self.author_id,
            "steps": [s.to_dict() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> TaskPackage:
        return cls(
            task_id=d["task_id"],
            app_id=d["app_id"],
            package_name=d["package_name"],
            title=d["title"],
            description=d["description"],
            steps=tuple(StepRecord.from_dict(s) for s in d["steps"]),
            author_id=d.get("author_id", "author"),
        )

    def dumps(self) -> str:
        return canonical_json(self.to_dict())


@dataclass(frozen=True)
class TaskRequest:
    request_id: str
    app_id: str
    title: str
    description: str

    def __post_init__(self):
        if not self.description.strip():
            raise ValueError("a task request needs a description")

    def to_dict(self) -> dict[str, Any]:
        return {
            "request_id": self.request_id,
            "app_id": self.app_id,
            "title": self.title,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> TaskRequest:
        return cls(d["request_id"], d["app_id"], d["title"], d["description"])

    def dumps(self) -> str:
        return canonical_json(self.to_dict())


def create_request(request_id: str, app_id: str, description: str, title: str = "") -> TaskRequest:
    """A user's description of a task nobody has authored yet."""
    return TaskRequest(request_id, app_id, title or description, description)


def _load(path: str | Path, parse):
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    try:
        return parse(data)
    except (KeyError, TypeError) as exc:
        raise FormatError(str(path), f"malformed document ({exc})") from exc


def load_package(path: str | Path) -> TaskPackage:
    return _load(path, TaskPackage.from_dict)


def load_request(path: str | Path) -> TaskRequest:
    return _load(path, TaskRequest.from_dict)


def dump_package(pkg: TaskPackage, path: str | Path) -> None:
    Path(path).write_text(pkg.dumps(), encoding="utf-8")


def dump_request(req: TaskRequest, path: str | Path) -> None:
    Path(path).write_text(req.dumps(), encoding="utf-8")
