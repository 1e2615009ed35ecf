"""Bundled app graphs, authoring traces and task packages.

Eight canonical tasks over seven simulated apps. The JSON files are generated
by ``tools/build_fixtures.py``; packages are the result of replaying the
traces with a counting clock, so :func:`reauthor` reproduces them exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

from ..authoring import counting_clock, run_trace
from ..records import TaskPackage, load_package
from ..ui_model import AppGraph, load_app_graph

ROOT = Path(__file__).resolve().parent
FIXTURE_AUTHOR = "fixture"


@dataclass(frozen=True)
class TaskInfo:
    task_id: str
    app_id: str
    title: str
    group: str


TASKS = {
    t.task_id: t
    for t in (
        TaskInfo("tt1", "contacts", "Add new contact", "training"),
        TaskInfo("tt2", "contacts", "Add John Smith to favorites", "training"),
        TaskInfo("t1", "youtube", "Share a video from History", "A"),
        TaskInfo("t2", "netflix", "Add a series to your list and download an episode", "A"),
        TaskInfo("t3", "ubereats", "Order a Big Mac menu", "B"),
        TaskInfo("t4", "translate", "Listen to a saved phrase in Spanish", "A"),
        TaskInfo("t5", "onefootball", "Check a team's squad", "B"),
        TaskInfo("t6", "outlook", "Turn on Do not disturb", "B"),
    )
}


def task_ids() -> list[str]:
    return list(TASKS)


def app_ids() -> list[str]:
    return sorted({t.app_id for t in TASKS.values()})


def task_info(task_id: str) -> TaskInfo:
    try:
        return TASKS[task_id]
    except KeyError:
        raise KeyError(f"unknown fixture task {task_id!r}; known: {', '.join(TASKS)}") from None


def app_path(app_id: str) -> Path:
    return ROOT / "apps" / f"{app_id}.json"


def package_path(task_id: str) -> Path:
    return ROOT / "packages" / f"{task_id}.json"


def trace_path(task_id: str) -> Path:
    return ROOT / "traces" / f"{task_id}.json"


@lru_cache(maxsize=None)
def load_app(app_id: str) -> AppGraph:
    return load_app_graph(app_path(app_id))


@lru_cache(maxsize=None)
def load_package_for(task_id: str) -> TaskPackage:
    task_info(task_id)
    return load_package(package_path(task_id))


def load_trace(task_id: str) -> list[dict[str, Any]]:
    task_info(task_id)
    return json.loads(trace_path(task_id).read_text(encoding="utf-8"))


def load_task(task_id: str) -> tuple[AppGraph, TaskPackage]:
    info = task_info(task_id)
    return load_app(info.app_id), load_package_for(task_id)


def reauthor(task_id: str, app: AppGraph | None = None) -> TaskPackage:
    """Replay a task's authoring trace the way the bundled package was made."""
    info = task_info(task_id)
    app = app or load_app(info.app_id)
    return run_trace(app, load_trace(task_id), author_id=FIXTURE_AUTHOR, clock=counting_clock())
