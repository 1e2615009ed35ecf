"""Turn recorded app demonstrations into step-by-step screen-reader guidance.

Modules, bottom-up:

* :mod:`taskguide.ui_model` - accessibility trees and app graphs
* :mod:`taskguide.records` - snapshots, steps, task packages and requests
* :mod:`taskguide.matching` - target matching and screen sector labels
* :mod:`taskguide.authoring` - the demonstration recorder
* :mod:`taskguide.guidance` - the playthrough state machine
* :mod:`taskguide.simulator` - simulated device and scripted agents
* :mod:`taskguide.harness` - guided vs unguided experiments
"""

from __future__ import annotations

from .authoring import AuthoringSession, begin_task, run_trace, validate_package
from .guidance import Guide, GuidanceEvent, announce_target, start_playthrough
from .matching import find_previous_target, find_target, sector_label
from .records import StepRecord, TaskPackage, TaskRequest, ViewSnapshot, create_request
from .simulator import Agent, NavAction, SimDevice, run_episode
from .ui_model import AppGraph, Bounds, ScreenTree, ViewNode

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AppGraph",
    "AuthoringSession",
    "Bounds",
    "Guide",
    "GuidanceEvent",
    "NavAction",
    "ScreenTree",
    "SimDevice",
    "StepRecord",
    "TaskPackage",
    "TaskRequest",
    "ViewNode",
    "ViewSnapshot",
    "announce_target",
    "begin_task",
    "create_request",
    "find_previous_target",
    "find_target",
    "run_episode",
    "run_trace",
    "sector_label",
    "start_playthrough",
    "validate_package",
]
