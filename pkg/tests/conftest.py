from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from taskguide import fixtures  # noqa: E402
from taskguide.guidance import Guide  # noqa: E402
from taskguide.simulator import SimDevice  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def guided():
    """Factory: a device with a started guide for a fixture task."""

    def make(task_id: str):
        app, pkg = fixtures.load_task(task_id)
        device = SimDevice(app)
        guide = Guide(pkg, device)
        device.attach(guide)
        start = guide.start()
        return device, guide, start

    return make
