"""Locate authored targets on a live screen.

Candidates must share package name, class name and normalized closest text
with the authored snapshot. Position is never part of the match; it is only
used afterwards to describe where a found target sits (``sector_label``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .records import StepRecord, ViewSnapshot
from .ui_model import Bounds, ScreenTree, normalize_text

SECTORS = {
    (0, 0): "top left corner",
    (0, 2): "top right corner",
    (2, 0): "bottom left corner",
    (2, 2): "bottom right corner",
    (0, 1): "top edge",
    (1, 0): "left edge",
    (1, 2): "right edge",
    (2, 1): "bottom edge",
    (1, 1): "center",
}
# dict order above is the labelling priority: corners, edges, center
SECTOR_PRIORITY = tuple(SECTORS)


@dataclass(frozen=True)
class MatchOutcome:
    node_id: str | None
    candidate_count: int
    rank_trace: tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.node_id is not None


NOT_FOUND = MatchOutcome(None, 0)


def _rank(tree: ScreenTree, candidates: list[str], target: ViewSnapshot) -> MatchOutcome:
    count = len(candidates)
    if count == 0:
        return NOT_FOUND
    trace = []
    if len(candidates) > 1:
        trace.append("size")
        gaps = {c: abs(tree.node(c).bounds.area - target.area) for c in candidates}
        best = min(gaps.values())
        candidates = [c for c in candidates if gaps[c] == best]
    if len(candidates) > 1:
        trace.append("depth")
        gaps = {c: abs(tree.depth(c) - target.depth) for c in candidates}
        best = min(gaps.values())
        candidates = [c for c in candidates if gaps[c] == best]
    if len(candidates) > 1:
        # candidates are still in pre-order
        trace.append("dom_order")
    return MatchOutcome(candidates[0], count, tuple(trace))


def find_target(tree: ScreenTree, target: ViewSnapshot) -> MatchOutcome:
    wanted = normalize_text(target.closest_text)
    if not wanted and (target.sensitive or target.dynamic):
        return NOT_FOUND
    candidates = []
    for node_id in tree.interactive:
        node = tree.node(node_id)
        if (
            node.package_name == target.package_name
            and node.class_name == target.class_name
            and normalize_text(tree.closest_text(node_id)) == wanted
        ):
            candidates.append(node_id)
    return _rank(tree, candidates, target)


def find_scroll_container(tree: ScreenTree, scrolled: ViewSnapshot) -> str | None:
    wanted = normalize_text(scrolled.closest_text)
    if not wanted:
        return None
    candidates = [
        n.node_id
        for n in tree.preorder
        if n.visible and n.has("scrollable") and normalize_text(tree.closest_text(n.node_id)) == wanted
    ]
    return _rank(tree, candidates, scrolled).node_id


def find_previous_target(
    tree: ScreenTree, steps: Sequence[StepRecord], upto: int
) -> tuple[int, str] | None:
    """Most recent step before ``upto`` whose target is on this screen."""
    if upto < 1:
        raise ValueError("upto must be at least 1")
    for index in range(min(upto, len(steps)) - 1, -1, -1):
        outcome = find_target(tree, steps[index].clicked_view)
        if outcome.found:
            return index, outcome.node_id
    return None


def _spans(lo: int, hi: int, extent: int) -> list[int]:
    # thirds overlapped by the half-open interval [lo, hi)
    return [k for k in range(3) if 3 * lo < (k + 1) * extent and 3 * hi > k * extent]


def sector_label(bounds: Bounds, screen_w: int, screen_h: int) -> str:
    if (
        bounds.left < 0
        or bounds.top < 0
        or bounds.right > screen_w
        or bounds.bottom > screen_h
        or bounds.left >= bounds.right
        or bounds.top >= bounds.bottom
    ):
        raise ValueError(f"bounds {bounds.to_list()} not within a {screen_w}x{screen_h} screen")
    rows = _spans(bounds.top, bounds.bottom, screen_h)
    cols = _spans(bounds.left, bounds.right, screen_w)
    for cell in SECTOR_PRIORITY:
        if cell[0] in rows and cell[1] in cols:
            return SECTORS[cell]
    raise AssertionError("unreachable: a valid rectangle always overlaps a sector")


def node_sector(tree: ScreenTree, node_id: str) -> str:
    return sector_label(tree.node(node_id).bounds, tree.screen_width, tree.screen_height)
