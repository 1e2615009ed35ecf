from __future__ import annotations

import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import oracle_find_target, oracle_sector, random_target, random_tree
from taskguide import fixtures
from taskguide.matching import (
    find_previous_target,
    find_scroll_container,
    find_target,
    node_sector,
    sector_label,
)
from taskguide.records import ViewSnapshot
from taskguide.ui_model import Bounds, ScreenTree, ViewNode

PKG = "com.example"
BTN = "android.widget.Button"


def btn(nid, text, box, *kids):
    return ViewNode(nid, BTN, PKG, Bounds(*box), text, None, frozenset({"clickable", "focusable"}), True, tuple(kids))


def group(nid, *kids):
    return ViewNode(nid, "android.view.ViewGroup", PKG, Bounds(0, 0, 1080, 1920), children=tuple(kids))


def screen(*kids):
    return ScreenTree("s", "S", "A", PKG, 1080, 1920, group("root", *kids))


def test_unique_target_has_empty_rank_trace():
    app, pkg = fixtures.load_task("tt1")
    outcome = find_target(app.screen("contacts_list"), pkg.steps[0].clicked_view)
    assert (outcome.node_id, outcome.candidate_count, outcome.rank_trace) == ("fab_create", 1, ())


def test_size_tie_break_picks_nearest_area():
    tree = screen(btn("big", "Share", (0, 0, 400, 400)), btn("small", "Share", (500, 500, 600, 600)))
    target = ViewSnapshot.capture(tree, "small")
    outcome = find_target(tree, replace(target, bounds=Bounds(0, 0, 110, 100)))
    assert outcome.node_id == "small"
    assert outcome.rank_trace == ("size",)


def test_depth_tie_break_then_document_order():
    tree = screen(btn("a", "Share", (0, 0, 100, 100)), group("g", btn("b", "Share", (0, 0, 100, 100))))
    snap = ViewSnapshot.capture(tree, "b")
    assert find_target(tree, snap).node_id == "b"
    assert find_target(tree, snap).rank_trace == ("size", "depth")
    clones = screen(btn("a", "Share", (0, 0, 100, 100)), btn("b", "Share", (900, 900, 1000, 1000)))
    outcome = find_target(clones, ViewSnapshot.capture(clones, "b"))
    assert outcome.node_id == "a"
    assert outcome.rank_trace == ("size", "depth", "dom_order")


def test_translate_duplicate_listen_buttons_resolve_by_size():
    app, pkg = fixtures.load_task("t4")
    outcome = find_target(app.screen("main_es_phrase"), pkg.steps[-1].clicked_view)
    assert outcome.node_id == "listen_target"
    assert outcome.candidate_count == 2


def test_matching_ignores_class_package_and_text_mismatch():
    tree = screen(btn("a", "Share", (0, 0, 100, 100)))
    snap = ViewSnapshot.capture(tree, "a")
    assert not find_target(tree, replace(snap, class_name="android.widget.TextView")).found
    assert not find_target(tree, replace(snap, package_name="com.other")).found
    assert not find_target(tree, replace(snap, closest_text="Send")).found
    assert find_target(tree, replace(snap, closest_text="  SHARE ")).found


def test_sensitive_or_dynamic_without_text_never_matches():
    tree = screen(btn("a", None, (0, 0, 100, 100)))
    snap = ViewSnapshot.capture(tree, "a")
    assert find_target(tree, snap).found
    assert find_target(tree, replace(snap, dynamic=True)).candidate_count == 0
    assert find_target(tree, replace(snap, sensitive=True)).candidate_count == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_find_target_matches_oracle(seed):
    rng = random.Random(seed)
    tree = random_tree(rng)
    target = random_target(rng, tree)
    outcome = find_target(tree, target)
    assert (outcome.node_id, outcome.candidate_count) == oracle_find_target(tree, target)
    assert (outcome.node_id is None) == (outcome.candidate_count == 0)


def _translate(node: ViewNode, dx: int, dy: int) -> ViewNode:
    return replace(node, bounds=node.bounds.translated(dx, dy), children=tuple(_translate(c, dx, dy) for c in node.children))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(-500, 500), st.integers(-500, 500))
def test_find_target_ignores_position(seed, dx, dy):
    rng = random.Random(seed)
    tree = random_tree(rng)
    target = random_target(rng, tree)
    moved = replace(tree, root=_translate(tree.root, dx, dy))
    assert find_target(moved, target) == find_target(tree, target)


def test_sector_examples():
    assert sector_label(Bounds(0, 0, 1080, 200), 1080, 1920) == "top left corner"
    assert sector_label(Bounds(400, 700, 600, 1200), 1080, 1920) == "center"
    assert sector_label(Bounds(0, 700, 100, 1500), 1080, 1920) == "bottom left corner"
    assert sector_label(Bounds(400, 0, 600, 100), 1080, 1920) == "top edge"
    assert sector_label(Bounds(900, 700, 1080, 900), 1080, 1920) == "right edge"
    assert sector_label(Bounds(400, 1800, 600, 1920), 1080, 1920) == "bottom edge"
    assert sector_label(Bounds(0, 0, 1080, 1920), 1080, 1920) == "top left corner"
    # touching a third boundary exactly does not count as overlapping it
    assert sector_label(Bounds(360, 640, 720, 1280), 1080, 1920) == "center"


def test_sector_rejects_out_of_screen_bounds():
    with pytest.raises(ValueError):
        sector_label(Bounds(-1, 0, 10, 10), 1080, 1920)
    with pytest.raises(ValueError):
        sector_label(Bounds(0, 0, 1081, 10), 1080, 1920)
    with pytest.raises(ValueError):
        sector_label(Bounds(10, 10, 10, 20), 1080, 1920)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_sector_agrees_with_pixel_oracle_on_odd_screens(data):
    w = data.draw(st.integers(3, 200))
    h = data.draw(st.integers(3, 200))
    left = data.draw(st.integers(0, w - 1))
    top = data.draw(st.integers(0, h - 1))
    right = data.draw(st.integers(left + 1, w))
    bottom = data.draw(st.integers(top + 1, h))
    b = Bounds(left, top, right, bottom)
    assert sector_label(b, w, h) == oracle_sector(b, w, h)


def test_history_row_is_bottom_left_corner():
    tree = fixtures.load_app("youtube").screen("library")
    assert node_sector(tree, "row_history") == "bottom left corner"


def test_find_previous_target_scans_most_recent_first():
    app, pkg = fixtures.load_task("t4")
    tree = app.screen("main_es_phrase")
    # the Saved tab (step 2) is the only earlier target on this screen
    assert find_previous_target(tree, pkg.steps, 4) == (2, "nav_saved")
    assert find_previous_target(tree, pkg.steps, 2) is None
    # the Portuguese screen shows both step 0's button and step 2's tab; the later step wins
    assert find_previous_target(app.screen("main_pt_phrase"), pkg.steps, 3) == (2, "nav_saved")
    assert find_previous_target(app.screen("main_pt_phrase"), pkg.steps, 2) == (0, "lang_target")
    assert find_previous_target(app.screen("lang_picker"), pkg.steps, 1) is None
    with pytest.raises(ValueError):
        find_previous_target(tree, pkg.steps, 0)


def test_find_previous_target_finds_history_from_library():
    app, pkg = fixtures.load_task("t1")
    assert find_previous_target(app.screen("library"), pkg.steps, 2) == (1, "row_history")


def test_find_scroll_container():
    app, pkg = fixtures.load_task("t5")
    scrolled = pkg.steps[2].scrolled_views[0]
    assert scrolled.closest_text == "Leagues"
    assert find_scroll_container(app.screen("following_comps"), scrolled) == "comp_list"
    assert find_scroll_container(app.screen("home"), scrolled) is None
    assert find_scroll_container(app.screen("following_comps"), replace(scrolled, closest_text="Clubs")) is None
