"""Follow the "Share a video from History" guidance, take a wrong turn and recover.

Run with ``python demos/guided_playthrough.py``.
"""

from __future__ import annotations

from taskguide import Guide, NavAction, SimDevice
from taskguide.fixtures import load_task


def show(events):
    for e in events:
        if e.kind in ("announcement", "hint", "recovery", "success_message"):
            print(f"  [{e.kind}] {e.text}")
        elif e.kind in ("beep", "bop", "success_tune"):
            print(f"  <{e.kind}>")


def select(device, node):
    print(f"> select {node}")
    device.nav_step(NavAction("touch_explore", node=node))
    show(device.nav_step(NavAction("double_tap_activate")))


app, pkg = load_task("t1")
device = SimDevice(app)
guide = Guide(pkg, device)
device.attach(guide)

print("> start")
show(guide.start())
select(device, "nav_library")

print("> ask for a hint")
show(device.nav_step(NavAction("activate_hint")))

select(device, "row_history")
# Going back is a mistake; the guide points to the way back in.
select(device, "nav_up")
for node in ("row_history", "video_olive", "btn_share", "share_facebook"):
    select(device, node)

print("\nfinished:", guide.finished)
