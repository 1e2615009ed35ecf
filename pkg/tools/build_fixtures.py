"""Regenerate the JSON fixture corpus under src/taskguide/fixtures/.

    python tools/build_fixtures.py

App graphs and authoring traces are defined here; task packages are then
produced by replaying each trace through the authoring session with a
deterministic clock.
"""

from __future__ import annotations

import json
from pathlib import Path

from taskguide import fixtures
from taskguide.authoring import counting_clock, run_trace
from taskguide.records import dump_package
from taskguide.ui_model import AppGraph, Bounds, ScreenTree, ViewNode, canonical_json, dump_app_graph

OUT = Path(__file__).resolve().parents[1] / "src" / "taskguide" / "fixtures"
W, H = 1080, 1920

BTN = "android.widget.Button"
IBTN = "android.widget.ImageButton"
TXT = "android.widget.TextView"
EDIT = "android.widget.EditText"
GRP = "android.view.ViewGroup"
FRAME = "android.widget.FrameLayout"
LIN = "android.widget.LinearLayout"
LIST = "androidx.recyclerview.widget.RecyclerView"
IMG = "android.widget.ImageView"
SWITCH = "android.widget.Switch"
RADIO = "android.widget.RadioButton"

TAP = ("clickable", "focusable")


class AppBuilder:
    def __init__(self, app_id: str, package: str, activity: str):
        self.app_id = app_id
        self.package = package
        self.activity = activity
        self.screens: dict[str, ScreenTree] = {}
        self.transitions: dict[tuple[str, str, str], str] = {}
        self.effects: dict[tuple[str, str], str] = {}

    def n(self, nid, cls, box, text=None, desc=None, caps=(), children=(), visible=True, package=None):
        return ViewNode(
            node_id=nid,
            class_name=cls,
            package_name=package or self.package,
            bounds=Bounds(*box),
            text=text,
            content_description=desc,
            capabilities=frozenset(caps),
            visible=visible,
            children=tuple(children),
        )

    def screen(self, sid, title, children, activity=None, package=None):
        root = self.n("root", FRAME, (0, 0, W, H), children=children, package=package)
        self.screens[sid] = ScreenTree(sid, title, activity or self.activity, package or self.package, W, H, root)

    def go(self, sid, nid, target, kind="click"):
        self.transitions[(sid, nid, kind)] = target

    def appbar(self, title, up="Navigate up", actions=()):
        kids = []
        left = 40
        if up:
            kids.append(self.n("nav_up", IBTN, (0, 50, 150, 200), desc=up, caps=TAP))
            left = 170
        right = W
        buttons = []
        for nid, desc in reversed(actions):
            buttons.insert(0, self.n(nid, IBTN, (right - 140, 50, right, 200), desc=desc, caps=TAP))
            right -= 140
        kids.append(self.n("title", TXT, (left, 50, max(right, left + 100), 200), text=title, caps=("focusable",)))
        return self.n("appbar", LIN, (0, 0, W, 200), children=kids + buttons)

    def row(self, nid, text, top, height=150, extra=(), caps=TAP, left=0, right=W):
        label = self.n(f"{nid}_label", TXT, (left + 40, top + 20, min(right - 20, left + 800), top + height - 20), text=text)
        return self.n(nid, GRP, (left, top, right, top + height), caps=caps, children=(label, *extra))

    def tabs(self, items, top, height=120, prefix="tab", cls=BTN):
        width = W // len(items)
        kids = [
            self.n(f"{prefix}_{key}", cls, (i * width, top, (i + 1) * width, top + height), text=text, caps=TAP)
            for i, (key, text) in enumerate(items)
        ]
        return self.n(f"{prefix}s", LIN, (0, top, W, top + height), children=kids)

    def bottom_nav(self, items):
        return self.tabs(items, H - 150, 150, prefix="nav")

    def link_nav(self, sids, routes):
        for sid in sids:
            for key, target in routes.items():
                self.go(sid, f"nav_{key}", target)

    def build(self, entry) -> AppGraph:
        app = AppGraph(self.app_id, self.package, entry, dict(self.screens), dict(self.transitions), dict(self.effects))
        problems = app.validate()
        assert not problems, problems
        return app


def contacts() -> AppGraph:
    b = AppBuilder("contacts", "com.android.contacts", "com.android.contacts.activities.PeopleActivity")
    people = [("john", "John Smith"), ("maria", "Maria Santos"), ("peter", "Peter Jones")]
    b.screen(
        "contacts_list",
        "Contacts",
        [
            b.appbar("Contacts", up=None, actions=[("search", "Search contacts"), ("more", "More options")]),
            *[b.row(f"row_{k}", name, 240 + i * 160) for i, (k, name) in enumerate(people)],
            b.n("fab_create", IBTN, (860, 1600, 1040, 1780), desc="Create Contact", caps=TAP),
        ],
    )
    b.go("contacts_list", "fab_create", "account_picker")
    for k, _ in people:
        b.go("contacts_list", f"row_{k}", f"contact_{k}")
    b.screen(
        "account_picker",
        "Save contact to",
        [
            b.n("dialog_title", TXT, (100, 600, 980, 720), text="Save contact to", caps=("focusable",)),
            b.row("row_device", "Device", 740, left=100, right=980),
            b.row("row_google", "Google account", 900, left=100, right=980),
            b.n("btn_cancel", BTN, (700, 1080, 960, 1200), text="Cancel", caps=TAP),
        ],
    )
    b.go("account_picker", "row_device", "editor")
    b.go("account_picker", "row_google", "editor")
    b.go("account_picker", "btn_cancel", "contacts_list")
    b.screen(
        "editor",
        "Create contact",
        [
            b.n(
                "appbar",
                LIN,
                (0, 0, W, 200),
                children=[
                    b.n("nav_cancel", IBTN, (0, 50, 150, 200), desc="Cancel", caps=TAP),
                    b.n("title", TXT, (170, 50, 700, 200), text="Create contact", caps=("focusable",)),
                    b.n("btn_save", BTN, (880, 50, 1060, 200), text="Save", caps=TAP),
                ],
            ),
            b.n("field_name", EDIT, (60, 300, 1020, 440), desc="Name", caps=("clickable", "editable", "focusable")),
            b.n("field_phone", EDIT, (60, 480, 1020, 620), desc="Phone", caps=("clickable", "editable", "focusable")),
            b.n("field_email", EDIT, (60, 660, 1020, 800), desc="Email", caps=("clickable", "editable", "focusable")),
            b.n("btn_more", BTN, (60, 860, 400, 960), text="More fields", caps=TAP),
        ],
        activity="com.android.contacts.activities.ContactEditorActivity",
    )
    b.effects[("editor", "field_name")] = "contact name"
    b.effects[("editor", "field_phone")] = "phone number"
    b.effects[("editor", "field_email")] = "email address"
    b.go("editor", "btn_save", "contact_new")
    b.go("editor", "nav_cancel", "contacts_list")

    def contact(sid, name, fav_target=None, favorite=False):
        b.screen(
            sid,
            "Contact",
            [
                b.appbar("", actions=[("edit", "Edit contact"), ("more", "More options")]),
                b.n("name", TXT, (60, 260, 1020, 400), text=name, caps=("focusable",)),
                b.n(
                    "fav_star",
                    IBTN,
                    (880, 420, 1020, 560),
                    desc="Remove from favorites" if favorite else "Add to favorites",
                    caps=TAP,
                ),
                b.row("row_call", "Call", 600),
                b.row("row_text", "Text message", 760),
            ],
            activity="com.android.contacts.quickcontact.QuickContactActivity",
        )
        b.go(sid, "nav_up", "contacts_list")
        if fav_target:
            b.go(sid, "fav_star", fav_target)

    contact("contact_new", "New contact")
    contact("contact_john", "John Smith", "contact_john_fav")
    contact("contact_john_fav", "John Smith", "contact_john", favorite=True)
    contact("contact_maria", "Maria Santos")
    contact("contact_peter", "Peter Jones")
    return b.build("contacts_list")


def youtube() -> AppGraph:
    b = AppBuilder("youtube", "com.google.android.youtube", "com.google.android.apps.youtube.app.WatchWhileActivity")
    nav_items = [("home", "Home"), ("shorts", "Shorts"), ("subs", "Subscriptions"), ("library", "Library")]
    nav_routes = {"home": "home", "shorts": "shorts", "subs": "subscriptions", "library": "library"}
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731
    b.screen(
        "home",
        "Home",
        [
            b.appbar("YouTube", up=None, actions=[("search", "Search"), ("account", "Account")]),
            b.row("card_goals", "Top 10 goals of the week", 240, 500),
            b.row("card_jazz", "Morning jazz playlist", 760, 500),
            nav(),
        ],
    )
    b.go("home", "card_goals", "video_other")
    b.go("home", "card_jazz", "video_other")
    b.screen(
        "shorts",
        "Shorts",
        [b.n("short_player", FRAME, (0, 0, W, 1770), desc="Short video", caps=TAP), nav()],
    )
    b.screen(
        "subscriptions",
        "Subscriptions",
        [
            b.appbar("Subscriptions", up=None, actions=[("search", "Search")]),
            b.row("row_channel", "Cooking Daily", 240),
            b.row("card_new", "New upload from Cooking Daily", 400, 500),
            nav(),
        ],
    )
    b.go("subscriptions", "card_new", "video_other")
    b.screen(
        "library",
        "Library",
        [
            b.appbar("Library", up=None, actions=[("search", "Search")]),
            b.n("recent_header", TXT, (40, 220, 600, 300), text="Recent", caps=("focusable",)),
            b.row("recent_jazz", "Morning jazz playlist", 300, 500, left=0, right=540),
            b.row("recent_cats", "Cat compilation", 300, 500, left=540, right=W),
            b.row("row_playlists", "Playlists", 820),
            b.row("row_later", "Watch later", 970, 150),
            b.row("row_liked", "Liked videos", 1120, 150),
            b.row("row_history", "History", 1300, 150, extra=[b.n("history_icon", IMG, (960, 1330, 1040, 1420))]),
            b.row("row_yours", "Your videos", 1450, 150),
            b.row("row_downloads", "Downloads", 1600, 150),
            nav(),
        ],
    )
    b.go("library", "row_history", "history")
    b.go("library", "recent_jazz", "video_other")
    b.go("library", "recent_cats", "video_other")
    videos = [("cats", "Cat compilation"), ("olive", "How to make olive oil"), ("jazz", "Morning jazz playlist")]
    b.screen(
        "history",
        "History",
        [
            b.appbar("History", actions=[("search", "Search history")]),
            *[
                b.row(
                    f"video_{k}",
                    title,
                    220 + i * 320,
                    300,
                    extra=[b.n(f"menu_{k}", IBTN, (940, 260 + i * 320, 1060, 380 + i * 320), desc="Action menu", caps=TAP)],
                )
                for i, (k, title) in enumerate(videos)
            ],
            nav(),
        ],
    )
    b.go("history", "nav_up", "library")
    b.go("history", "video_olive", "video_olive")
    b.go("history", "video_cats", "video_other")
    b.go("history", "video_jazz", "video_other")

    def video(sid, title, share_target=None, back="history"):
        actions = [("like", "Like"), ("dislike", "Dislike"), ("share", "Share"), ("download", "Download"), ("save", "Save")]
        width = W // len(actions)
        b.screen(
            sid,
            title,
            [
                b.n("player", FRAME, (0, 0, W, 610), desc="Video player", caps=TAP),
                b.n("minimize", IBTN, (0, 0, 150, 150), desc="Minimize", caps=TAP),
                b.n("video_title", TXT, (30, 630, W - 30, 730), text=title, caps=("focusable",)),
                b.n(
                    "actions",
                    LIN,
                    (0, 750, W, 900),
                    children=[
                        b.n(f"btn_{k}", BTN, (i * width, 750, (i + 1) * width, 900), text=t, caps=TAP)
                        for i, (k, t) in enumerate(actions)
                    ],
                ),
                b.row("comments", "Comments", 920, 200),
            ],
        )
        b.go(sid, "minimize", back)
        if share_target:
            b.go(sid, "btn_share", share_target)

    video("video_olive", "How to make olive oil", "share_sheet")
    video("video_other", "Video", back="home")
    targets = [("copy", "Copy link"), ("facebook", "Facebook"), ("whatsapp", "WhatsApp"), ("gmail", "Gmail"), ("messages", "Messages")]
    b.screen(
        "share_sheet",
        "Share",
        [
            b.n("sheet_title", TXT, (40, 1000, 600, 1100), text="Share", caps=("focusable",)),
            *[
                b.n(f"share_{k}", BTN, (i * 216, 1150, (i + 1) * 216, 1400), text=t, caps=TAP)
                for i, (k, t) in enumerate(targets)
            ],
            b.n("btn_cancel", BTN, (0, 1700, W, 1850), text="Cancel", caps=TAP),
        ],
    )
    b.go("share_sheet", "share_facebook", "facebook_post")
    b.go("share_sheet", "btn_cancel", "video_olive")
    b.screen(
        "facebook_post",
        "Create post",
        [
            b.n("fb_title", TXT, (170, 50, 700, 200), text="Create post", caps=("focusable",), package="com.facebook.katana"),
            b.n(
                "fb_text",
                EDIT,
                (40, 240, 1040, 800),
                desc="What's on your mind?",
                caps=("clickable", "editable", "focusable"),
                package="com.facebook.katana",
            ),
            b.n("fb_post", BTN, (880, 50, 1060, 200), text="Post", caps=TAP, package="com.facebook.katana"),
        ],
        activity="com.facebook.composer.activity.ComposerActivity",
        package="com.facebook.katana",
    )
    b.link_nav(["home", "shorts", "subscriptions", "library", "history"], nav_routes)
    return b.build("home")


def netflix() -> AppGraph:
    b = AppBuilder("netflix", "com.netflix.mediaclient", "com.netflix.mediaclient.ui.home.HomeActivity")
    nav_items = [("home", "Home"), ("new", "New & Hot"), ("mine", "My Netflix")]
    nav_routes = {"home": "home", "new": "new_hot", "mine": "my_netflix"}
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731
    b.screen(
        "home",
        "Home",
        [
            b.appbar("For You", up=None, actions=[("notifications", "Notifications"), ("search", "Search")]),
            b.n("trending", TXT, (40, 220, 700, 300), text="Trending now", caps=("focusable",)),
            b.row("poster_st", "Stranger Things", 320, 600, left=0, right=540),
            b.row("poster_crown", "The Crown", 320, 600, left=540, right=W),
            b.row("continue", "Continue watching", 960, 500),
            nav(),
        ],
    )
    b.go("home", "notifications", "notifications")
    b.screen(
        "notifications",
        "Notifications",
        [
            b.appbar("Notifications"),
            b.row("notif_dark", "New arrival: Dark", 220, 200),
            b.row("notif_crown", "Reminder: The Crown season 6", 420, 200),
        ],
    )
    b.go("notifications", "nav_up", "home")
    b.go("notifications", "notif_dark", "dark")

    def title_screen(sid, listed, downloading, mylist_to, download_to):
        b.screen(
            sid,
            "Dark",
            [
                b.appbar("Dark", actions=[("cast", "Cast")]),
                b.n("btn_play", BTN, (40, 700, 1040, 820), text="Play", caps=TAP),
                b.n(
                    "row_actions",
                    LIN,
                    (0, 840, W, 1000),
                    children=[
                        b.n("btn_mylist", BTN, (0, 840, 360, 1000), text="My List", caps=TAP),
                        b.n("mylist_check", IMG, (300, 850, 350, 900), visible=listed),
                        b.n("btn_rate", BTN, (360, 840, 720, 1000), text="Rate", caps=TAP),
                        b.n("btn_share", BTN, (720, 840, W, 1000), text="Share", caps=TAP),
                    ],
                ),
                b.row(
                    "episode_1",
                    "Episode 1 Secrets",
                    1040,
                    220,
                    extra=[
                        b.n(
                            "download_1",
                            IBTN,
                            (920, 1080, 1060, 1220),
                            desc="Downloading Episode 1" if downloading else "Download Episode 1",
                            caps=TAP,
                        )
                    ],
                ),
                b.row("episode_2", "Episode 2 Lies", 1260, 220),
            ],
            activity="com.netflix.mediaclient.ui.details.ShowDetailsActivity",
        )
        b.go(sid, "nav_up", "home")
        b.go(sid, "btn_mylist", mylist_to)
        if download_to:
            b.go(sid, "download_1", download_to)

    title_screen("dark", False, False, "dark_listed", "dark_downloading")
    title_screen("dark_listed", True, False, "dark", "dark_done")
    title_screen("dark_downloading", False, True, "dark_done", None)
    title_screen("dark_done", True, True, "dark_downloading", None)
    b.screen("new_hot", "New & Hot", [b.appbar("New & Hot", up=None), b.row("coming", "Coming soon", 240, 600), nav()])
    b.screen(
        "my_netflix",
        "My Netflix",
        [b.appbar("My Netflix", up=None), b.row("row_downloads", "Downloads", 240), b.row("row_list", "My List", 400), nav()],
    )
    b.link_nav(["home", "new_hot", "my_netflix"], nav_routes)
    return b.build("home")


def ubereats() -> AppGraph:
    b = AppBuilder("ubereats", "com.ubercab.eats", "com.ubercab.eats.app.EatsMainActivity")
    nav_items = [("home", "Home"), ("browse", "Browse"), ("carts", "Carts"), ("account", "Account")]
    nav_routes = {"home": "home", "browse": "browse", "carts": "carts", "account": "account"}
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731
    stores = [
        ("mc_cg", "McDonald's Campo Grande"),
        ("mc_sal", "McDonald's Saldanha"),
        ("bk", "Burger King Alvalade"),
        ("pizza", "Pizza Hut Areeiro"),
    ]
    b.screen(
        "home",
        "Home",
        [
            b.appbar("Deliver now", up=None, actions=[("search", "Search")]),
            *[b.row(f"store_{k}", name, 240 + i * 300, 280) for i, (k, name) in enumerate(stores)],
            nav(),
        ],
    )
    b.go("home", "store_mc_cg", "store_cg")
    b.go("home", "store_mc_sal", "store_sal")
    for sid, title in (("browse", "Browse"), ("carts", "Carts"), ("account", "Account")):
        b.screen(sid, title, [b.appbar(title, up=None), nav()])
    b.link_nav(["home", "browse", "carts", "account"], nav_routes)
    menu = [("bigmac", "Big Mac"), ("nuggets", "McNuggets"), ("cheese", "Cheeseburger"), ("flurry", "McFlurry")]

    def store(sid, cart):
        kids = [
            b.appbar("McDonald's Campo Grande", actions=[("store_search", "Search menu")]),
            *[
                b.row(f"item_{k}", name, 240 + i * 280, 260, extra=[b.n(f"price_{k}", TXT, (800, 280 + i * 280, 1040, 360 + i * 280), text="€6.50")])
                for i, (k, name) in enumerate(menu)
            ],
        ]
        if cart:
            kids.append(b.n("btn_view_cart", BTN, (40, 1680, 1040, 1840), text="View cart", caps=TAP))
        b.screen(sid, "McDonald's Campo Grande", kids, activity="com.ubercab.eats.store.StoreActivity")
        b.go(sid, "nav_up", "home")
        b.go(sid, "item_bigmac", "bigmac")
        if cart:
            b.go(sid, "btn_view_cart", "cart")

    store("store_cg", False)
    store("store_cg_cart", True)
    b.screen(
        "store_sal",
        "McDonald's Saldanha",
        [b.appbar("McDonald's Saldanha"), b.n("closed", TXT, (40, 240, 1040, 360), text="Closed until 11:00", caps=("focusable",))],
        activity="com.ubercab.eats.store.StoreActivity",
    )
    b.go("store_sal", "nav_up", "home")

    def item(sid, size_done, drink_done, size_to, drink_to):
        kids = [
            b.appbar("Big Mac", up="Close"),
            b.n("size_header", TXT, (40, 240, 1040, 320), text="Choose size", caps=("focusable",)),
            *[
                b.n(f"size_{k}", RADIO, (40, 340 + i * 130, 1040, 460 + i * 130), text=t, caps=TAP)
                for i, (k, t) in enumerate([("small", "Small"), ("medium", "Medium"), ("large", "Large")])
            ],
        ]
        if size_done:
            kids.append(b.n("drink_header", TXT, (40, 760, 1040, 840), text="Choose drink", caps=("focusable",)))
            kids += [
                b.n(f"drink_{k}", RADIO, (40, 860 + i * 130, 1040, 980 + i * 130), text=t, caps=TAP)
                for i, (k, t) in enumerate([("coke", "Coca-Cola"), ("sprite", "Sprite"), ("water", "Water")])
            ]
        add_caps = TAP if drink_done else ("focusable",)
        kids.append(b.n("btn_add", BTN, (40, 1680, 1040, 1840), text="Add 1 to order", caps=add_caps))
        b.screen(sid, "Big Mac", kids, activity="com.ubercab.eats.item.ItemActivity")
        b.go(sid, "nav_up", "store_cg")
        for key in ("small", "medium", "large"):
            b.go(sid, f"size_{key}", size_to)
        if size_done:
            for key in ("coke", "sprite", "water"):
                b.go(sid, f"drink_{key}", drink_to)
        if drink_done:
            b.go(sid, "btn_add", "store_cg_cart")

    item("bigmac", False, False, "bigmac_size", None)
    item("bigmac_size", True, False, "bigmac_size", "bigmac_ready")
    item("bigmac_ready", True, True, "bigmac_ready", "bigmac_ready")
    b.screen(
        "cart",
        "Cart",
        [
            b.appbar("Cart"),
            b.n("cart_item", TXT, (40, 240, 1040, 380), text="Big Mac, Medium, Coca-Cola", caps=("focusable",)),
            b.n("btn_add_items", BTN, (40, 420, 520, 540), text="Add items", caps=TAP),
            b.n("btn_checkout", BTN, (40, 1680, 1040, 1840), text="Checkout", caps=TAP),
        ],
        activity="com.ubercab.eats.cart.CartActivity",
    )
    b.go("cart", "nav_up", "store_cg_cart")
    b.go("cart", "btn_add_items", "store_cg_cart")
    b.go("cart", "btn_checkout", "order_placed")
    b.screen(
        "order_placed",
        "Order placed",
        [b.n("status", TXT, (40, 800, 1040, 960), text="Your order is being prepared", caps=("focusable",))],
        activity="com.ubercab.eats.order.OrderActivity",
    )
    return b.build("home")


def translate() -> AppGraph:
    b = AppBuilder("translate", "com.google.android.apps.translate", "com.google.android.apps.translate.TranslateActivity")
    nav_items = [("translate", "Translate"), ("saved", "Saved"), ("settings", "Settings")]
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731

    def lang_bar(target):
        return b.n(
            "lang_bar",
            LIN,
            (0, 220, W, 360),
            children=[
                b.n("lang_source", BTN, (0, 220, 440, 360), text="English", caps=TAP),
                b.n("lang_swap", IBTN, (440, 220, 640, 360), desc="Swap languages", caps=TAP),
                b.n("lang_target", BTN, (640, 220, W, 360), text=target, caps=TAP),
            ],
        )

    def main(sid, target, phrase=None, translation=None):
        source_kids = [
            b.n(
                "input",
                EDIT,
                (30, 400, W - 30, 700),
                text=phrase,
                desc=None if phrase else "Enter text",
                caps=("clickable", "editable", "focusable"),
            )
        ]
        kids = [b.appbar("Translate", up=None, actions=[("account", "Account")]), lang_bar(target)]
        if phrase:
            # the source-side speaker comes first in reading order and hugs the edge
            source_kids.append(b.n("listen_source", IBTN, (0, 760, 110, 870), desc="Listen", caps=TAP))
            kids.append(b.n("source_panel", FRAME, (0, 380, W, 900), children=source_kids))
            kids.append(
                b.n(
                    "translation_panel",
                    FRAME,
                    (0, 920, W, 1500),
                    children=[
                        b.n("translation", TXT, (30, 940, W - 30, 1200), text=translation, caps=("focusable",)),
                        b.n("listen_target", IBTN, (60, 1260, 200, 1400), desc="Listen", caps=TAP),
                        b.n("copy", IBTN, (240, 1260, 380, 1400), desc="Copy translation", caps=TAP),
                    ],
                )
            )
        else:
            kids.append(b.n("source_panel", FRAME, (0, 380, W, 900), children=source_kids))
        kids.append(nav())
        b.screen(sid, "Translate", kids)
        b.go(sid, "lang_target", "lang_picker")
        b.go(sid, "nav_saved", "saved_es" if target == "Spanish" else "saved_pt")
        b.go(sid, "nav_translate", "main_es" if target == "Spanish" else "main_pt")
        b.go(sid, "nav_settings", "settings")
        if phrase:
            b.go(sid, "listen_source", sid)
            b.go(sid, "listen_target", sid)

    main("main_pt", "Portuguese")
    main("main_es", "Spanish")
    main("main_pt_phrase", "Portuguese", "Good morning", "Bom dia")
    main("main_es_phrase", "Spanish", "Good morning", "Buenos días")
    languages = ["French", "German", "Portuguese", "Spanish"]
    b.screen(
        "lang_picker",
        "Translate to",
        [b.appbar("Translate to"), *[b.row(f"lang_{name.lower()}", name, 220 + i * 150) for i, name in enumerate(languages)]],
        activity="com.google.android.apps.translate.languagepicker.LanguagePickerActivity",
    )
    b.go("lang_picker", "nav_up", "main_pt")
    b.go("lang_picker", "lang_portuguese", "main_pt")
    b.go("lang_picker", "lang_spanish", "main_es")
    for sid, phrase_screen, home in (("saved_pt", "main_pt_phrase", "main_pt"), ("saved_es", "main_es_phrase", "main_es")):
        b.screen(
            sid,
            "Saved",
            [
                b.appbar("Saved", up=None),
                b.row("saved_morning", "Good morning", 220, 200),
                b.row("saved_station", "Where is the station?", 420, 200),
                nav(),
            ],
        )
        b.go(sid, "saved_morning", phrase_screen)
        b.go(sid, "nav_translate", home)
        b.go(sid, "nav_saved", sid)
        b.go(sid, "nav_settings", "settings")
    b.screen("settings", "Settings", [b.appbar("Settings", up=None), b.row("row_offline", "Offline translation", 220), nav()])
    b.go("settings", "nav_translate", "main_pt")
    b.go("settings", "nav_saved", "saved_pt")
    return b.build("main_pt")


def onefootball() -> AppGraph:
    b = AppBuilder("onefootball", "de.motain.iliga", "com.onefootball.android.core.MainActivity")
    nav_items = [("home", "Home"), ("matches", "Matches"), ("following", "Following"), ("watch", "Watch")]
    nav_routes = {"home": "home", "matches": "matches", "following": "following_teams", "watch": "watch"}
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731
    b.screen(
        "home",
        "Home",
        [
            b.appbar("OneFootball", up=None, actions=[("search", "Search")]),
            b.row("news_1", "Transfer news roundup", 240, 500),
            b.row("news_2", "Matchday highlights", 760, 500),
            nav(),
        ],
    )
    for sid, title in (("matches", "Matches"), ("watch", "Watch")):
        b.screen(sid, title, [b.appbar(title, up=None), b.row("row_today", "Today", 240), nav()])
    follow_tabs = lambda: b.tabs([("teams", "Teams"), ("comps", "Competitions")], 200, prefix="ftab")  # noqa: E731
    b.screen(
        "following_teams",
        "Following",
        [
            b.appbar("Following", up=None),
            follow_tabs(),
            b.row("team_benfica", "Benfica", 340, 200),
            b.row("team_liverpool", "Liverpool", 540, 200),
            nav(),
        ],
    )
    b.go("following_teams", "team_benfica", "team_benfica")

    def comps(sid, names):
        rows = [b.row(f"comp_{i}", name, 340 + i * 280, 280) for i, name in enumerate(names)]
        listing = b.n(
            "comp_list",
            LIST,
            (0, 340, W, 1740),
            desc="Leagues",
            caps=("scrollable", "focusable"),
            children=rows,
        )
        b.screen(sid, "Following", [b.appbar("Following", up=None), follow_tabs(), listing, nav()])

    comps("following_comps", ["Premier League", "Bundesliga", "Serie A", "Ligue 1", "Eredivisie"])
    comps("following_comps_2", ["Ligue 1", "Eredivisie", "Primeira Liga", "La Liga", "MLS"])
    b.go("following_comps", "comp_list", "following_comps_2", "scroll_forward")
    b.go("following_comps_2", "comp_list", "following_comps", "scroll_backward")
    b.go("following_comps_2", "comp_2", "competition_pt")
    for sid in ("following_teams", "following_comps", "following_comps_2"):
        b.go(sid, "ftab_teams", "following_teams")
        b.go(sid, "ftab_comps", "following_comps")
    comp_tabs = [("news", "News"), ("matches", "Matches"), ("table", "Table"), ("teams", "Teams")]
    b.screen(
        "competition_pt",
        "Primeira Liga",
        [b.appbar("Primeira Liga"), b.tabs(comp_tabs, 200, prefix="ctab"), b.row("headline", "Title race heats up", 340, 500)],
        activity="com.onefootball.competition.CompetitionActivity",
    )
    b.screen(
        "competition_pt_teams",
        "Primeira Liga",
        [
            b.appbar("Primeira Liga"),
            b.tabs(comp_tabs, 200, prefix="ctab"),
            *[b.row(f"club_{k.lower()}", k, 340 + i * 200, 200) for i, k in enumerate(["Benfica", "Porto", "Sporting", "Braga"])],
        ],
        activity="com.onefootball.competition.CompetitionActivity",
    )
    for sid in ("competition_pt", "competition_pt_teams"):
        b.go(sid, "nav_up", "following_comps")
        b.go(sid, "ctab_teams", "competition_pt_teams")
        b.go(sid, "ctab_news", "competition_pt")
    b.go("competition_pt_teams", "club_benfica", "team_benfica")
    team_tabs = [("overview", "Overview"), ("matches", "Matches"), ("squad", "Squad"), ("transfers", "Transfers")]
    b.screen(
        "team_benfica",
        "Benfica",
        [b.appbar("Benfica"), b.tabs(team_tabs, 200, prefix="ttab"), b.row("next_match", "Next match: Benfica vs Porto", 340, 300)],
        activity="com.onefootball.team.TeamActivity",
    )
    b.screen(
        "team_benfica_squad",
        "Benfica",
        [
            b.appbar("Benfica"),
            b.tabs(team_tabs, 200, prefix="ttab"),
            *[b.row(f"player_{i}", name, 340 + i * 160, 160) for i, name in enumerate(["Goalkeepers", "Defenders", "Midfielders", "Forwards"])],
        ],
        activity="com.onefootball.team.TeamActivity",
    )
    for sid in ("team_benfica", "team_benfica_squad"):
        b.go(sid, "nav_up", "competition_pt_teams")
        b.go(sid, "ttab_squad", "team_benfica_squad")
        b.go(sid, "ttab_overview", "team_benfica")
    b.link_nav(["home", "matches", "watch", "following_teams", "following_comps", "following_comps_2"], nav_routes)
    return b.build("home")


def outlook() -> AppGraph:
    b = AppBuilder("outlook", "com.microsoft.office.outlook", "com.microsoft.office.outlook.MainActivity")
    nav_items = [("mail", "Mail"), ("search", "Search"), ("calendar", "Calendar")]
    nav_routes = {"mail": "inbox", "search": "search", "calendar": "calendar"}
    nav = lambda: b.bottom_nav(nav_items)  # noqa: E731
    mails = ["Team meeting moved", "Your weekly summary", "Invoice March"]
    b.screen(
        "inbox",
        "Inbox",
        [
            b.appbar("Inbox", up="Open navigation drawer", actions=[("filter", "Filter")]),
            *[b.row(f"mail_{i}", m, 240 + i * 220, 220) for i, m in enumerate(mails)],
            b.n("fab_new", IBTN, (860, 1560, 1040, 1740), desc="New message", caps=TAP),
            nav(),
        ],
    )
    b.go("inbox", "nav_up", "drawer")
    for i in range(len(mails)):
        b.go("inbox", f"mail_{i}", "message")
    for sid, title in (("search", "Search"), ("calendar", "Calendar")):
        b.screen(sid, title, [b.appbar(title, up=None), b.row("row_empty", "Nothing here yet", 240), nav()])
    b.link_nav(["inbox", "search", "calendar"], nav_routes)
    b.screen(
        "message",
        "Message",
        [b.appbar("Message"), b.n("body", TXT, (40, 240, 1040, 900), text="Hello team", caps=("focusable",))],
    )
    b.go("message", "nav_up", "inbox")
    folders = ["Inbox", "Drafts", "Sent", "Archive"]
    b.screen(
        "drawer",
        "Inbox",
        [
            b.n("account", TXT, (40, 80, 860, 200), text="user@example.com", caps=("focusable",)),
            *[b.row(f"folder_{f.lower()}", f, 240 + i * 160, 160, right=860) for i, f in enumerate(folders)],
            b.n("btn_settings", IBTN, (30, 1700, 180, 1850), desc="Settings", caps=TAP),
            b.n("btn_help", IBTN, (200, 1700, 350, 1850), desc="Help", caps=TAP),
        ],
    )
    b.go("drawer", "folder_inbox", "inbox")
    b.go("drawer", "btn_settings", "settings")
    b.screen(
        "settings",
        "Settings",
        [b.appbar("Settings"), *[b.row(f"set_{i}", t, 240 + i * 170, 170) for i, t in enumerate(["Notifications", "Do not disturb", "Signature", "Swipe options"])]],
        activity="com.microsoft.office.outlook.settingsui.SettingsActivity",
    )
    b.go("settings", "nav_up", "inbox")
    b.go("settings", "set_1", "dnd")

    def dnd(sid, on):
        kids = [
            b.appbar("Do not disturb"),
            b.n(
                "dnd_row",
                LIN,
                (0, 220, W, 380),
                children=[
                    b.n("dnd_label", TXT, (40, 240, 800, 360), text="Do not disturb"),
                    b.n("dnd_switch", SWITCH, (880, 250, 1040, 350), caps=TAP),
                ],
            ),
        ]
        if on:
            kids += [b.row(f"dnd_opt_{i}", t, 420 + i * 160, 160) for i, t in enumerate(["For 1 hour", "Until tomorrow", "Until I turn it off"])]
        b.screen(sid, "Do not disturb", kids, activity="com.microsoft.office.outlook.settingsui.SettingsActivity")
        b.go(sid, "nav_up", "settings")
        b.go(sid, "dnd_switch", "dnd" if on else "dnd_on")

    dnd("dnd", False)
    dnd("dnd_on", True)
    return b.build("inbox")


# -- authoring traces --------------------------------------------------------


def trace(task_id, steps, title, description):
    out = []
    for s in steps:
        out.append({"op": "describe", "text": s["describe"]})
        if s.get("retry"):
            out.append({"op": "review", "accept": False})
            out.append({"op": "describe", "text": s["describe"]})
        out.append({"op": "review", "accept": True})
        for node in s.get("scroll", ()):
            out.append({"op": "act", "node": node, "action": "scroll_forward"})
        for node, value in s.get("edits", ()):
            out.append({"op": "act", "node": node, "action": "set_text", "value": value})
        out.append({"op": "act", "node": s["node"], "action": s.get("action", "click")})
        if s.get("prompts"):
            out.append({"op": "prompts", "prompts": s["prompts"]})
    out.append({"op": "finish", "title": title, "description": description, "task_id": task_id})
    return out


TRACES = {
    "tt1": trace(
        "tt1",
        [
            {"describe": "Your contact list, with a round add button at the bottom right", "node": "fab_create", "retry": True},
            {"describe": "A small window asking where to keep the contact", "node": "row_device"},
            {
                "describe": "A form with the name field at the top, then phone and email, and Save at the top right",
                "node": "btn_save",
                "edits": [("field_name", "Brenda"), ("field_phone", "912345678")],
                "prompts": ["the new contact name", "the contact number"],
            },
            {"describe": "The new contact's page, the back arrow is at the top left", "node": "nav_up"},
        ],
        "Add new contact",
        "Create a contact with a name and a phone number",
    ),
    "tt2": trace(
        "tt2",
        [
            {"describe": "Your contact list, one contact per row", "node": "row_john"},
            {"describe": "The contact's page with a star next to the name", "node": "fav_star"},
            {"describe": "The same page, now the star is filled", "node": "nav_up"},
        ],
        "Add John Smith to favorites",
        "Mark the contact John Smith as a favorite",
    ),
    "t1": trace(
        "t1",
        [
            {"describe": "The home feed of videos, with tabs along the bottom", "node": "nav_library"},
            {"describe": "Your library, recent videos on top and a list of options below", "node": "row_history"},
            {"describe": "Videos you watched, newest first", "node": "video_olive"},
            {"describe": "The video player on top, with buttons to like and share below it", "node": "btn_share"},
            {"describe": "A panel from the bottom with apps you can share to", "node": "share_facebook"},
        ],
        "Share a video from History",
        "Find a video from History and share it to Facebook",
    ),
    "t2": trace(
        "t2",
        [
            {"describe": "The home page with the bell for notifications at the top right", "node": "notifications"},
            {"describe": "A list of notifications", "node": "notif_dark"},
            {"describe": "The series page with play, my list and the episodes below", "node": "btn_mylist"},
            {"describe": "The same series page, the episode list has a download button on each row", "node": "download_1"},
        ],
        "Add a series to your list and download an episode",
        "Check in-app notifications, find a series, add it to your watch list and download an episode",
    ),
    "t3": trace(
        "t3",
        [
            {"describe": "A list of restaurants near you", "node": "store_mc_cg"},
            {"describe": "The restaurant menu, one item per row", "node": "item_bigmac"},
            {"describe": "Options for the burger, sizes first", "node": "size_medium"},
            {"describe": "Sizes on top and drinks underneath", "node": "drink_coke"},
            {"describe": "The add to order button is at the very bottom", "node": "btn_add"},
            {"describe": "The menu again, with a view cart button at the bottom", "node": "btn_view_cart"},
            {"describe": "Your cart with the checkout button at the bottom", "node": "btn_checkout"},
        ],
        "Order a Big Mac menu",
        "Order a medium Big Mac with Coca-Cola from McDonald's Campo Grande and check out",
    ),
    "t4": trace(
        "t4",
        [
            {
                "describe": "A top part where you write what you want translated and a bottom part with the translation",
                "node": "lang_target",
            },
            {"describe": "A list of languages", "node": "lang_spanish"},
            {"describe": "The same translate page, the saved tab is at the bottom", "node": "nav_saved"},
            {"describe": "Your saved phrases", "node": "saved_morning"},
            {"describe": "The phrase on top and its translation below, each with a speaker button", "node": "listen_target"},
        ],
        "Listen to a saved phrase in Spanish",
        "Switch translation from English-Portuguese to English-Spanish, open a saved phrase and play it in Spanish",
    ),
    "t5": trace(
        "t5",
        [
            {"describe": "News from your teams, with tabs along the bottom", "node": "nav_following"},
            {"describe": "Teams you follow, with a competitions tab at the top", "node": "ftab_comps"},
            {"describe": "A long list of leagues", "node": "comp_2", "scroll": ["comp_list"]},
            {"describe": "The league page with tabs for news, matches, table and teams", "node": "ctab_teams"},
            {"describe": "The clubs in the league", "node": "club_benfica"},
            {"describe": "The club page with tabs at the top", "node": "ttab_squad"},
        ],
        "Check a team's squad",
        "Check followed competitions, open the Portuguese league teams and check the Benfica squad",
    ),
    "t6": trace(
        "t6",
        [
            {"describe": "Your inbox, the menu button is at the top left", "node": "nav_up"},
            {"describe": "A side menu with folders, and settings at the bottom left", "node": "btn_settings"},
            {"describe": "The list of settings", "node": "set_1"},
            {"describe": "A single switch at the top", "node": "dnd_switch"},
        ],
        "Turn on Do not disturb",
        "Turn on the Do not disturb mode",
    ),
}

APPS = {
    "contacts": contacts,
    "youtube": youtube,
    "netflix": netflix,
    "ubereats": ubereats,
    "translate": translate,
    "onefootball": onefootball,
    "outlook": outlook,
}


def main() -> None:
    (OUT / "apps").mkdir(parents=True, exist_ok=True)
    (OUT / "traces").mkdir(exist_ok=True)
    (OUT / "packages").mkdir(exist_ok=True)
    apps = {}
    for app_id, build in APPS.items():
        apps[app_id] = build()
        dump_app_graph(apps[app_id], OUT / "apps" / f"{app_id}.json")
    for task_id, info in fixtures.TASKS.items():
        (OUT / "traces" / f"{task_id}.json").write_text(canonical_json(TRACES[task_id]), encoding="utf-8")
        pkg = run_trace(apps[info.app_id], TRACES[task_id], author_id=fixtures.FIXTURE_AUTHOR, clock=counting_clock())
        dump_package(pkg, OUT / "packages" / f"{task_id}.json")
        print(f"{task_id}: {len(pkg.steps)} steps, {pkg.title!r}")


if __name__ == "__main__":
    main()
