"""Record the "Add new contact" task step by step and check the result.

Run with ``python demos/authoring_walkthrough.py``.
"""

from __future__ import annotations

from taskguide import begin_task, validate_package
from taskguide.authoring import counting_clock
from taskguide.fixtures import load_app
from taskguide.ui_model import Action, CLICK

app = load_app("contacts")
session = begin_task(app, author_id="demo", clock=counting_clock())
print("phase:", session.phase.value)

# Describe the screen, then tap the add button.
session.record_screen_description("Your contact list, with a round add button at the bottom right")
session.review_description(True)
session.demonstrate_action("fab_create", CLICK)

session.record_screen_description("A small window asking where to keep the contact")
session.review_description(True)
session.demonstrate_action("row_device", CLICK)

# Typing is folded into the next step. Saving asks for one prompt per field.
session.record_screen_description("A form with the name field at the top, then phone, and Save at the top right")
session.review_description(True)
session.demonstrate_action("field_name", Action("set_text", "Brenda"))
session.demonstrate_action("field_phone", Action("set_text", "912345678"))
session.demonstrate_action("btn_save", CLICK)
print("phase after save:", session.phase.value)
session.provide_edit_prompts(["the new contact name", "the contact number"])

session.record_screen_description("The new contact's page, the back arrow is at the top left")
session.review_description(True)
session.demonstrate_action("nav_up", CLICK)

pkg = session.finalize_task("Add new contact", "Create a contact with a name and a phone number", "demo-contact")
print(f"\n{pkg.title}: {len(pkg.steps)} steps")
for i, step in enumerate(pkg.steps, 1):
    prompts = ", ".join(p.prompt for p in step.edit_prompts)
    print(f"  {i}. {step.interaction.kind} {step.target_text!r} on {step.screen_title}" + (f" [{prompts}]" if prompts else ""))

report = validate_package(pkg, app)
print("\nvalidation ok:", report.ok)
