"""Compare guided and unguided simulated users on the two training tasks.

Run with ``python demos/small_experiment.py``.
"""

from __future__ import annotations

from taskguide.harness import ExperimentConfig, render_report, run_experiment

config = ExperimentConfig(
    task_sets=["training"],
    agents=[
        {"name": "fallible-0.2", "policy": "fallible", "error_rate": 0.2},
        {"name": "hint_seeker", "policy": "hint_seeker", "threshold": 2},
        {"name": "random_walk", "policy": "random_walk"},
    ],
    seed_count=20,
)
report = run_experiment(config)
print(render_report(report, "table"))
