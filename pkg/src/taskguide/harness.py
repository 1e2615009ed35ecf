"""Batch guided-vs-unguided experiments over the fixture corpus."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import fixtures
from .guidance import HINT_TYPES
from .simulator import DEFAULT_BUDGET, make_agent, run_episode
from .ui_model import canonical_json

TASK_SETS = {
    "A": ("t1", "t4", "t2"),
    "B": ("t6", "t5", "t3"),
    "training": ("tt1", "tt2"),
}
TASK_SETS["test"] = TASK_SETS["A"] + TASK_SETS["B"]
TASK_SETS["all"] = TASK_SETS["training"] + TASK_SETS["test"]

CONDITIONS = ("guided", "unguided")
CSV_COLUMNS = (
    ["task_id", "condition", "agent", "seed_count", "success_rate", "mean_actions"]
    + [f"hints_{h}" for h in HINT_TYPES]
    + ["deviations"]
)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    task_sets: list[str] = field(default_factory=lambda: ["A", "B"])
    conditions: list[str] = field(default_factory=lambda: list(CONDITIONS))
    agents: list[dict[str, Any]] = field(
        default_factory=lambda: [
            {"name": "compliant", "policy": "compliant"},
            {"name": "fallible-0.2", "policy": "fallible", "error_rate": 0.2},
            {"name": "random_walk", "policy": "random_walk"},
        ]
    )
    seed_start: int = 0
    seed_count: int = 100
    budget: int = DEFAULT_BUDGET
    output: str | None = None
    formats: list[str] = field(default_factory=lambda: ["json"])
    workers: int = 1

    def __post_init__(self):
        if not self.conditions:
            raise ConfigError("at least one condition is required")
        bad = [c for c in self.conditions if c not in CONDITIONS]
        if bad:
            raise ConfigError(f"unknown conditions {bad}")
        bad = [s for s in self.task_sets if s not in TASK_SETS]
        if bad:
            raise ConfigError(f"unknown task sets {bad}")
        if not self.agents:
            raise ConfigError("at least one agent is required")
        names = [agent_name(a) for a in self.agents]
        if len(set(names)) != len(names):
            raise ConfigError("agent names must be unique")
        if self.seed_count < 1 or self.budget < 1:
            raise ConfigError("seed_count and budget must be positive")
        bad = [f for f in self.formats if f not in ("table", "csv", "json")]
        if bad:
            raise ConfigError(f"unknown formats {bad}")

    @property
    def tasks(self) -> list[str]:
        out: list[str] = []
        for name in self.task_sets:
            out += [t for t in TASK_SETS[name] if t not in out]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


def agent_name(entry: dict[str, Any]) -> str:
    return entry.get("name") or entry["policy"]


@dataclass(frozen=True)
class ReportRow:
    task_id: str
    condition: str
    agent: str
    seed_count: int
    success_rate: float
    mean_actions: float
    hints: dict[str, int]
    deviations: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "condition": self.condition,
            "agent": self.agent,
            "seed_count": self.seed_count,
            "success_rate": self.success_rate,
            "mean_actions": self.mean_actions,
            "hints": dict(self.hints),
            "deviations": self.deviations,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ReportRow:
        return cls(**d)


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ReportRow, ...]

    def row(self, task_id: str, condition: str, agent: str) -> ReportRow:
        for r in self.rows:
            if (r.task_id, r.condition, r.agent) == (task_id, condition, agent):
                return r
        raise KeyError((task_id, condition, agent))

    def aggregate(self) -> dict[str, dict[str, float]]:
        """Success rate per condition (and agent) pooled over tasks."""
        out: dict[str, dict[str, float]] = {}
        for r in self.rows:
            for key in (r.condition, f"{r.condition}/{r.agent}"):
                slot = out.setdefault(key, {"episodes": 0, "successes": 0})
                slot["episodes"] += r.seed_count
                slot["successes"] += round(r.success_rate * r.seed_count)
        return {
            k: {"episodes": v["episodes"], "success_rate": v["successes"] / v["episodes"]}
            for k, v in sorted(out.items())
        }

    def to_dict(self) -> dict[str, Any]:
        return {"rows": [r.to_dict() for r in self.rows], "aggregate": self.aggregate()}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ExperimentReport:
        return cls(tuple(ReportRow.from_dict(r) for r in d["rows"]))


def _run_cell(args: tuple) -> tuple[str, str, str, list[dict[str, Any]]]:
    task_id, condition, entry, seeds, budget = args
    app, package = fixtures.load_task(task_id)
    results = []
    for seed in seeds:
        agent = make_agent(entry, seed)
        if condition == "guided":
            res = run_episode(package, app, agent, budget)
        else:
            res = run_episode(None, app, agent, budget, canonical=package)
        results.append(res.summary())
    return task_id, condition, agent_name(entry), results


def _summarize(task_id: str, condition: str, agent: str, results: list[dict[str, Any]]) -> ReportRow:
    n = len(results)
    hints = {h: sum(r["hints_by_type"][h] for r in results) for h in HINT_TYPES}
    return ReportRow(
        task_id=task_id,
        condition=condition,
        agent=agent,
        seed_count=n,
        success_rate=sum(r["success"] for r in results) / n,
        mean_actions=round(sum(r["actions_used"] for r in results) / n, 4),
        hints=hints,
        deviations=sum(r["deviations"] for r in results),
    )


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    seeds = list(range(config.seed_start, config.seed_start + config.seed_count))
    for task_id in config.tasks:
        fixtures.task_info(task_id)
    cells = [
        (task_id, condition, entry, seeds, config.budget)
        for task_id in config.tasks
        for condition in config.conditions
        for entry in config.agents
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            outcomes = list(pool.map(_run_cell, cells))
    else:
        outcomes = [_run_cell(c) for c in cells]
    rows = [_summarize(*o) for o in outcomes]
    rows.sort(key=lambda r: (r.task_id, r.condition, r.agent))
    report = ExperimentReport(tuple(rows))
    if config.output:
        for fmt in config.formats:
            emit_report(report, fmt, Path(config.output) / f"report.{_SUFFIX[fmt]}")
    return report


_SUFFIX = {"table": "txt", "csv": "csv", "json": "json"}


def render_report(report: ExperimentReport, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(report.to_dict())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in report.rows:
            writer.writerow(
                [r.task_id, r.condition, r.agent, r.seed_count, f"{r.success_rate:.4f}", f"{r.mean_actions:.4f}"]
                + [r.hints[h] for h in HINT_TYPES]
                + [r.deviations]
            )
        return buf.getvalue()
    if fmt == "table":
        header = f"{'task':<5} {'condition':<9} {'agent':<16} {'n':>4} {'success':>8} {'actions':>8} {'hints':>6} {'bops':>6}"
        lines = [header, "-" * len(header)]
        for r in report.rows:
            lines.append(
                f"{r.task_id:<5} {r.condition:<9} {r.agent:<16} {r.seed_count:>4} "
                f"{r.success_rate:>8.3f} {r.mean_actions:>8.1f} {sum(r.hints.values()):>6} {r.deviations:>6}"
            )
        lines.append("")
        for key, agg in report.aggregate().items():
            lines.append(f"{key:<32} success {agg['success_rate']:.3f} over {agg['episodes']} episodes")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: ExperimentReport, fmt: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_report(report, fmt), encoding="utf-8")
    return path


def load_report(path: str | Path) -> ExperimentReport:
    return ExperimentReport.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
