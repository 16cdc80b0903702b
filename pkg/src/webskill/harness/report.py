"""Run reports: per-task rows, recomputable aggregates, file export."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Union

from .config import RunConfig, config_hash, config_record
from .stats import DegenerateSample, TTestResult, welch_t_test

ROWS_SCHEMA = "webskill.rows/1"
SUMMARY_SCHEMA = "webskill.summary/1"
EPISODES_SCHEMA = "webskill.episodes/1"

ROWS_FILE = "rows.jsonl"
SUMMARY_FILE = "summary.json"
EPISODES_FILE = "episodes.jsonl"
LIBRARY_FILE = "library.jsonl"
MEMORY_FILE = "memory.json"
REPLAY_FILE = "replay.jsonl"

METRICS = ("sr", "steps")


class ReportFormatError(ValueError):
    """Malformed rows or summary file."""


@dataclass
class TaskRow:
    task_id: str
    success: float           # 1/0, or the checkpoint fraction
    steps: int               # agent-level actions, error steps excluded
    skills_reused: int       # skill calls made during the episode
    induction_attempted: int
    induction_succeeded: int


@dataclass
class RunReport:
    rows: list
    aggregates: dict
    aborted: Union[str, None] = None  # infra failure; rows are partial


def aggregate_rows(rows: Iterable[TaskRow]) -> dict:
    rows = list(rows)
    n = len(rows)
    return {
        "tasks": n,
        "success_rate": (sum(r.success for r in rows) / n) if n else 0.0,
        "mean_steps": (sum(r.steps for r in rows) / n) if n else 0.0,
        "induction_attempted": sum(r.induction_attempted for r in rows),
        "induction_succeeded": sum(r.induction_succeeded for r in rows),
        "reuse_examples": sum(1 for r in rows if r.skills_reused >= 1),
    }


def build_report(rows: list, aborted: Union[str, None] = None) -> RunReport:
    return RunReport(list(rows), aggregate_rows(rows), aborted)


# ---------------------------------------------------------------------------
# Export / import

def export_report(report: RunReport, out_dir: Union[str, Path],
                  config: Union[RunConfig, None] = None) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps({"schema": ROWS_SCHEMA})]
    lines.extend(
        json.dumps(asdict(r), sort_keys=True, ensure_ascii=False)
        for r in report.rows
    )
    (out / ROWS_FILE).write_text("\n".join(lines) + "\n")

    summary = {
        "schema": SUMMARY_SCHEMA,
        "aggregates": report.aggregates,
        "aborted": report.aborted,
    }
    if config is not None:
        summary["config"] = config_record(config)
        summary["config_hash"] = config_hash(config)
    (out / SUMMARY_FILE).write_text(
        json.dumps(summary, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    )


def load_rows(run_dir: Union[str, Path]) -> list:
    path = Path(run_dir) / ROWS_FILE
    lines = path.read_text().splitlines()
    if not lines:
        raise ReportFormatError(f"{path}: empty rows file")
    header = json.loads(lines[0])
    if header.get("schema") != ROWS_SCHEMA:
        raise ReportFormatError(
            f"{path}: expected schema '{ROWS_SCHEMA}', got {header.get('schema')!r}"
        )
    rows = []
    for n, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        rec = json.loads(line)
        try:
            rows.append(TaskRow(**rec))
        except TypeError as exc:
            raise ReportFormatError(f"{path} line {n}: {exc}") from exc
    return rows


def load_summary(run_dir: Union[str, Path]) -> dict:
    path = Path(run_dir) / SUMMARY_FILE
    doc = json.loads(path.read_text())
    if doc.get("schema") != SUMMARY_SCHEMA:
        raise ReportFormatError(
            f"{path}: expected schema '{SUMMARY_SCHEMA}', got {doc.get('schema')!r}"
        )
    return doc


# ---------------------------------------------------------------------------
# Cross-run comparison

def metric_values(rows: Iterable[TaskRow], metric: str) -> list:
    if metric == "sr":
        return [float(r.success) for r in rows]
    if metric == "steps":
        return [float(r.steps) for r in rows]
    raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")


def ttest_runs(dir_a, dir_b, metric: str) -> TTestResult:
    return welch_t_test(
        metric_values(load_rows(dir_a), metric),
        metric_values(load_rows(dir_b), metric),
    )


def compare_runs(dir_a, dir_b) -> dict:
    agg_a = aggregate_rows(load_rows(dir_a))
    agg_b = aggregate_rows(load_rows(dir_b))
    out = {
        "a": {"dir": str(dir_a), **agg_a},
        "b": {"dir": str(dir_b), **agg_b},
        "delta": {
            "success_rate": agg_a["success_rate"] - agg_b["success_rate"],
            "mean_steps": agg_a["mean_steps"] - agg_b["mean_steps"],
        },
        "ttest": {},
    }
    for metric in METRICS:
        try:
            r = ttest_runs(dir_a, dir_b, metric)
            out["ttest"][metric] = {
                "t": r.t_stat,
                "df": r.degrees_of_freedom,
                "p": r.p_value,
                "significant": r.significant,
            }
        except (DegenerateSample, ValueError) as exc:
            out["ttest"][metric] = {"error": str(exc)}
    return out


def render_comparison(cmp: dict) -> str:
    """Fixed-width text table for the compare subcommand."""
    rows = [
        ("", "A", "B", "A-B"),
        ("run", cmp["a"]["dir"], cmp["b"]["dir"], ""),
        ("tasks", str(cmp["a"]["tasks"]), str(cmp["b"]["tasks"]), ""),
        (
            "success_rate",
            f"{cmp['a']['success_rate']:.4f}",
            f"{cmp['b']['success_rate']:.4f}",
            f"{cmp['delta']['success_rate']:+.4f}",
        ),
        (
            "mean_steps",
            f"{cmp['a']['mean_steps']:.4f}",
            f"{cmp['b']['mean_steps']:.4f}",
            f"{cmp['delta']['mean_steps']:+.4f}",
        ),
    ]
    for metric in METRICS:
        t = cmp["ttest"][metric]
        if "error" in t:
            rows.append((f"t-test[{metric}]", t["error"], "", ""))
        else:
            rows.append((
                f"t-test[{metric}]",
                f"t={t['t']:+.4f}",
                f"p={t['p']:.4f}",
                "significant" if t["significant"] else "not significant",
            ))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "\n".join(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in rows
    )
