"""Task definitions: a natural-language query plus scoring checkpoints."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .checkpoints import CheckpointError, CheckpointSpec, parse_checkpoint
from .spec import SchemaError

DEFAULT_MAX_STEPS = 10


@dataclass(frozen=True)
class Task:
    task_id: str
    site_id: str
    query: str
    checkpoints: tuple = ()
    max_steps: int = DEFAULT_MAX_STEPS


def load_tasks(source: Union[str, Path, list, dict]) -> list[Task]:
    """Load a task file (JSON list, or object with a 'tasks' key)."""
    doc = _read(source)
    if isinstance(doc, dict):
        doc = doc.get("tasks")
    if not isinstance(doc, list) or not doc:
        raise SchemaError("tasks: must be a non-empty list")
    tasks = []
    seen = set()
    for i, raw in enumerate(doc):
        task = _parse_task(raw, f"tasks[{i}]")
        if task.task_id in seen:
            raise SchemaError(f"tasks[{i}].task_id: duplicate id '{task.task_id}'")
        seen.add(task.task_id)
        tasks.append(task)
    return tasks


def _read(source):
    if isinstance(source, (list, dict)):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(("[", "{"))):
        text = Path(source).read_text()
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _parse_task(raw, path: str) -> Task:
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: must be an object")
    for key in ("task_id", "site_id", "query"):
        if not isinstance(raw.get(key), str) or not raw[key]:
            raise SchemaError(f"{path}.{key}: required non-empty string")
    max_steps = raw.get("max_steps", DEFAULT_MAX_STEPS)
    if not isinstance(max_steps, int) or max_steps < 1:
        raise SchemaError(f"{path}.max_steps: must be a positive integer")
    raw_cps = raw.get("checkpoints", [])
    if not isinstance(raw_cps, list):
        raise SchemaError(f"{path}.checkpoints: must be a list")
    checkpoints = []
    for j, rc in enumerate(raw_cps):
        try:
            checkpoints.append(parse_checkpoint(rc, f"{path}.checkpoints[{j}]"))
        except CheckpointError as exc:
            raise SchemaError(str(exc)) from exc
    return Task(raw["task_id"], raw["site_id"], raw["query"], tuple(checkpoints), max_steps)
