"""Line-delimited replay transcripts for the scripted backend.

A replay file starts with a schema header line, then one record per line:
{"role": ..., "index": ..., "response": ...}. Records are matched by
(role, occurrence index within that role), not by prompt content, so
transcripts stay stable when prompt internals shift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

SCHEMA = "webskill.replay/1"

ROLES = ("policy", "judge", "cleaner", "inducer")


@dataclass(frozen=True)
class ReplayEntry:
    role: str
    index: int
    response: str


class ReplayFormatError(ValueError):
    """Malformed replay file."""


def load_replay(source: Union[str, Path]) -> list[ReplayEntry]:
    lines = Path(source).read_text().splitlines()
    if not lines:
        raise ReplayFormatError("empty replay file")
    header = _json_line(lines[0], 1)
    if header.get("schema") != SCHEMA:
        raise ReplayFormatError(f"line 1: expected schema '{SCHEMA}', got {header.get('schema')!r}")
    entries = []
    counts: dict[str, int] = {}
    for n, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        rec = _json_line(line, n)
        role = rec.get("role")
        if role not in ROLES:
            raise ReplayFormatError(f"line {n}: role must be one of {ROLES}")
        index = rec.get("index")
        if not isinstance(index, int) or index < 0:
            raise ReplayFormatError(f"line {n}: index must be a non-negative integer")
        expected = counts.get(role, 0)
        if index != expected:
            raise ReplayFormatError(
                f"line {n}: role '{role}' expects index {expected}, got {index}"
            )
        counts[role] = expected + 1
        response = rec.get("response")
        if not isinstance(response, str):
            raise ReplayFormatError(f"line {n}: response must be a string")
        entries.append(ReplayEntry(role, index, response))
    return entries


def save_replay(entries: Iterable[ReplayEntry], path: Union[str, Path]) -> None:
    lines = [json.dumps({"schema": SCHEMA})]
    for e in entries:
        lines.append(json.dumps(
            {"role": e.role, "index": e.index, "response": e.response}, ensure_ascii=False
        ))
    Path(path).write_text("\n".join(lines) + "\n")


def _json_line(line: str, n: int) -> dict:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ReplayFormatError(f"line {n}: invalid JSON: {exc}") from exc
    if not isinstance(rec, dict):
        raise ReplayFormatError(f"line {n}: record must be an object")
    return rec
