"""Append-only textual memory with exact-text deduplication."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator, Union

MEMORY_SCHEMA = "webskill.memory/1"

PROGRAM_REFERENCE_HEADER = "Reference only, not callable:"


class Memory:
    def __init__(self, entries: Iterable[str] = ()):
        self._entries: list[str] = []
        self._seen: set[str] = set()
        for e in entries:
            self.add(e)

    def add(self, entry: str) -> bool:
        """Append an entry; returns False (unchanged) on an exact duplicate."""
        if not entry or not entry.strip():
            raise ValueError("memory entries must be non-empty")
        if entry in self._seen:
            return False
        self._entries.append(entry)
        self._seen.add(entry)
        return True

    def render(self) -> list[str]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __contains__(self, entry: str) -> bool:
        return entry in self._seen


def save_memory(memory: Memory, path: Union[str, Path]) -> None:
    doc = {"schema": MEMORY_SCHEMA, "entries": memory.render()}
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    )


def load_memory(path: Union[str, Path]) -> Memory:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != MEMORY_SCHEMA:
        raise ValueError(
            f"{path}: expected schema '{MEMORY_SCHEMA}', got {doc.get('schema')!r}"
        )
    return Memory(doc.get("entries", []))


def textual_skill_entry(signature: str, summary: str) -> str:
    """How a skill reads when stored as text guidance."""
    return f"{signature}: {summary}" if summary else signature


def program_reference_entry(source: str) -> str:
    """How a program skill reads when stored in memory, not the action space."""
    return f"{PROGRAM_REFERENCE_HEADER}\n{source}"
