"""The per-site skill library: the growable part of the action space.

Commits are copy-on-write: committing returns a new library, so snapshots
held by concurrent readers never change underneath them. Every commit is
checked for name collisions and call-graph cycles before anything lands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Union

from ..dsl.nodes import Param, SkillProgram, format_expr
from ..dsl.parser import parse_single_skill
from ..dsl.validator import find_cycle

SCHEMA = "webskill.library/1"

VERIFIED = "verified"
DEPRECATED = "deprecated"


class CycleIntroduced(Exception):
    """Committing these skills would make the call graph cyclic."""


class NameCollision(Exception):
    """A committed skill name already exists in the library."""


class LibraryFormatError(ValueError):
    """Malformed library file."""


@dataclass
class SkillLibrary:
    namespace: str
    skills: dict = field(default_factory=dict)  # name -> SkillProgram
    imported_from: Union[str, None] = None
    deprecated: list = field(default_factory=list)
    commit_seq: int = 0

    def names(self) -> frozenset:
        return frozenset(self.skills)

    def get(self, name: str) -> Union[SkillProgram, None]:
        return self.skills.get(name)

    def signatures(self) -> list:
        return sorted(s.signature() for s in self.skills.values())

    def prompt_entries(self) -> list:
        """(signature, one-line summary) pairs for the policy prompt."""
        entries = []
        for s in self.skills.values():
            summary = (s.docstring or "").strip().splitlines()
            entries.append((s.signature(), summary[0] if summary else ""))
        return sorted(entries)

    def snapshot(self) -> "SkillLibrary":
        return SkillLibrary(
            self.namespace, dict(self.skills), self.imported_from,
            list(self.deprecated), self.commit_seq,
        )


def commit_skills(library: SkillLibrary, skills: Iterable[SkillProgram],
                  called_names: Iterable[str]) -> SkillLibrary:
    """Add the skills that were actually called; returns a new library.

    Cycle or collision failures reject the whole commit atomically.
    """
    called = set(called_names)
    selected = [s for s in skills if s.name in called]
    if not selected:
        return library
    merged = dict(library.skills)
    for s in selected:
        if s.name in merged:
            raise NameCollision(f"skill '{s.name}' already exists in the library")
        merged[s.name] = s
    cycle = find_cycle(merged)
    if cycle:
        raise CycleIntroduced("commit would create a call cycle: " + " -> ".join(cycle))
    seq = library.commit_seq
    for s in selected:
        seq += 1
        merged[s.name] = replace(
            s, status=VERIFIED, namespace=library.namespace, created_at=seq
        )
    return SkillLibrary(
        library.namespace, merged, library.imported_from, list(library.deprecated), seq
    )


def retire_skills(library: SkillLibrary, names: Iterable[str]) -> SkillLibrary:
    """Move the named skills out of the callable set; returns a new library.

    Retired skills stay in the file as deprecated records for audit.
    """
    to_retire = set(names)
    missing = to_retire - set(library.skills)
    if missing:
        raise KeyError(f"cannot retire unknown skills: {sorted(missing)}")
    if not to_retire:
        return library
    remaining = {n: s for n, s in library.skills.items() if n not in to_retire}
    deprecated = list(library.deprecated) + [
        replace(library.skills[n], status=DEPRECATED) for n in sorted(to_retire)
    ]
    return SkillLibrary(
        library.namespace, remaining, library.imported_from,
        deprecated, library.commit_seq,
    )


# ---------------------------------------------------------------------------
# Persistence: schema header line, then one JSON record per skill

def skill_record(s: SkillProgram) -> dict:
    return {
        "name": s.name,
        "namespace": s.namespace,
        "source": s.source,
        "docstring": s.docstring,
        "params": [_param_record(p) for p in s.params],
        "status": s.status,
        "origin_episode": s.origin_episode,
        "call_count": s.call_count,
        "created_at": s.created_at,
    }


def _param_record(p: Param) -> dict:
    return {
        "name": p.name,
        "annotation": p.annotation,
        "default": format_expr(p.default) if p.default is not None else None,
    }


def save_library(library: SkillLibrary, path: Union[str, Path]) -> None:
    header = {
        "schema": SCHEMA,
        "namespace": library.namespace,
        "imported_from": library.imported_from,
        "commit_seq": library.commit_seq,
    }
    lines = [json.dumps(header, ensure_ascii=False)]
    ordered = sorted(library.skills.values(), key=lambda s: (s.created_at, s.name))
    for s in ordered + sorted(library.deprecated, key=lambda s: (s.created_at, s.name)):
        lines.append(json.dumps(skill_record(s), ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n")


def load_library(path: Union[str, Path]) -> SkillLibrary:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise LibraryFormatError("empty library file")
    header = _record(lines[0], 1)
    if header.get("schema") != SCHEMA:
        raise LibraryFormatError(
            f"line 1: expected schema '{SCHEMA}', got {header.get('schema')!r}"
        )
    library = SkillLibrary(
        namespace=header.get("namespace", ""),
        imported_from=header.get("imported_from"),
        commit_seq=int(header.get("commit_seq", 0)),
    )
    for n, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        rec = _record(line, n)
        program = parse_single_skill(rec["source"])
        program.namespace = rec.get("namespace", library.namespace)
        program.origin_episode = rec.get("origin_episode", "")
        program.status = rec.get("status", VERIFIED)
        program.call_count = int(rec.get("call_count", 0))
        program.created_at = int(rec.get("created_at", 0))
        if program.name != rec.get("name"):
            raise LibraryFormatError(
                f"line {n}: record name {rec.get('name')!r} does not match "
                f"source definition '{program.name}'"
            )
        if program.status == DEPRECATED:
            library.deprecated.append(program)
        elif program.name in library.skills:
            raise LibraryFormatError(f"line {n}: duplicate skill '{program.name}'")
        else:
            library.skills[program.name] = program
    cycle = find_cycle(library.skills)
    if cycle:
        raise LibraryFormatError("library call graph is cyclic: " + " -> ".join(cycle))
    return library


def _record(line: str, n: int) -> dict:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise LibraryFormatError(f"line {n}: invalid JSON: {exc}") from exc
    if not isinstance(rec, dict):
        raise LibraryFormatError(f"line {n}: record must be an object")
    return rec
