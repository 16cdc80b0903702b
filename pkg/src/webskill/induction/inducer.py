"""Skill induction from cleaned episodes.

One cleaned episode goes in; out comes a candidate bundle holding the
validated skill programs, the rewritten action list, and the replayable
prefix that ends at the last skill call.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from ..agent.library import SkillLibrary
from ..dsl.parser import parse_skill_source
from ..dsl.primitives import is_primitive
from ..dsl.validator import validate_batch
from ..llm.backend import Backend, ChatRequest
from ..llm.parsers import (
    ArgumentParseError,
    UnknownActionName,
    make_action,
    parse_call_text,
    parse_inducer_output,
)
from ..llm.prompts import render_inducer_prompt
from .cleaner import CleanEpisode, render_clean_trajectory

CANDIDATE_SCHEMA = "webskill.candidate/1"


@dataclass
class InductionCandidate:
    episode_id: str
    skills: list = field(default_factory=list)
    rewritten: list = field(default_factory=list)
    prefix: list = field(default_factory=list)
    attempted: bool = False
    diagnostics: list = field(default_factory=list)
    raw_output: str = ""
    rewritten_text: str = ""
    instruction: Union[str, None] = None

    @property
    def void(self) -> bool:
        """True when there is nothing to verify."""
        return not self.skills or not self.prefix


def induce(
    clean: CleanEpisode,
    library: SkillLibrary,
    backend: Backend,
    shadowable: frozenset = frozenset(),
) -> InductionCandidate:
    """Ask the model for reusable functions over one cleaned episode.

    Emitted definitions that fail to parse, fail validation, or collide
    with an existing name are dropped with a diagnostic; the rewritten
    trajectory is trusted only up to the first unknown or non-literal
    call. Names in ``shadowable`` may collide with the library: update
    runs let a re-induction replace an imported skill.
    """
    if not clean.steps:
        raise ValueError("cannot induce from an empty episode")
    trajectory = render_clean_trajectory(clean)
    prompt = render_inducer_prompt(
        [(clean.query, trajectory)], library.signatures()
    )
    response = backend.complete(ChatRequest("inducer", prompt))
    sources, rewrites = parse_inducer_output(response.text)
    instruction, rewritten_text = rewrites[0] if rewrites else (None, "")
    candidate = assemble_candidate(
        clean.episode_id, sources, rewritten_text, library, shadowable
    )
    candidate.raw_output = response.text
    candidate.instruction = instruction
    if not rewrites:
        candidate.diagnostics.append("no rewritten trajectory in output")
    return candidate


def assemble_candidate(
    episode_id: str,
    sources: list,
    rewritten_text: str,
    library: SkillLibrary,
    shadowable: frozenset = frozenset(),
) -> InductionCandidate:
    """Validate raw definitions and a rewritten trajectory into a candidate."""
    candidate = InductionCandidate(episode_id, rewritten_text=rewritten_text)
    programs: list = []
    for block in sources:
        errors: list = []
        programs.extend(parse_skill_source(block, errors=errors))
        candidate.diagnostics.extend(str(e) for e in errors)
    candidate.attempted = bool(programs)

    kept = []
    seen = set()
    for program in programs:
        taken = is_primitive(program.name) or (
            program.name in library.skills and program.name not in shadowable
        )
        if taken:
            candidate.diagnostics.append(
                f"{program.name}: name already taken; rejected"
            )
            continue
        if program.name in seen:
            candidate.diagnostics.append(
                f"{program.name}: duplicate definition; rejected"
            )
            continue
        seen.add(program.name)
        kept.append(program)

    reports = validate_batch(kept, library.skills)
    for program in kept:
        report = reports[program.name]
        if report.ok:
            program.origin_episode = episode_id
            candidate.skills.append(program)
        else:
            candidate.diagnostics.extend(
                f"{program.name}: {msg}" for msg in report.errors
            )

    if rewritten_text:
        known = frozenset(library.skills) | {p.name for p in candidate.skills}
        candidate.rewritten = parse_rewritten_trajectory(
            rewritten_text, known, diagnostics=candidate.diagnostics
        )
    candidate.prefix = truncate_prefix(candidate.rewritten)
    if not candidate.prefix and candidate.skills:
        candidate.diagnostics.append(
            "rewritten trajectory never calls a new skill"
        )
    return candidate


def parse_rewritten_trajectory(
    code_text: str,
    known_skills: frozenset,
    diagnostics: Union[list, None] = None,
) -> list:
    """Parse rewritten action lines, keeping the trusted leading run.

    Parsing stops at the first line that is not a literal-argument call
    to a primitive or a known skill; everything before it is returned.
    """
    actions: list = []
    for lineno, raw in enumerate(code_text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            name, args = parse_call_text(line)
            actions.append(make_action(name, args, known_skills))
        except (ArgumentParseError, UnknownActionName) as exc:
            if diagnostics is not None:
                diagnostics.append(f"rewritten line {lineno}: {exc}")
            break
    return actions


def truncate_prefix(actions: list) -> list:
    """Keep actions up to and including the last skill call.

    Without any skill call there is nothing worth replaying, so the
    result is empty.
    """
    last = -1
    for i, action in enumerate(actions):
        if action.is_skill:
            last = i
    return list(actions[: last + 1])


# ---------------------------------------------------------------------------
# Candidate files (verify-one-candidate workflows)

def candidate_record(candidate: InductionCandidate) -> dict:
    return {
        "schema": CANDIDATE_SCHEMA,
        "episode_id": candidate.episode_id,
        "skills": [s.source for s in candidate.skills],
        "rewritten": candidate.rewritten_text,
    }


def save_candidate(candidate: InductionCandidate, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(candidate_record(candidate), sort_keys=True, indent=2,
                   ensure_ascii=False) + "\n"
    )


def load_candidate(path: Union[str, Path], library: SkillLibrary) -> InductionCandidate:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != CANDIDATE_SCHEMA:
        raise ValueError(
            f"{path}: expected schema '{CANDIDATE_SCHEMA}', got {doc.get('schema')!r}"
        )
    sources = doc.get("skills", [])
    if not isinstance(sources, list):
        raise ValueError(f"{path}: 'skills' must be a list of source strings")
    return assemble_candidate(
        str(doc.get("episode_id", "")), sources, str(doc.get("rewritten", "")),
        library,
    )
