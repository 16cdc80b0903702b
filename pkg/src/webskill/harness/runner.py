"""The online loop: episodes feed induction, commits feed later episodes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..agent.config import ASI, MEMORY_PROGRAM, MEMORY_TEXT, VANILLA, AgentConfig
from ..agent.episode import Episode, count_steps
from ..agent.library import SkillLibrary, retire_skills, save_library
from ..agent.memory import (
    Memory,
    program_reference_entry,
    save_memory,
    textual_skill_entry,
)
from ..agent.runner import run_episode
from ..induction.cleaner import clean_episode
from ..induction.inducer import InductionCandidate, induce
from ..llm.backend import Backend, RecordingBackend, make_backend
from ..llm.errors import BackendError
from ..llm.replay import save_replay
from ..sim.spec import load_site_spec
from ..sim.tasks import load_tasks
from ..verification.judge import EpisodeVerdict, judge_episode
from ..verification.verify import (
    VerificationReport,
    gate_and_commit,
    verify_candidate,
)
from .config import RunConfig
from .importer import import_library, updatable_names
from .report import (
    EPISODES_FILE,
    EPISODES_SCHEMA,
    LIBRARY_FILE,
    MEMORY_FILE,
    REPLAY_FILE,
    RunReport,
    TaskRow,
    build_report,
    export_report,
)


@dataclass
class OnlineResult:
    report: RunReport
    library: SkillLibrary
    memory: Memory
    episodes: list = field(default_factory=list)       # (episode, record) pairs
    verifications: list = field(default_factory=list)  # VerificationReport


def run_online(config: RunConfig, backend: Backend | None = None) -> OnlineResult:
    """Run every task in order, growing the library or memory as configured.

    Model-access failures abort with the rows collected so far flagged as
    partial; a failed task never stops the run.
    """
    site = load_site_spec(config.site)
    tasks = load_tasks(config.tasks)
    recorder = RecordingBackend(backend or make_backend(config.backend))

    if config.import_library:
        library = import_library(config.import_library, site.site_id)
    else:
        library = SkillLibrary(namespace=site.site_id)
    shadowable = updatable_names(library) if config.allow_update else frozenset()

    memory = Memory()
    result = OnlineResult(build_report([]), library, memory)
    rows: list = []
    aborted = None

    for task in tasks:
        budget = config.max_steps if config.max_steps is not None else task.max_steps
        agent_cfg = AgentConfig(
            max_steps=budget, mode=config.mode,
            verify_induction=config.verify_induction,
        )
        visible = sorted(library.names()) if agent_cfg.skills_in_action_space else []
        try:
            episode = run_episode(task, site, agent_cfg, library, memory, recorder)
            verdict = judge_episode(task, episode, recorder, config.judge)
        except BackendError as exc:
            aborted = f"{type(exc).__name__}: {exc}"
            break

        row = TaskRow(
            task_id=task.task_id,
            success=verdict.score,
            steps=count_steps(episode),
            skills_reused=sum(
                1 for s in episode.steps if s.is_skill_call and not s.is_error
            ),
            induction_attempted=0,
            induction_succeeded=0,
        )

        candidate = None
        verification = None
        committed: list = []
        if verdict.success and config.mode != VANILLA:
            try:
                candidate, verification, library, committed = _induce_and_place(
                    task, site, agent_cfg, config, library, memory,
                    recorder, episode, shadowable,
                )
            except BackendError as exc:
                rows.append(row)
                result.episodes.append(
                    (episode, _episode_record(episode, verdict, visible, len(memory), []))
                )
                aborted = f"{type(exc).__name__}: {exc}"
                break
            if verification is not None:
                result.verifications.append(verification)
            row.induction_attempted = int(candidate is not None and candidate.attempted)
            row.induction_succeeded = int(bool(committed))

        rows.append(row)
        record = _episode_record(episode, verdict, visible, len(memory), committed)
        if candidate is not None:
            record["induction"] = _candidate_record(candidate)
        if verification is not None:
            record["verification"] = _verification_record(verification)
        result.episodes.append((episode, record))

    result.report = build_report(rows, aborted)
    result.library = library
    if config.out_dir:
        _write_artifacts(config, result, recorder)
    return result


def _induce_and_place(
    task, site, agent_cfg: AgentConfig, config: RunConfig,
    library: SkillLibrary, memory: Memory, backend: Backend,
    episode: Episode, shadowable: frozenset,
):
    """Clean, induce, optionally verify, then commit or memorize.

    Returns (candidate, verification report, library, placed names).
    """
    clean = clean_episode(episode, backend)
    if not clean.steps:
        return None, None, library, []
    candidate = induce(clean, library, backend, shadowable)
    if not candidate.skills:
        return candidate, None, library, []

    if not agent_cfg.verify_induction:
        # unverified cell: text placement without any gate
        placed = list(candidate.skills)
        _memorize(memory, placed, config.mode)
        return candidate, None, library, [s.name for s in placed]

    if candidate.void:
        return candidate, None, library, []
    shadowed = [
        s.name for s in candidate.skills
        if s.name in shadowable and s.name in library.skills
    ]
    verify_lib = retire_skills(library, shadowed) if shadowed else library
    verification = verify_candidate(
        task, site, agent_cfg, verify_lib, candidate, backend, config.judge
    )
    if not verification.passed or not verification.called_names:
        return candidate, verification, library, []

    placed = [s for s in candidate.skills if s.name in verification.called_names]
    if config.mode == ASI:
        keep = [n for n in shadowed if n in verification.called_names]
        base = retire_skills(library, keep) if keep else library
        library, names = gate_and_commit(base, candidate, verification)
        return candidate, verification, library, names
    _memorize(memory, placed, config.mode)
    return candidate, verification, library, [s.name for s in placed]


def _memorize(memory: Memory, skills: list, mode: str) -> None:
    for s in skills:
        if mode == MEMORY_TEXT:
            summary = (s.docstring or "").strip().splitlines()
            memory.add(textual_skill_entry(s.signature(), summary[0] if summary else ""))
        elif mode == MEMORY_PROGRAM:
            memory.add(program_reference_entry(s.source))


# ---------------------------------------------------------------------------
# Episode log records

def _step_record(step) -> dict:
    rec = {
        "index": step.index,
        "url": step.url,
        "thought": step.thought,
        "action": step.action_text,
        "outcome": step.outcome,
        "error": step.error,
        "forced": step.forced,
        "changed_state": step.changed_state,
    }
    if step.trace:
        rec["trace"] = [
            {"action": t.action.canonical(), "outcome": t.outcome, "error": t.error}
            for t in step.trace
        ]
    return rec


def _episode_record(episode: Episode, verdict: EpisodeVerdict, visible: list,
                    memory_size: int, committed: list) -> dict:
    return {
        "task_id": episode.task_id,
        "query": episode.query,
        "terminated_by": episode.terminated_by,
        "final_message": episode.final_message,
        "steps": [_step_record(s) for s in episode.steps],
        "verdict": {
            "verdict": verdict.verdict,
            "mode": verdict.mode,
            "score": verdict.score,
            "rationale": verdict.rationale,
        },
        "skills_visible": visible,
        "memory_size": memory_size,
        "committed": list(committed),
    }


def _candidate_record(candidate: InductionCandidate) -> dict:
    return {
        "episode_id": candidate.episode_id,
        "attempted": candidate.attempted,
        "void": candidate.void,
        "skills": [s.name for s in candidate.skills],
        "prefix": [a.canonical() for a in candidate.prefix],
        "diagnostics": list(candidate.diagnostics),
    }


def _verification_record(report: VerificationReport) -> dict:
    rec = {
        "task_id": report.task_id,
        "correctness": report.correctness,
        "skill_usage": report.skill_usage,
        "skill_validity": report.skill_validity,
        "passed": report.passed,
        "called_names": list(report.called_names),
        "diagnostics": list(report.diagnostics),
    }
    if report.episode is not None:
        rec["steps"] = [_step_record(s) for s in report.episode.steps]
        rec["terminated_by"] = report.episode.terminated_by
    return rec


def _write_artifacts(config: RunConfig, result: OnlineResult,
                     recorder: RecordingBackend) -> None:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    export_report(result.report, out, config)
    lines = [json.dumps({"schema": EPISODES_SCHEMA})]
    lines.extend(
        json.dumps(record, sort_keys=True, ensure_ascii=False)
        for _, record in result.episodes
    )
    (out / EPISODES_FILE).write_text("\n".join(lines) + "\n")
    save_library(result.library, out / LIBRARY_FILE)
    save_memory(result.memory, out / MEMORY_FILE)
    save_replay(recorder.entries(), out / REPLAY_FILE)


__all__ = ["OnlineResult", "run_online"]
