"""Candidate verification by re-execution.

A candidate passes only if a fresh episode that replays its rewritten
prefix (with the candidate skills callable) ends in success, actually
calls at least one candidate skill, and every candidate call runs clean
and changes environment state. Committing is gated on all three.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..agent.config import AgentConfig
from ..agent.episode import Episode, TERMINATED_PREFIX_ERROR
from ..agent.library import NameCollision, SkillLibrary, commit_skills
from ..agent.memory import Memory
from ..agent.runner import run_episode
from ..induction.inducer import InductionCandidate
from ..llm.backend import Backend
from ..sim.spec import SiteSpec
from ..sim.tasks import Task
from .judge import AUTO, EpisodeVerdict, judge_episode


@dataclass
class VerificationReport:
    episode_id: str            # source episode the candidate came from
    task_id: str
    correctness: bool
    skill_usage: bool
    skill_validity: bool
    verdict: EpisodeVerdict | None
    episode: Episode | None    # the re-execution episode
    candidate_names: tuple = ()
    called_names: tuple = ()   # candidate skills called, in first-call order
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.correctness and self.skill_usage and self.skill_validity


def provisional_library(library: SkillLibrary, skills: list) -> SkillLibrary:
    """The library with candidate skills callable but not committed."""
    merged = dict(library.skills)
    for skill in skills:
        if skill.name in merged:
            raise NameCollision(f"skill '{skill.name}' already exists")
        merged[skill.name] = skill
    return SkillLibrary(
        library.namespace, merged, library.imported_from,
        list(library.deprecated), library.commit_seq,
    )


def verify_candidate(
    task: Task,
    site: SiteSpec,
    config: AgentConfig,
    library: SkillLibrary,
    candidate: InductionCandidate,
    backend: Backend,
    judge_mode: str = AUTO,
) -> VerificationReport:
    """Re-execute the candidate's prefix and score the three checks.

    The episode starts from a fresh reset, replays the rewritten prefix
    as forced steps, then lets the policy continue inside the remaining
    step budget. A prefix that errors fails closed.
    """
    if candidate.void:
        raise ValueError("cannot verify a void candidate")
    names = tuple(s.name for s in candidate.skills)
    library_now = provisional_library(library, candidate.skills)
    episode = run_episode(
        task, site, config, library_now, Memory(), backend,
        forced_prefix=list(candidate.prefix), expose_skills=True,
    )

    calls = [
        s for s in episode.steps
        if s.is_skill_call and s.action.name in names
    ]
    usage = bool(calls)
    validity = all(s.outcome == "ok" and s.changed_state for s in calls)
    called: list = []
    for s in calls:
        if s.action.name not in called:
            called.append(s.action.name)

    report = VerificationReport(
        episode_id=candidate.episode_id,
        task_id=task.task_id,
        correctness=False,
        skill_usage=usage,
        skill_validity=validity,
        verdict=None,
        episode=episode,
        candidate_names=names,
        called_names=tuple(called),
    )
    for s in calls:
        if s.outcome != "ok":
            report.diagnostics.append(
                f"{s.action_text} errored: {s.error}"
            )
        elif not s.changed_state:
            report.diagnostics.append(
                f"{s.action_text} left the environment unchanged"
            )

    if episode.terminated_by == TERMINATED_PREFIX_ERROR:
        failed = episode.steps[-1]
        report.diagnostics.append(
            f"prefix step {failed.index} ({failed.action_text}) failed: {failed.error}"
        )
        return report

    verdict = judge_episode(task, episode, backend, judge_mode)
    report.verdict = verdict
    report.correctness = verdict.success
    if not verdict.success:
        report.diagnostics.append(f"judged unsuccessful: {verdict.rationale}")
    return report


def gate_and_commit(
    library: SkillLibrary,
    candidate: InductionCandidate,
    report: VerificationReport,
) -> tuple:
    """Commit the called candidate skills iff all three checks passed.

    Returns (library, committed names); the library object is unchanged
    when nothing commits.
    """
    if not report.passed or not report.called_names:
        return library, []
    committed = commit_skills(library, candidate.skills, report.called_names)
    names = [s.name for s in candidate.skills if s.name in set(report.called_names)]
    return committed, names
