"""Episode success judging: model rubric or programmatic checkpoints."""

from __future__ import annotations

from dataclasses import dataclass

from ..agent.episode import Episode
from ..llm.backend import Backend, ChatRequest
from ..llm.errors import UnparseableVerdict
from ..llm.parsers import parse_judge_verdict
from ..llm.prompts import render_judge_prompt
from ..sim.tasks import Task
from ..sim.checkpoints import EpisodeFacts, check_one, checkpoint_score

LM = "lm"
CHECKPOINT = "checkpoint"
AUTO = "auto"
JUDGE_MODES = (LM, CHECKPOINT, AUTO)


@dataclass(frozen=True)
class EpisodeVerdict:
    verdict: int      # 1 success, 0 failure
    mode: str         # how it was decided: lm | checkpoint
    score: float      # checkpoint fraction; 0.0 or 1.0 for the model path
    rationale: str = ""

    @property
    def success(self) -> bool:
        return self.verdict == 1


def build_episode_facts(episode: Episode) -> EpisodeFacts:
    """Extract the plain observable record checkpoints are scored on."""
    state = episode.final_state
    if state is None:
        raise ValueError("episode carries no final environment state")
    return EpisodeFacts(
        messages=list(state.message_log),
        visited_urls=episode.visited_urls(),
        element_values=dict(state.overrides),
        flags=dict(state.flags),
    )


def judge_episode(
    task: Task,
    episode: Episode,
    backend: Backend | None = None,
    mode: str = AUTO,
) -> EpisodeVerdict:
    """Decide whether the episode satisfied the task.

    ``auto`` uses the task's checkpoints when it has any and the model
    rubric otherwise. An unparseable model verdict counts as failure.
    """
    if mode not in JUDGE_MODES:
        raise ValueError(f"mode must be one of {JUDGE_MODES}, got {mode!r}")
    if mode == AUTO:
        mode = CHECKPOINT if task.checkpoints else LM
    if mode == CHECKPOINT:
        if not task.checkpoints:
            raise ValueError(f"task '{task.task_id}' has no checkpoints")
        facts = build_episode_facts(episode)
        score = checkpoint_score(facts, list(task.checkpoints))
        failing = [c.id for c in task.checkpoints if not check_one(facts, c)]
        rationale = (
            "all checkpoints passed" if not failing
            else "failed: " + ", ".join(failing)
        )
        return EpisodeVerdict(1 if score == 1.0 else 0, CHECKPOINT, score, rationale)

    if backend is None:
        raise ValueError("model judging needs a backend")
    prompt = render_judge_prompt(
        query=task.query,
        action_history=[s.action_text for s in episode.steps if s.action is not None],
        final_observation=episode.final_observation,
        final_message=episode.final_message,
    )
    response = backend.complete(ChatRequest("judge", prompt))
    try:
        parsed = parse_judge_verdict(response.text)
    except UnparseableVerdict as exc:
        return EpisodeVerdict(0, LM, 0.0, f"unparseable verdict: {exc}")
    return EpisodeVerdict(
        parsed.verdict, LM, float(parsed.verdict), parsed.thoughts
    )
