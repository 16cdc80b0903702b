"""Episode cleaning: drop error steps, compress thoughts to one sentence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..agent.episode import Episode
from ..dsl.nodes import Action
from ..llm.backend import Backend, ChatRequest
from ..llm.prompts import render_cleaner_prompt


@dataclass(frozen=True)
class CleanStep:
    summary: str
    action: Action
    action_text: str


@dataclass
class CleanEpisode:
    episode_id: str
    query: str
    steps: list = field(default_factory=list)
    fallback_count: int = 0  # thoughts summarized without the model

    def __len__(self) -> int:
        return len(self.steps)


def clean_episode(episode: Episode, backend: Backend) -> CleanEpisode:
    """Remove error steps and summarize each surviving thought.

    A blank summarizer response falls back to the thought's first sentence.
    """
    clean = CleanEpisode(episode.task_id, episode.query)
    for step in episode.steps:
        if step.is_error or step.action is None:
            continue
        summary = ""
        if step.thought.strip():
            response = backend.complete(
                ChatRequest("cleaner", render_cleaner_prompt(step.thought))
            )
            summary = _unwrap(response.text)
            if not summary:
                summary = first_sentence(step.thought)
                clean.fallback_count += 1
            else:
                summary = first_sentence(summary)
        clean.steps.append(CleanStep(summary, step.action, step.action_text))
    return clean


def first_sentence(text: str) -> str:
    """Collapse whitespace and cut at the first sentence boundary."""
    flat = re.sub(r"\s+", " ", text).strip()
    m = re.search(r"[.!?](?=\s|$)", flat)
    return flat[: m.end()] if m else flat


def _unwrap(text: str) -> str:
    """Strip quoting the summarizer may copy from its prompt example."""
    out = text.strip()
    for mark in ("'''", '"""', "```"):
        if out.startswith(mark) and out.endswith(mark) and len(out) >= 2 * len(mark):
            out = out[len(mark):-len(mark)].strip()
    if out.lower().startswith("example output:"):
        out = out[len("example output:"):].strip()
    return out


def render_clean_trajectory(clean: CleanEpisode) -> str:
    """The cleaned episode as commented action lines for the inducer."""
    lines = []
    for step in clean.steps:
        if step.summary:
            lines.append(f"# {step.summary}")
        lines.append(step.action_text)
    return "\n".join(lines)
