"""Episode records: what one task attempt leaves behind."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..dsl.nodes import Action
from ..dsl.primitives import TERMINATING

TERMINATED_MESSAGE = "message"
TERMINATED_INFEASIBLE = "infeasible"
TERMINATED_MAX_STEPS = "max_steps"
TERMINATED_PREFIX_ERROR = "prefix_error"

# Step outcomes beyond the environment's ok/no_effect/error
PARSE_ERROR = "parse_error"


@dataclass
class EpisodeStep:
    index: int
    url: str                 # page the agent saw before acting
    observation: str         # accessibility tree before acting
    thought: str
    action: Action | None    # None when the policy output was unparseable
    action_text: str         # canonical call text, or the raw attempt
    outcome: str             # ok | no_effect | error | parse_error
    error: str | None
    fingerprint_before: str
    fingerprint_after: str
    url_after: str
    trace: list = field(default_factory=list)  # flattened TraceSteps for skill calls
    forced: bool = False     # executed as part of a forced prefix

    @property
    def is_error(self) -> bool:
        return self.outcome in ("error", PARSE_ERROR)

    @property
    def is_skill_call(self) -> bool:
        return self.action is not None and self.action.is_skill

    @property
    def changed_state(self) -> bool:
        return self.fingerprint_before != self.fingerprint_after

    @property
    def is_terminating(self) -> bool:
        return (
            self.action is not None
            and not self.action.is_skill
            and self.action.name in TERMINATING
            and not self.is_error
        )


@dataclass
class Episode:
    task_id: str
    query: str
    steps: list = field(default_factory=list)
    terminated_by: str = TERMINATED_MAX_STEPS
    final_message: str | None = None
    final_observation: str = ""
    final_state: object = None  # EnvState snapshot at episode end

    @property
    def actions(self) -> list:
        return [s.action for s in self.steps if s.action is not None]

    def visited_urls(self) -> list:
        urls: list[str] = []
        for s in self.steps:
            for u in (s.url, s.url_after):
                if not urls or urls[-1] != u:
                    urls.append(u)
        return urls


def count_steps(episode: Episode) -> int:
    """Agent-level actions taken, error steps excluded."""
    return sum(1 for s in episode.steps if not s.is_error)
