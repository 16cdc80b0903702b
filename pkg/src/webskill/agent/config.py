"""Agent configuration: step budget, adaptation mode, decoding."""

from __future__ import annotations

from dataclasses import dataclass

from ..dsl.interpreter import DEFAULT_DEPTH_LIMIT

VANILLA = "vanilla"
MEMORY_TEXT = "memory_text"
MEMORY_PROGRAM = "memory_program"
ASI = "asi"
MODES = (VANILLA, MEMORY_TEXT, MEMORY_PROGRAM, ASI)

# Consecutive unparseable policy outputs tolerated before the episode is
# cut off as max_steps; parse failures never consume the step budget.
PARSE_FAILURE_BUDGET = 5


@dataclass(frozen=True)
class AgentConfig:
    max_steps: int = 10
    mode: str = ASI
    verify_induction: bool = True
    temperature: float = 0.0
    max_tokens: int = 2048
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    parse_failure_budget: int = PARSE_FAILURE_BUDGET

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.depth_limit < 1:
            raise ValueError(f"depth_limit must be at least 1, got {self.depth_limit}")
        if self.parse_failure_budget < 1:
            raise ValueError("parse_failure_budget must be at least 1")

    @property
    def skills_in_action_space(self) -> bool:
        return self.mode == ASI

    @property
    def skills_in_memory(self) -> bool:
        return self.mode in (MEMORY_TEXT, MEMORY_PROGRAM)
