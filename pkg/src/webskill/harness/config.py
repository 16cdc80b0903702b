"""Run configuration: one online pass over a task file."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..agent.config import ASI, MEMORY_PROGRAM, MEMORY_TEXT, MODES, VANILLA
from ..verification.judge import AUTO, JUDGE_MODES

# The mode/verify cells the ablation grid defines. Unverified skills can
# only ever be placed as memory text; program placement (memory or action
# space) requires the verification gate.
VALID_CELLS = frozenset(
    [
        (VANILLA, False),
        (MEMORY_TEXT, False),
        (MEMORY_TEXT, True),
        (MEMORY_PROGRAM, True),
        (ASI, True),
    ]
)


@dataclass(frozen=True)
class RunConfig:
    site: str
    tasks: str
    mode: str = ASI
    verify_induction: bool = True
    backend: str = ""
    max_steps: int | None = None  # None: each task keeps its own budget
    import_library: str | None = None
    allow_update: bool = False
    out_dir: str | None = None
    seed: int = 0
    judge: str = AUTO

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == VANILLA:
            # vanilla never induces, so the verify flag is meaningless
            object.__setattr__(self, "verify_induction", False)
        if (self.mode, self.verify_induction) not in VALID_CELLS:
            raise ValueError(
                f"mode '{self.mode}' with verify_induction={self.verify_induction} "
                "is outside the ablation grid"
            )
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.allow_update and not self.import_library:
            raise ValueError("allow_update requires import_library")
        if self.judge not in JUDGE_MODES:
            raise ValueError(f"judge must be one of {JUDGE_MODES}, got {self.judge!r}")


def config_record(config: RunConfig) -> dict:
    return {
        "site": config.site,
        "tasks": config.tasks,
        "mode": config.mode,
        "verify_induction": config.verify_induction,
        "backend": config.backend,
        "max_steps": config.max_steps,
        "import_library": config.import_library,
        "allow_update": config.allow_update,
        "seed": config.seed,
        "judge": config.judge,
    }


def config_hash(config: RunConfig) -> str:
    blob = json.dumps(config_record(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
