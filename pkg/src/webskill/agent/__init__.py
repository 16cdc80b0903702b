"""Agent core: episode loop, memory, and the skill library."""

from .config import (
    ASI,
    AgentConfig,
    MEMORY_PROGRAM,
    MEMORY_TEXT,
    MODES,
    PARSE_FAILURE_BUDGET,
    VANILLA,
)
from .episode import (
    Episode,
    EpisodeStep,
    PARSE_ERROR,
    TERMINATED_INFEASIBLE,
    TERMINATED_MAX_STEPS,
    TERMINATED_MESSAGE,
    TERMINATED_PREFIX_ERROR,
    count_steps,
)
from .library import (
    CycleIntroduced,
    DEPRECATED,
    LibraryFormatError,
    NameCollision,
    SCHEMA as LIBRARY_SCHEMA,
    SkillLibrary,
    VERIFIED,
    commit_skills,
    load_library,
    retire_skills,
    save_library,
    skill_record,
)
from .memory import (
    MEMORY_SCHEMA,
    Memory,
    PROGRAM_REFERENCE_HEADER,
    load_memory,
    program_reference_entry,
    save_memory,
    textual_skill_entry,
)
from .runner import run_episode

__all__ = [
    "ASI",
    "AgentConfig",
    "CycleIntroduced",
    "DEPRECATED",
    "Episode",
    "EpisodeStep",
    "LIBRARY_SCHEMA",
    "LibraryFormatError",
    "MEMORY_PROGRAM",
    "MEMORY_SCHEMA",
    "MEMORY_TEXT",
    "MODES",
    "Memory",
    "NameCollision",
    "PARSE_ERROR",
    "PARSE_FAILURE_BUDGET",
    "PROGRAM_REFERENCE_HEADER",
    "SkillLibrary",
    "TERMINATED_INFEASIBLE",
    "TERMINATED_MAX_STEPS",
    "TERMINATED_MESSAGE",
    "TERMINATED_PREFIX_ERROR",
    "VANILLA",
    "VERIFIED",
    "commit_skills",
    "count_steps",
    "load_library",
    "load_memory",
    "program_reference_entry",
    "save_memory",
    "retire_skills",
    "run_episode",
    "save_library",
    "skill_record",
    "textual_skill_entry",
]
