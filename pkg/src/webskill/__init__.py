"""An LM web agent that grows its own action space.

The agent acts on simulated websites through a fixed set of browser
primitives, induces parameterized skill programs from its successful
episodes, verifies each candidate by re-executing it, and exposes the
survivors as new callable actions for every later task.
"""

from .agent import (
    AgentConfig,
    Episode,
    Memory,
    SkillLibrary,
    commit_skills,
    count_steps,
    load_library,
    run_episode,
    save_library,
)
from .dsl import (
    Action,
    SkillProgram,
    interpret_call,
    parse_skill_source,
    render_skill,
    validate_skill,
)
from .harness import RunConfig, run_online, skill_stats, welch_t_test
from .induction import clean_episode, induce, truncate_prefix
from .llm import ScriptedBackend, make_backend
from .sim import SiteSpec, WebEnv, load_site_spec, load_tasks
from .verification import judge_episode, verify_candidate

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AgentConfig",
    "Episode",
    "Memory",
    "RunConfig",
    "ScriptedBackend",
    "SiteSpec",
    "SkillLibrary",
    "SkillProgram",
    "WebEnv",
    "__version__",
    "clean_episode",
    "commit_skills",
    "count_steps",
    "induce",
    "interpret_call",
    "judge_episode",
    "load_library",
    "load_site_spec",
    "load_tasks",
    "make_backend",
    "parse_skill_source",
    "render_skill",
    "run_episode",
    "run_online",
    "save_library",
    "skill_stats",
    "truncate_prefix",
    "validate_skill",
    "verify_candidate",
    "welch_t_test",
]
