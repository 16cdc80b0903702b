"""Deterministic simulated websites: specs, state, stepping, observation."""

from .checkpoints import (
    CheckpointError,
    CheckpointSpec,
    EpisodeFacts,
    check_one,
    checkpoint_score,
    parse_checkpoint,
)
from .env import (
    ERROR,
    EnvState,
    NO_EFFECT,
    OK,
    Observation,
    StepResult,
    UnknownPredicate,
    WebEnv,
    eval_predicate,
    fingerprint,
    observe,
    reset,
    step,
)
from .spec import (
    AppendFlag,
    ClosePopup,
    DanglingReference,
    DynamicQuery,
    ElementSpec,
    EmitResults,
    Goto,
    OpenPopup,
    PageSpec,
    PopupSpec,
    RESULTS_FLAG,
    ResultsPanel,
    SchemaError,
    SetFlag,
    SetValue,
    SimError,
    SiteSpec,
    TransitionRule,
    Trigger,
    load_site_spec,
)
from .tasks import DEFAULT_MAX_STEPS, Task, load_tasks

__all__ = [
    "AppendFlag",
    "CheckpointError",
    "CheckpointSpec",
    "ClosePopup",
    "DEFAULT_MAX_STEPS",
    "DanglingReference",
    "DynamicQuery",
    "ERROR",
    "ElementSpec",
    "EpisodeFacts",
    "EmitResults",
    "EnvState",
    "Goto",
    "NO_EFFECT",
    "OK",
    "Observation",
    "OpenPopup",
    "PageSpec",
    "PopupSpec",
    "RESULTS_FLAG",
    "ResultsPanel",
    "SchemaError",
    "SetFlag",
    "SetValue",
    "SimError",
    "SiteSpec",
    "StepResult",
    "Task",
    "TransitionRule",
    "Trigger",
    "UnknownPredicate",
    "WebEnv",
    "check_one",
    "checkpoint_score",
    "eval_predicate",
    "fingerprint",
    "load_site_spec",
    "load_tasks",
    "observe",
    "parse_checkpoint",
    "reset",
    "step",
]
