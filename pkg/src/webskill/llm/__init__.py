"""Model access: backends, prompt templates, and output parsers."""

from .backend import (
    Backend,
    ChatRequest,
    ChatResponse,
    HttpBackend,
    ScriptedBackend,
    make_backend,
)
from .errors import (
    ArgumentParseError,
    BackendError,
    MissingField,
    NoActionFound,
    NonOkStatus,
    OutputParseError,
    ReplayExhausted,
    TransportError,
    UnknownActionName,
    UnparseableVerdict,
)
from .parsers import (
    JudgeVerdict,
    make_action,
    parse_call_text,
    parse_inducer_output,
    parse_judge_verdict,
    parse_policy_action,
)
from .prompts import (
    CLEANER_INSTRUCTION,
    FULL_OBSERVATION_WINDOW,
    INDUCER_INSTRUCTION,
    JUDGE_INSTRUCTION,
    POLICY_INSTRUCTION,
    render_cleaner_prompt,
    render_inducer_prompt,
    render_judge_prompt,
    render_policy_prompt,
)
from .replay import ReplayEntry, ReplayFormatError, SCHEMA as REPLAY_SCHEMA, load_replay, save_replay

__all__ = [
    "ArgumentParseError",
    "Backend",
    "BackendError",
    "CLEANER_INSTRUCTION",
    "ChatRequest",
    "ChatResponse",
    "FULL_OBSERVATION_WINDOW",
    "HttpBackend",
    "INDUCER_INSTRUCTION",
    "JUDGE_INSTRUCTION",
    "JudgeVerdict",
    "MissingField",
    "NoActionFound",
    "NonOkStatus",
    "OutputParseError",
    "POLICY_INSTRUCTION",
    "REPLAY_SCHEMA",
    "ReplayEntry",
    "ReplayFormatError",
    "ReplayExhausted",
    "ScriptedBackend",
    "TransportError",
    "UnknownActionName",
    "UnparseableVerdict",
    "load_replay",
    "make_action",
    "make_backend",
    "parse_call_text",
    "parse_inducer_output",
    "parse_judge_verdict",
    "parse_policy_action",
    "render_cleaner_prompt",
    "render_inducer_prompt",
    "render_judge_prompt",
    "render_policy_prompt",
    "save_replay",
]
