"""Judging episode success and gating skill commits on re-execution."""

from ..sim.checkpoints import (
    CheckpointError,
    CheckpointSpec,
    EpisodeFacts,
    check_one,
    checkpoint_score,
    parse_checkpoint,
)
from .judge import (
    AUTO,
    CHECKPOINT,
    JUDGE_MODES,
    LM,
    EpisodeVerdict,
    build_episode_facts,
    judge_episode,
)
from .verify import (
    VerificationReport,
    gate_and_commit,
    provisional_library,
    verify_candidate,
)

__all__ = [
    "AUTO",
    "CHECKPOINT",
    "CheckpointError",
    "CheckpointSpec",
    "EpisodeFacts",
    "EpisodeVerdict",
    "JUDGE_MODES",
    "LM",
    "VerificationReport",
    "build_episode_facts",
    "check_one",
    "checkpoint_score",
    "gate_and_commit",
    "judge_episode",
    "parse_checkpoint",
    "provisional_library",
    "verify_candidate",
]
