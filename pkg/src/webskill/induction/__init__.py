"""Turning finished episodes into candidate skills."""

from .cleaner import (
    CleanEpisode,
    CleanStep,
    clean_episode,
    first_sentence,
    render_clean_trajectory,
)
from .inducer import (
    CANDIDATE_SCHEMA,
    InductionCandidate,
    assemble_candidate,
    candidate_record,
    induce,
    load_candidate,
    parse_rewritten_trajectory,
    save_candidate,
    truncate_prefix,
)

__all__ = [
    "CANDIDATE_SCHEMA",
    "CleanEpisode",
    "CleanStep",
    "InductionCandidate",
    "assemble_candidate",
    "candidate_record",
    "clean_episode",
    "first_sentence",
    "induce",
    "load_candidate",
    "parse_rewritten_trajectory",
    "render_clean_trajectory",
    "save_candidate",
    "truncate_prefix",
]
