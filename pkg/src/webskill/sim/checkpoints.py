"""Programmatic task checkpoints: declarative predicates over episode facts.

Each checkpoint tests one observable outcome (a message substring, a visited
url, a final element value, a flag). Scoring is the weighted fraction of
passing checkpoints, so multi-stage tasks earn partial credit. This module
is self-contained: it sees only plain data extracted from an episode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PREDICATES = frozenset(
    ["message_contains", "url_visited", "element_value_equals", "flag_equals", "flag_list_contains"]
)


class CheckpointError(Exception):
    """Malformed checkpoint specification."""


@dataclass(frozen=True)
class CheckpointSpec:
    id: str
    predicate: str
    weight: float = 1.0
    substrings: tuple = ()      # message_contains
    match: str = "all"          # message_contains: all | any
    url: str | None = None      # url_visited
    page: str | None = None     # element_value_equals
    bid: str | None = None      # element_value_equals
    name: str | None = None     # flag_equals / flag_list_contains
    value: object = None        # element_value_equals / flag_equals / flag_list_contains


@dataclass
class EpisodeFacts:
    """The observable record a finished episode leaves behind."""

    messages: list = field(default_factory=list)
    visited_urls: list = field(default_factory=list)
    element_values: dict = field(default_factory=dict)  # bid -> final value
    flags: dict = field(default_factory=dict)


def parse_checkpoint(raw: dict, path: str = "checkpoint") -> CheckpointSpec:
    if not isinstance(raw, dict):
        raise CheckpointError(f"{path}: must be an object")
    cid = raw.get("id")
    if not isinstance(cid, str) or not cid:
        raise CheckpointError(f"{path}.id: required non-empty string")
    predicate = raw.get("predicate")
    if predicate not in PREDICATES:
        raise CheckpointError(f"{path}.predicate: must be one of {sorted(PREDICATES)}")
    weight = raw.get("weight", 1)
    if not isinstance(weight, (int, float)) or isinstance(weight, bool) or weight <= 0:
        raise CheckpointError(f"{path}.weight: must be a positive number")

    spec = CheckpointSpec(
        id=cid,
        predicate=predicate,
        weight=float(weight),
        substrings=tuple(raw.get("substrings", ())),
        match=raw.get("match", "all"),
        url=raw.get("url"),
        page=raw.get("page"),
        bid=str(raw["bid"]) if "bid" in raw else None,
        name=raw.get("name"),
        value=raw.get("value"),
    )
    _check_fields(spec, path)
    return spec


def _check_fields(spec: CheckpointSpec, path: str) -> None:
    p = spec.predicate
    if p == "message_contains":
        if not spec.substrings or any(not isinstance(s, str) for s in spec.substrings):
            raise CheckpointError(f"{path}.substrings: required list of strings")
        if spec.match not in ("all", "any"):
            raise CheckpointError(f"{path}.match: must be 'all' or 'any'")
    elif p == "url_visited":
        if not isinstance(spec.url, str) or not spec.url:
            raise CheckpointError(f"{path}.url: required non-empty string")
    elif p == "element_value_equals":
        if not spec.bid:
            raise CheckpointError(f"{path}.bid: required")
        if not isinstance(spec.value, str):
            raise CheckpointError(f"{path}.value: required string")
    else:  # flag_equals / flag_list_contains
        if not isinstance(spec.name, str) or not spec.name:
            raise CheckpointError(f"{path}.name: required non-empty string")


def check_one(facts: EpisodeFacts, spec: CheckpointSpec) -> bool:
    p = spec.predicate
    if p == "message_contains":
        text = "\n".join(facts.messages)
        hits = (s in text for s in spec.substrings)
        return all(hits) if spec.match == "all" else any(hits)
    if p == "url_visited":
        return spec.url in facts.visited_urls
    if p == "element_value_equals":
        return facts.element_values.get(spec.bid) == spec.value
    if p == "flag_equals":
        return facts.flags.get(spec.name) == spec.value
    if p == "flag_list_contains":
        current = facts.flags.get(spec.name)
        return isinstance(current, list) and spec.value in current
    raise CheckpointError(f"unknown predicate '{p}'")


def checkpoint_score(facts: EpisodeFacts, specs: list) -> float:
    """Weighted fraction of passing checkpoints, in [0, 1]."""
    if not specs:
        raise CheckpointError("checkpoint list is empty")
    total = sum(s.weight for s in specs)
    passed = sum(s.weight for s in specs if check_one(facts, s))
    return passed / total
