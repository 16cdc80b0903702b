"""Checkpoint parsing and scoring against episode facts."""

import pytest

from webskill.sim.checkpoints import (
    CheckpointError,
    CheckpointSpec,
    EpisodeFacts,
    check_one,
    checkpoint_score,
    parse_checkpoint,
)


def facts(**kwargs) -> EpisodeFacts:
    return EpisodeFacts(**kwargs)


def test_parse_fills_defaults():
    spec = parse_checkpoint(
        {"id": "c", "predicate": "message_contains", "substrings": ["hi"]}
    )
    assert spec.weight == 1.0
    assert spec.match == "all"
    assert spec.substrings == ("hi",)


def test_parse_coerces_bid_to_string():
    spec = parse_checkpoint(
        {"id": "c", "predicate": "element_value_equals", "bid": 30, "value": "Price"}
    )
    assert spec.bid == "30"


@pytest.mark.parametrize(
    "raw, message",
    [
        ("nope", "must be an object"),
        ({"predicate": "url_visited", "url": "/a"}, "id"),
        ({"id": "c", "predicate": "teleported"}, "predicate"),
        ({"id": "c", "predicate": "url_visited", "url": "/a", "weight": 0}, "weight"),
        ({"id": "c", "predicate": "url_visited", "url": "/a", "weight": True}, "weight"),
        ({"id": "c", "predicate": "message_contains"}, "substrings"),
        ({"id": "c", "predicate": "message_contains", "substrings": ["a"], "match": "half"}, "match"),
        ({"id": "c", "predicate": "url_visited"}, "url"),
        ({"id": "c", "predicate": "element_value_equals", "value": "x"}, "bid"),
        ({"id": "c", "predicate": "element_value_equals", "bid": "1", "value": 3}, "value"),
        ({"id": "c", "predicate": "flag_equals", "value": 1}, "name"),
    ],
)
def test_parse_rejects_malformed(raw, message):
    with pytest.raises(CheckpointError, match=message):
        parse_checkpoint(raw)


def test_message_contains_all_vs_any():
    f = facts(messages=["first part", "second part"])
    both = CheckpointSpec("c", "message_contains", substrings=("first", "second"))
    assert check_one(f, both) is True

    partial = CheckpointSpec("c", "message_contains", substrings=("first", "third"))
    assert check_one(f, partial) is False

    any_of = CheckpointSpec(
        "c", "message_contains", substrings=("first", "third"), match="any"
    )
    assert check_one(f, any_of) is True


def test_url_visited():
    f = facts(visited_urls=["/home", "/results"])
    assert check_one(f, CheckpointSpec("c", "url_visited", url="/results")) is True
    assert check_one(f, CheckpointSpec("c", "url_visited", url="/admin")) is False


def test_element_value_equals():
    f = facts(element_values={"30": "Price"})
    yes = CheckpointSpec("c", "element_value_equals", bid="30", value="Price")
    no = CheckpointSpec("c", "element_value_equals", bid="30", value="Relevance")
    missing = CheckpointSpec("c", "element_value_equals", bid="99", value="Price")
    assert check_one(f, yes) is True
    assert check_one(f, no) is False
    assert check_one(f, missing) is False


def test_flag_predicates():
    f = facts(flags={"note": "hello", "saved": ["a", "b"]})
    assert check_one(f, CheckpointSpec("c", "flag_equals", name="note", value="hello"))
    assert not check_one(f, CheckpointSpec("c", "flag_equals", name="note", value="bye"))
    assert check_one(f, CheckpointSpec("c", "flag_list_contains", name="saved", value="b"))
    assert not check_one(f, CheckpointSpec("c", "flag_list_contains", name="saved", value="z"))
    # a scalar flag never satisfies the list predicate
    assert not check_one(f, CheckpointSpec("c", "flag_list_contains", name="note", value="hello"))


def test_score_is_weighted_fraction():
    f = facts(messages=["done"], visited_urls=["/home"])
    specs = [
        CheckpointSpec("msg", "message_contains", weight=3.0, substrings=("done",)),
        CheckpointSpec("nav", "url_visited", weight=1.0, url="/admin"),
    ]
    assert checkpoint_score(f, specs) == pytest.approx(0.75)


def test_score_bounds():
    f = facts(messages=["done"])
    win = [CheckpointSpec("a", "message_contains", substrings=("done",))]
    lose = [CheckpointSpec("a", "message_contains", substrings=("missing",))]
    assert checkpoint_score(f, win) == 1.0
    assert checkpoint_score(f, lose) == 0.0


def test_score_rejects_empty_list():
    with pytest.raises(CheckpointError, match="empty"):
        checkpoint_score(facts(), [])
