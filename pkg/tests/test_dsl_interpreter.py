"""Interpreter tests: flattening skills into primitive traces on a live env."""

import pytest

from helpers import act, demo_site
from webskill.dsl.errors import (
    ArityMismatch,
    DepthExceeded,
    EvaluationError,
    UnboundIdentifier,
)
from webskill.dsl.interpreter import (
    bind_arguments,
    evaluate_expr,
    interpret_call,
)
from webskill.dsl.nodes import Index, ListLit, NumberLit, ParamRef, Slice, StringLit
from webskill.dsl.parser import parse_single_skill
from webskill.sim.env import WebEnv


@pytest.fixture
def env():
    return WebEnv(demo_site())


def flat(trace) -> list:
    return [s.action.canonical() for s in trace.steps]


def test_straight_line_flattening(env):
    skill = parse_single_skill(
        "def search(term):\n    fill('10', term)\n    click('11')\n"
    )
    trace = interpret_call(skill, ["lamp"], env)
    assert flat(trace) == ["fill('10', 'lamp')", "click('11')"]
    assert trace.ok and not trace.truncated_by_error
    assert env.state.current_url == "/results"


def test_evaluate_expr_forms():
    assert evaluate_expr(StringLit("x"), {}) == "x"
    assert evaluate_expr(NumberLit(3), {}) == 3
    assert evaluate_expr(ListLit((StringLit("a"), ParamRef("b"))), {"b": "B"}) == ["a", "B"]
    assert evaluate_expr(Index(ParamRef("xs"), -1), {"xs": [1, 2, 3]}) == 3
    assert evaluate_expr(Slice(ParamRef("xs"), None, -1), {"xs": [1, 2, 3]}) == [1, 2]

    with pytest.raises(UnboundIdentifier):
        evaluate_expr(ParamRef("nope"), {})
    with pytest.raises(EvaluationError, match="out of range"):
        evaluate_expr(Index(ParamRef("xs"), 5), {"xs": [1]})
    with pytest.raises(EvaluationError, match="cannot index"):
        evaluate_expr(Index(ParamRef("x"), 0), {"x": 7})
    with pytest.raises(EvaluationError, match="cannot slice"):
        evaluate_expr(Slice(ParamRef("x"), None, None), {"x": 7})


def test_bind_arguments_fills_defaults():
    skill = parse_single_skill(
        "def nav(a, b=None):\n    click(a)\n    if b:\n        click(b)\n"
    )
    assert bind_arguments(skill, ["1"]) == {"a": "1", "b": None}
    assert bind_arguments(skill, ["1", "2"]) == {"a": "1", "b": "2"}
    with pytest.raises(ArityMismatch):
        bind_arguments(skill, [])
    with pytest.raises(ArityMismatch):
        bind_arguments(skill, ["1", "2", "3"])


def test_truthy_condition_skips_or_takes_the_branch(env):
    skill = parse_single_skill(
        "def nav(a, b=None):\n    click(a)\n    if b:\n        click(b)\n"
    )
    only = interpret_call(skill, ["12"], env)
    assert flat(only) == ["click('12')"]

    env.reset()
    both = interpret_call(skill, ["12", "33"], env)
    assert flat(both) == ["click('12')", "click('33')"]
    assert env.state.current_url == "/home"


def test_else_branch(env):
    skill = parse_single_skill(
        "def f(x):\n"
        "    if x is None:\n"
        "        click('12')\n"
        "    else:\n"
        "        click('13')\n"
        "    noop(1)\n"
    )
    trace = interpret_call(skill, [None], env)
    assert flat(trace) == ["click('12')", "noop(1)"]

    env.reset()
    trace = interpret_call(skill, ["anything"], env)
    assert flat(trace) == ["click('13')", "noop(1)"]
    assert env.state.popup == "promo"


def test_predicate_condition_consults_the_live_page(env):
    skill = parse_single_skill(
        "def dismiss():\n"
        "    click('13')\n"
        "    if has_popup_window():\n"
        "        click('90')\n"
    )
    trace = interpret_call(skill, [], env)
    assert flat(trace) == ["click('13')", "click('90')"]
    assert env.state.popup is None


def test_for_loop_and_enumerate(env):
    skill = parse_single_skill(
        "def walk(ids):\n"
        "    for i, x in enumerate(ids[:-1]):\n"
        "        hover(x)\n"
        "    click(ids[-1])\n"
    )
    trace = interpret_call(skill, [["10", "11", "12"]], env)
    assert flat(trace) == ["hover('10')", "hover('11')", "click('12')"]


def test_loop_iterable_must_evaluate_to_a_list(env):
    skill = parse_single_skill("def f(xs):\n    noop(1)\n    for x in xs:\n        click(x)\n")
    with pytest.raises(EvaluationError, match="must be a list"):
        interpret_call(skill, ["not-a-list"], env)


def test_nested_skill_calls_flatten(env):
    inner = parse_single_skill("def go_catalog():\n    click('12')\n    noop(1)\n")
    outer = parse_single_skill("def f():\n    go_catalog()\n    click('33')\n")
    trace = interpret_call(outer, [], env, {"go_catalog": inner})
    assert flat(trace) == ["click('12')", "noop(1)", "click('33')"]
    assert env.state.current_url == "/home"


def test_depth_limit_blocks_expansion_before_any_step(env):
    inner = parse_single_skill("def g():\n    click('12')\n    noop(1)\n")
    outer = parse_single_skill("def f():\n    g()\n    noop(1)\n")
    before = env.fingerprint()
    with pytest.raises(DepthExceeded):
        interpret_call(outer, [], env, {"g": inner}, depth_limit=1)
    assert env.fingerprint() == before

    with pytest.raises(DepthExceeded, match="at least 1"):
        interpret_call(outer, [], env, {"g": inner}, depth_limit=0)


def test_depth_limit_counts_nesting_levels(env):
    a = parse_single_skill("def a():\n    b()\n    noop(1)\n")
    b = parse_single_skill("def b():\n    c()\n    noop(2)\n")
    c = parse_single_skill("def c():\n    click('12')\n    noop(3)\n")
    lib = {"a": a, "b": b, "c": c}
    trace = interpret_call(a, [], env, lib, depth_limit=3)
    assert flat(trace) == ["click('12')", "noop(3)", "noop(2)", "noop(1)"]

    env.reset()
    with pytest.raises(DepthExceeded):
        interpret_call(a, [], env, lib, depth_limit=2)


def test_unknown_nested_skill(env):
    outer = parse_single_skill("def f():\n    ghost()\n    noop(1)\n")
    with pytest.raises(UnboundIdentifier, match="ghost"):
        interpret_call(outer, [], env, {})


def test_env_error_truncates_the_trace(env):
    skill = parse_single_skill(
        "def f():\n    click('12')\n    click('no-such-bid')\n    click('33')\n"
    )
    trace = interpret_call(skill, [], env)
    assert trace.truncated_by_error
    assert not trace.ok
    assert flat(trace) == ["click('12')", "click('no-such-bid')"]
    assert "no-such-bid" in trace.error
    # the failed step left the environment where the previous step put it
    assert env.state.current_url == "/catalog"
    assert trace.steps[-1].fingerprint_before == trace.steps[-1].fingerprint_after


def test_error_inside_a_nested_call_stops_the_caller_too(env):
    inner = parse_single_skill("def g():\n    click('missing')\n    noop(1)\n")
    outer = parse_single_skill("def f():\n    g()\n    click('12')\n")
    trace = interpret_call(outer, [], env, {"g": inner})
    assert trace.truncated_by_error
    assert flat(trace) == ["click('missing')"]


def test_changed_state_tracks_fingerprints(env):
    skill = parse_single_skill("def f():\n    noop(5)\n    fill('10', 'lamp')\n")
    trace = interpret_call(skill, [], env)
    noop_step, fill_step = trace.steps
    assert noop_step.outcome == "no_effect"
    assert not noop_step.changed_state
    assert fill_step.outcome == "ok"
    assert fill_step.changed_state


def test_elem_coercion_applies_to_runtime_values(env):
    # a list of ints flows through a loop into click(); bids coerce to strings
    skill = parse_single_skill(
        "def f(ids):\n    noop(1)\n    for x in ids:\n        hover(x)\n"
    )
    trace = interpret_call(skill, [[10, 11]], env)
    assert flat(trace) == ["noop(1)", "hover('10')", "hover('11')"]
