"""Pretty-printer tests: canonical text and parse/print round trips."""

import pytest

from webskill.dsl.nodes import SkillProgram
from webskill.dsl.parser import parse_single_skill, parse_skill_source
from webskill.dsl.printer import canonicalize, render_skill, render_statements

ROUND_TRIP_SOURCES = [
    "def a():\n    click('1')\n    click('2')\n",
    "def b(x, y='d'):\n    fill('10', x)\n    fill('11', y)\n",
    (
        "def c(sub=None):\n"
        "    click('1')\n"
        "    if sub is not None:\n"
        "        click(sub)\n"
        "    else:\n"
        "        noop(100)\n"
    ),
    (
        "def d(ids):\n"
        "    for i, x in enumerate(ids[:-1]):\n"
        "        hover(x)\n"
        "    click(ids[-1])\n"
    ),
    (
        "def e(term):\n"
        '    """Search and close any popup.\n\n    Args:\n        term: query text.\n    """\n'
        "    if has_popup_window():\n"
        "        click('Close')\n"
        "    fill('12', term)\n"
        "    click('13')\n"
    ),
    "def g(opts):\n    select_option('30', ['a', 'b'])\n    click(opts[0])\n",
]


@pytest.mark.parametrize("source", ROUND_TRIP_SOURCES)
def test_parse_print_parse_is_structurally_stable(source):
    first = parse_single_skill(source)
    printed = render_skill(first)
    second = parse_single_skill(printed)
    assert second == first  # equality ignores provenance fields
    assert render_skill(second) == printed


@pytest.mark.parametrize("source", ROUND_TRIP_SOURCES)
def test_canonicalize_is_idempotent(source):
    once = canonicalize(source)
    assert canonicalize(once) == once


def test_canonical_text_is_exact():
    program = parse_single_skill(
        "def f( x ,y = 2 ):\n  fill( '10',x )\n  noop( y )\n"
    )
    assert render_skill(program) == (
        "def f(x, y=2):\n"
        "    fill('10', x)\n"
        "    noop(y)"
    )


def test_annotated_default_uses_spaced_equals():
    program = parse_single_skill(
        "def f(a: str = 'x', b=1):\n    fill('10', a)\n    noop(b)\n"
    )
    assert program.signature() == "f(a: str = 'x', b=1)"


def test_multiple_defs_join_with_blank_lines():
    text = canonicalize(
        "def a():\n    click('1')\n    click('2')\ndef b():\n    a()\n    noop(1)\n"
    )
    assert "\n\n\ndef b():" in text
    assert [p.name for p in parse_skill_source(text)] == ["a", "b"]


def test_docstring_rendering_round_trips():
    source = (
        "def f():\n"
        '    """One line."""\n'
        "    click('1')\n"
        "    click('2')\n"
    )
    program = parse_single_skill(source)
    assert '"""One line."""' in render_skill(program)
    assert parse_single_skill(render_skill(program)) == program


def test_docstring_with_awkward_quotes_still_round_trips():
    program = SkillProgram(
        name="f",
        params=(),
        docstring='ends with a quote "',
        body=parse_single_skill("def t():\n    click('1')\n    click('2')\n").body,
    )
    printed = render_skill(program)
    reparsed = parse_single_skill(printed)
    assert reparsed.body == program.body
    assert reparsed.docstring.rstrip("\\") != ""  # printable and parseable


def test_render_statements_indent_parameter():
    body = parse_single_skill("def f():\n    click('1')\n    click('2')\n").body
    assert render_statements(body) == "click('1')\nclick('2')"
    assert render_statements(body, indent=2) == (
        "        click('1')\n        click('2')"
    )


def test_numbers_render_by_repr():
    program = parse_single_skill("def f():\n    noop(1.5)\n    scroll(0, -200)\n")
    assert render_skill(program) == (
        "def f():\n    noop(1.5)\n    scroll(0, -200)"
    )
