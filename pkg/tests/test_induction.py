"""Induction pipeline: episode cleaning and candidate assembly."""

import pytest

from helpers import act, demo_site, policy_text, scripted, skill_act, PromptCapturingBackend
from webskill.agent.config import AgentConfig
from webskill.agent.library import SkillLibrary, commit_skills
from webskill.agent.memory import Memory
from webskill.agent.runner import run_episode
from webskill.dsl.parser import parse_single_skill
from webskill.induction.cleaner import (
    CleanEpisode,
    CleanStep,
    clean_episode,
    first_sentence,
    render_clean_trajectory,
)
from webskill.induction.inducer import (
    assemble_candidate,
    induce,
    load_candidate,
    parse_rewritten_trajectory,
    save_candidate,
    truncate_prefix,
)
from webskill.sim.tasks import load_tasks

from helpers import demo_tasks


@pytest.fixture
def site():
    return demo_site()


@pytest.fixture
def task():
    return load_tasks(demo_tasks())[0]


def demo_episode(site, task, extra_policy=()):
    backend = scripted({
        "policy": [
            policy_text("Search for the lamp. It should be cheap.", "fill('10', 'lamp')"),
            policy_text("Submit the search now.", "click('11')"),
            policy_text("", "send_msg_to_user('Beta Lamp')"),
            *extra_policy,
        ]
    })
    return run_episode(
        task, site, AgentConfig(max_steps=8, mode="vanilla"),
        SkillLibrary("demo"), Memory(), backend,
    )


# ---------------------------------------------------------------------------
# first_sentence


@pytest.mark.parametrize(
    "text, expected",
    [
        ("One sentence. Another follows.", "One sentence."),
        ("No terminator at all", "No terminator at all"),
        ("  spread   across\n lines. tail", "spread across lines."),
        ("Really? Yes.", "Really?"),
        ("Wow! Then more.", "Wow!"),
        ("v1.2 is fine. Next.", "v1.2 is fine."),
    ],
)
def test_first_sentence(text, expected):
    assert first_sentence(text) == expected


# ---------------------------------------------------------------------------
# clean_episode


def test_clean_episode_summarizes_thoughts(site, task):
    episode = demo_episode(site, task)
    backend = scripted({
        "cleaner": [
            "Searched the catalog for lamps.",
            "Submitted the search form. Extra detail here.",
        ]
    })
    clean = clean_episode(episode, backend)
    assert len(clean) == 3
    assert clean.steps[0].summary == "Searched the catalog for lamps."
    # model output is cut to its first sentence
    assert clean.steps[1].summary == "Submitted the search form."
    # blank thoughts skip the summarizer entirely
    assert clean.steps[2].summary == ""
    assert clean.fallback_count == 0
    assert backend.remaining() == {"cleaner": 0}


def test_clean_episode_drops_error_steps(site, task):
    backend = scripted({
        "policy": [
            policy_text("Bad click coming.", "click('404')"),
            "pure prose, unparseable",
            policy_text("Done now.", "send_msg_to_user('x')"),
        ]
    })
    episode = run_episode(
        task, site, AgentConfig(max_steps=8, mode="vanilla"),
        SkillLibrary("demo"), Memory(), backend,
    )
    cleaner_backend = scripted({"cleaner": ["Sent the final answer."]})
    clean = clean_episode(episode, cleaner_backend)
    assert len(clean) == 1
    assert clean.steps[0].action_text == "send_msg_to_user('x')"


def test_clean_episode_unwraps_quoted_output(site, task):
    episode = demo_episode(site, task)
    backend = scripted({
        "cleaner": [
            "'''Searched the catalog.'''",
            "Example output: Submitted the form.",
        ]
    })
    clean = clean_episode(episode, backend)
    assert clean.steps[0].summary == "Searched the catalog."
    assert clean.steps[1].summary == "Submitted the form."


def test_clean_episode_falls_back_on_blank_summary(site, task):
    episode = demo_episode(site, task)
    backend = scripted({"cleaner": ["''''''", "   "]})
    clean = clean_episode(episode, backend)
    assert clean.steps[0].summary == "Search for the lamp."
    assert clean.steps[1].summary == "Submit the search now."
    assert clean.fallback_count == 2


def test_render_clean_trajectory():
    clean = CleanEpisode("e1", "query")
    clean.steps = [
        CleanStep("Searched.", act("fill", "10", "lamp"), "fill('10', 'lamp')"),
        CleanStep("", act("click", "11"), "click('11')"),
    ]
    assert render_clean_trajectory(clean) == "# Searched.\nfill('10', 'lamp')\nclick('11')"


# ---------------------------------------------------------------------------
# parse_rewritten_trajectory / truncate_prefix


def test_rewritten_trajectory_parses_known_calls():
    actions = parse_rewritten_trajectory(
        "# comment\nsearch_catalog('lamp')\n\nsend_msg_to_user('done')",
        frozenset({"search_catalog"}),
    )
    assert [a.name for a in actions] == ["search_catalog", "send_msg_to_user"]
    assert actions[0].is_skill


def test_rewritten_trajectory_stops_at_first_bad_line():
    diagnostics = []
    actions = parse_rewritten_trajectory(
        "click('1')\nmystery_helper('x')\nclick('2')",
        frozenset(),
        diagnostics=diagnostics,
    )
    assert [a.name for a in actions] == ["click"]
    assert diagnostics == ["rewritten line 2: 'mystery_helper' is not an available action or skill"]


def test_rewritten_trajectory_stops_at_non_literal():
    diagnostics = []
    actions = parse_rewritten_trajectory(
        "click(compute_bid())", frozenset(), diagnostics=diagnostics
    )
    assert actions == []
    assert "rewritten line 1" in diagnostics[0]


def test_truncate_prefix_keeps_through_last_skill_call():
    actions = [
        act("fill", "10", "x"),
        skill_act("helper"),
        act("click", "11"),
        skill_act("other"),
        act("send_msg_to_user", "hi"),
    ]
    prefix = truncate_prefix(actions)
    assert prefix == actions[:4]


def test_truncate_prefix_empty_without_skill_calls():
    assert truncate_prefix([act("click", "1"), act("fill", "2", "x")]) == []
    assert truncate_prefix([]) == []


# ---------------------------------------------------------------------------
# assemble_candidate


GOOD_SOURCE = """\
def search_catalog(term: str):
    \"\"\"Search the catalog.\"\"\"
    fill('10', term)
    click('11')
"""


def test_assemble_good_candidate():
    candidate = assemble_candidate(
        "e1",
        [GOOD_SOURCE],
        "search_catalog('lamp')\nsend_msg_to_user('Beta Lamp')",
        SkillLibrary("demo"),
    )
    assert candidate.attempted
    assert not candidate.void
    assert [s.name for s in candidate.skills] == ["search_catalog"]
    assert [a.name for a in candidate.prefix] == ["search_catalog"]
    assert candidate.diagnostics == []


def test_assemble_rejects_primitive_name():
    source = "def click(x):\n    fill('10', x)\n    hover('11')\n"
    candidate = assemble_candidate("e1", [source], "", SkillLibrary("demo"))
    assert candidate.skills == []
    assert any("name already taken" in d for d in candidate.diagnostics)


def test_assemble_rejects_library_collision_unless_shadowable():
    library = commit_skills(
        SkillLibrary("demo"), [parse_single_skill(GOOD_SOURCE)], ["search_catalog"]
    )
    candidate = assemble_candidate("e1", [GOOD_SOURCE], "", library)
    assert candidate.skills == []
    assert any("name already taken" in d for d in candidate.diagnostics)

    allowed = assemble_candidate(
        "e1", [GOOD_SOURCE], "search_catalog('x')", library,
        shadowable=frozenset({"search_catalog"}),
    )
    assert [s.name for s in allowed.skills] == ["search_catalog"]


def test_assemble_rejects_duplicates():
    candidate = assemble_candidate(
        "e1", [GOOD_SOURCE, GOOD_SOURCE], "search_catalog('x')", SkillLibrary("demo")
    )
    assert len(candidate.skills) == 1
    assert any("duplicate definition" in d for d in candidate.diagnostics)


def test_assemble_drops_invalid_definitions():
    too_short = "def tiny():\n    click('1')\n"
    candidate = assemble_candidate(
        "e1", [too_short, GOOD_SOURCE], "search_catalog('x')", SkillLibrary("demo")
    )
    assert [s.name for s in candidate.skills] == ["search_catalog"]
    assert any("statement-count" in d for d in candidate.diagnostics)


def test_assemble_drops_unparseable_definitions():
    broken = "def broken(:\n    click('1')\n"
    candidate = assemble_candidate(
        "e1", [broken, GOOD_SOURCE], "search_catalog('x')", SkillLibrary("demo")
    )
    assert [s.name for s in candidate.skills] == ["search_catalog"]
    assert candidate.attempted
    assert any("syntax" in d.lower() for d in candidate.diagnostics)


def test_assemble_void_without_skill_call_in_rewrite():
    candidate = assemble_candidate(
        "e1", [GOOD_SOURCE], "click('11')\nsend_msg_to_user('x')", SkillLibrary("demo")
    )
    assert candidate.skills  # definition fine
    assert candidate.prefix == []
    assert candidate.void
    assert "rewritten trajectory never calls a new skill" in candidate.diagnostics


def test_assemble_void_without_sources():
    candidate = assemble_candidate("e1", [], "click('11')", SkillLibrary("demo"))
    assert not candidate.attempted
    assert candidate.void


def test_rewritten_calls_resolve_against_library_too():
    library = commit_skills(
        SkillLibrary("demo"), [parse_single_skill(GOOD_SOURCE)], ["search_catalog"]
    )
    new_source = "def both_steps(term: str):\n    fill('10', term)\n    click('11')\n    click('12')\n"
    candidate = assemble_candidate(
        "e1", [new_source], "search_catalog('a')\nboth_steps('b')", library
    )
    assert [a.name for a in candidate.prefix] == ["search_catalog", "both_steps"]


# ---------------------------------------------------------------------------
# induce (one backend call end to end)


INDUCER_RESPONSE = """Two steps repeat, so one function covers them.

```python
def search_catalog(term: str):
    \"\"\"Search the catalog for a term.

    Args:
        term: what to look for

    Returns:
        None

    Examples:
        search_catalog('lamp')
    \"\"\"
    fill('10', term)
    click('11')
```

Example 1:
Instruction: Find the cheapest lamp and tell me its name.
```
search_catalog('lamp')
send_msg_to_user('Beta Lamp')
```
"""


def test_induce_end_to_end(site, task):
    episode = demo_episode(site, task)
    clean = clean_episode(episode, scripted({"cleaner": ["Searched.", "Submitted."]}))

    backend = PromptCapturingBackend(scripted({"inducer": [INDUCER_RESPONSE]}))
    candidate = induce(clean, SkillLibrary("demo"), backend)

    prompt = backend.prompts["inducer"][0]
    assert "Existing functions in the skill library:\n(none)" in prompt
    assert "# Searched.\nfill('10', 'lamp')" in prompt

    assert candidate.attempted
    assert not candidate.void
    assert [s.name for s in candidate.skills] == ["search_catalog"]
    assert [a.name for a in candidate.prefix] == ["search_catalog"]
    assert candidate.instruction == "Find the cheapest lamp and tell me its name."
    assert candidate.raw_output == INDUCER_RESPONSE
    assert candidate.skills[0].origin_episode == episode.task_id


def test_induce_requires_steps():
    with pytest.raises(ValueError, match="empty episode"):
        induce(CleanEpisode("e1", "q"), SkillLibrary("demo"), scripted({"inducer": ["x"]}))


def test_induce_without_rewrite_flags_it(site, task):
    episode = demo_episode(site, task)
    clean = clean_episode(episode, scripted({"cleaner": ["a.", "b."]}))
    backend = scripted({"inducer": ["no code blocks at all"]})
    candidate = induce(clean, SkillLibrary("demo"), backend)
    assert not candidate.attempted
    assert candidate.void
    assert "no rewritten trajectory in output" in candidate.diagnostics


def test_induce_lists_library_signatures(site, task):
    library = commit_skills(
        SkillLibrary("demo"), [parse_single_skill(GOOD_SOURCE)], ["search_catalog"]
    )
    episode = demo_episode(site, task)
    clean = clean_episode(episode, scripted({"cleaner": ["a.", "b."]}))
    backend = PromptCapturingBackend(scripted({"inducer": ["nothing useful"]}))
    induce(clean, library, backend)
    assert "search_catalog(term: str)" in backend.prompts["inducer"][0]


# ---------------------------------------------------------------------------
# Candidate files


def test_candidate_save_load_round_trip(tmp_path):
    candidate = assemble_candidate(
        "e1",
        [GOOD_SOURCE],
        "search_catalog('lamp')\nsend_msg_to_user('x')",
        SkillLibrary("demo"),
    )
    path = tmp_path / "candidate.json"
    save_candidate(candidate, path)
    loaded = load_candidate(path, SkillLibrary("demo"))
    assert loaded.episode_id == "e1"
    assert [s.name for s in loaded.skills] == ["search_catalog"]
    assert [a.name for a in loaded.prefix] == ["search_catalog"]


def test_candidate_load_rejects_bad_schema(tmp_path):
    path = tmp_path / "candidate.json"
    path.write_text('{"schema": "nope/1"}')
    with pytest.raises(ValueError, match="expected schema"):
        load_candidate(path, SkillLibrary("demo"))

    path.write_text('{"schema": "webskill.candidate/1", "skills": "oops"}')
    with pytest.raises(ValueError, match="must be a list"):
        load_candidate(path, SkillLibrary("demo"))
