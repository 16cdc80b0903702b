"""Judging episodes and gating skill candidates on re-execution."""

import pytest

from helpers import act, demo_site, policy_text, scripted
from webskill.agent.config import AgentConfig
from webskill.agent.library import NameCollision, SkillLibrary, commit_skills
from webskill.agent.memory import Memory
from webskill.agent.runner import run_episode
from webskill.dsl.parser import parse_single_skill
from webskill.induction.inducer import assemble_candidate
from webskill.sim.tasks import load_tasks
from webskill.verification.judge import (
    EpisodeVerdict,
    build_episode_facts,
    judge_episode,
)
from webskill.verification.verify import (
    VerificationReport,
    gate_and_commit,
    provisional_library,
    verify_candidate,
)

from helpers import demo_tasks


SEARCH_SOURCE = """\
def search_catalog(term: str):
    \"\"\"Search the catalog for a term.\"\"\"
    fill('10', term)
    click('11')
"""


@pytest.fixture
def site():
    return demo_site()


@pytest.fixture
def task():
    return load_tasks(demo_tasks())[0]


def finished_episode(site, task, message="Beta Lamp"):
    backend = scripted({
        "policy": [
            policy_text("Search.", "fill('10', 'lamp')"),
            policy_text("Submit.", "click('11')"),
            policy_text("Answer.", f"send_msg_to_user('{message}')"),
        ]
    })
    return run_episode(
        task, site, AgentConfig(max_steps=8, mode="vanilla"),
        SkillLibrary("demo"), Memory(), backend,
    )


# ---------------------------------------------------------------------------
# Episode facts


def test_build_episode_facts(site, task):
    episode = finished_episode(site, task)
    facts = build_episode_facts(episode)
    assert facts.messages == ["Beta Lamp"]
    assert facts.visited_urls[0] == "/home"
    assert "/results" in facts.visited_urls
    assert facts.element_values["10"] == "lamp"
    assert "__results__" in facts.flags


def test_build_episode_facts_requires_final_state(site, task):
    episode = finished_episode(site, task)
    episode.final_state = None
    with pytest.raises(ValueError, match="no final environment state"):
        build_episode_facts(episode)


# ---------------------------------------------------------------------------
# Judging


def test_checkpoint_judging_success_and_failure(site, task):
    good = judge_episode(task, finished_episode(site, task))
    assert good.mode == "checkpoint"
    assert good.success
    assert good.score == 1.0
    assert good.rationale == "all checkpoints passed"

    bad = judge_episode(task, finished_episode(site, task, message="Gamma Chair"))
    assert not bad.success
    assert bad.score == 0.0
    assert bad.rationale == "failed: named"


def test_auto_mode_uses_lm_without_checkpoints(site, task):
    import dataclasses

    bare = dataclasses.replace(task, checkpoints=())
    episode = finished_episode(site, bare)
    backend = scripted({"judge": ["Thoughts: looks right\nStatus: success"]})
    verdict = judge_episode(bare, episode, backend)
    assert verdict.mode == "lm"
    assert verdict.success
    assert verdict.rationale == "looks right"


def test_lm_judging_fails_closed_on_unparseable(site, task):
    import dataclasses

    bare = dataclasses.replace(task, checkpoints=())
    episode = finished_episode(site, bare)
    backend = scripted({"judge": ["no verdict to be found"]})
    verdict = judge_episode(bare, episode, backend)
    assert verdict.verdict == 0
    assert verdict.rationale.startswith("unparseable verdict:")


def test_judge_mode_validation(site, task):
    episode = finished_episode(site, task)
    with pytest.raises(ValueError, match="mode must be one of"):
        judge_episode(task, episode, mode="vibes")

    import dataclasses

    bare = dataclasses.replace(task, checkpoints=())
    with pytest.raises(ValueError, match="has no checkpoints"):
        judge_episode(bare, episode, mode="checkpoint")
    with pytest.raises(ValueError, match="needs a backend"):
        judge_episode(bare, episode, mode="lm")


def test_lm_failure_status(site, task):
    import dataclasses

    bare = dataclasses.replace(task, checkpoints=())
    episode = finished_episode(site, bare)
    backend = scripted({"judge": ["Thoughts: wrong item\nStatus: failure"]})
    verdict = judge_episode(bare, episode, backend)
    assert verdict.verdict == 0
    assert verdict.score == 0.0


# ---------------------------------------------------------------------------
# provisional_library


def test_provisional_library_exposes_without_committing():
    base = SkillLibrary("demo")
    program = parse_single_skill(SEARCH_SOURCE)
    provisional = provisional_library(base, [program])
    assert "search_catalog" in provisional.names()
    assert base.names() == frozenset()
    assert provisional.commit_seq == base.commit_seq

    committed = commit_skills(base, [program], ["search_catalog"])
    with pytest.raises(NameCollision):
        provisional_library(committed, [parse_single_skill(SEARCH_SOURCE)])


# ---------------------------------------------------------------------------
# verify_candidate


def make_candidate(rewritten="search_catalog('lamp')"):
    return assemble_candidate("e1", [SEARCH_SOURCE], rewritten, SkillLibrary("demo"))


def test_verify_passing_candidate(site, task):
    candidate = make_candidate()
    backend = scripted({
        "policy": [policy_text("Answer.", "send_msg_to_user('Beta Lamp')")]
    })
    report = verify_candidate(
        task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
        candidate, backend,
    )
    assert report.correctness
    assert report.skill_usage
    assert report.skill_validity
    assert report.passed
    assert report.candidate_names == ("search_catalog",)
    assert report.called_names == ("search_catalog",)
    assert report.verdict.success
    assert report.episode.steps[0].forced
    assert report.diagnostics == []


def test_verify_fails_on_wrong_outcome(site, task):
    candidate = make_candidate()
    backend = scripted({
        "policy": [policy_text("Answer.", "send_msg_to_user('Gamma Chair')")]
    })
    report = verify_candidate(
        task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
        candidate, backend,
    )
    assert not report.correctness
    assert report.skill_usage and report.skill_validity
    assert not report.passed
    assert any("judged unsuccessful" in d for d in report.diagnostics)


def test_verify_fails_on_prefix_error(site, task):
    source = "def bad_nav(url: str):\n    goto(url)\n    click('999')\n"
    candidate = assemble_candidate("e1", [source], "bad_nav('/void')", SkillLibrary("demo"))
    backend = scripted({"policy": []})
    report = verify_candidate(
        task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
        candidate, backend,
    )
    assert not report.passed
    assert not report.correctness
    assert report.verdict is None
    assert any(d.startswith("prefix step 0 (bad_nav('/void')) failed:") for d in report.diagnostics)


def test_verify_flags_no_effect_skill(site, task):
    # the skill runs clean but changes nothing, so validity fails
    source = "def idle_pair(a: str):\n    noop(500)\n    hover(a)\n"
    candidate = assemble_candidate("e1", [source], "idle_pair('12')", SkillLibrary("demo"))
    backend = scripted({
        "policy": [policy_text("Answer.", "send_msg_to_user('Beta Lamp')")]
    })
    report = verify_candidate(
        task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
        candidate, backend,
    )
    assert report.skill_usage
    assert not report.skill_validity
    assert not report.passed
    assert any("left the environment unchanged" in d for d in report.diagnostics)


def test_verify_rejects_void_candidate(site, task):
    candidate = assemble_candidate("e1", [], "", SkillLibrary("demo"))
    with pytest.raises(ValueError, match="void"):
        verify_candidate(
            task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
            candidate, scripted({}),
        )


def test_verify_usage_false_when_policy_never_calls(site, task):
    # prefix contains only primitives up to the skill call? No: the prefix
    # always ends at a skill call, so drop usage by making the prefix empty
    # via a candidate whose rewrite uses the skill but the call errors out.
    source = "def go_void(a: str):\n    click(a)\n    click('998')\n"
    candidate = assemble_candidate("e1", [source], "go_void('999')", SkillLibrary("demo"))
    backend = scripted({"policy": []})
    report = verify_candidate(
        task, site, AgentConfig(max_steps=8), SkillLibrary("demo"),
        candidate, backend,
    )
    # the call errored: usage is true (it was called) but validity fails
    assert report.skill_usage
    assert not report.skill_validity
    assert any("errored" in d for d in report.diagnostics)


# ---------------------------------------------------------------------------
# gate_and_commit


def passing_report(**overrides):
    defaults = dict(
        episode_id="e1",
        task_id="d1",
        correctness=True,
        skill_usage=True,
        skill_validity=True,
        verdict=EpisodeVerdict(1, "checkpoint", 1.0),
        episode=None,
        candidate_names=("search_catalog",),
        called_names=("search_catalog",),
    )
    defaults.update(overrides)
    return VerificationReport(**defaults)


def test_gate_commits_on_full_pass():
    library = SkillLibrary("demo")
    candidate = make_candidate()
    updated, names = gate_and_commit(library, candidate, passing_report())
    assert names == ["search_catalog"]
    assert "search_catalog" in updated.names()
    assert updated.get("search_catalog").status == "verified"
    assert library.names() == frozenset()


@pytest.mark.parametrize(
    "failing",
    [
        {"correctness": False},
        {"skill_usage": False},
        {"skill_validity": False},
        {"called_names": ()},
    ],
)
def test_gate_blocks_on_any_failure(failing):
    library = SkillLibrary("demo")
    candidate = make_candidate()
    updated, names = gate_and_commit(library, candidate, passing_report(**failing))
    assert updated is library
    assert names == []


def test_gate_commits_only_called_skills():
    extra = "def extra_pair():\n    click('12')\n    click('33')\n"
    candidate = assemble_candidate(
        "e1", [SEARCH_SOURCE, extra], "search_catalog('x')", SkillLibrary("demo")
    )
    assert {s.name for s in candidate.skills} == {"search_catalog", "extra_pair"}
    updated, names = gate_and_commit(SkillLibrary("demo"), candidate, passing_report())
    assert names == ["search_catalog"]
    assert set(updated.names()) == {"search_catalog"}
