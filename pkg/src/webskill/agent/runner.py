"""The observe-act episode loop."""

from __future__ import annotations

from ..dsl.errors import DslError
from ..dsl.nodes import Action
from ..dsl.interpreter import interpret_call
from ..llm.backend import Backend, ChatRequest
from ..llm.errors import OutputParseError
from ..llm.parsers import parse_policy_action
from ..llm.prompts import render_policy_prompt
from ..sim.env import WebEnv
from ..sim.spec import SiteSpec
from ..sim.tasks import Task
from .config import AgentConfig
from .episode import (
    Episode,
    EpisodeStep,
    PARSE_ERROR,
    TERMINATED_INFEASIBLE,
    TERMINATED_MAX_STEPS,
    TERMINATED_MESSAGE,
    TERMINATED_PREFIX_ERROR,
)
from .library import SkillLibrary
from .memory import Memory


def run_episode(
    task: Task,
    site: SiteSpec,
    config: AgentConfig,
    library: SkillLibrary,
    memory: Memory,
    backend: Backend,
    forced_prefix: list | None = None,
    expose_skills: bool | None = None,
) -> Episode:
    """Run one episode from a fresh environment reset.

    ``forced_prefix`` actions execute first, one agent step each (skill calls
    flatten through the interpreter); any error there ends the episode as
    prefix_error. ``expose_skills`` overrides whether library skills are
    callable by the policy (default: only in asi mode).
    """
    env = WebEnv(site)
    exposed = config.skills_in_action_space if expose_skills is None else expose_skills
    skill_names = library.names() if exposed else frozenset()

    episode = Episode(task.task_id, task.query)
    consumed = 0

    def finish(reason: str) -> Episode:
        episode.terminated_by = reason
        episode.final_observation = env.observe().text
        episode.final_state = env.state
        return episode

    for action in forced_prefix or []:
        if consumed >= config.max_steps:
            return finish(TERMINATED_MAX_STEPS)
        step = _execute(env, action, "", library, config, forced=True)
        step.index = len(episode.steps)
        episode.steps.append(step)
        consumed += 1
        if step.is_error:
            return finish(TERMINATED_PREFIX_ERROR)
        if step.is_terminating:
            episode.final_message = str(action.args[0]) if action.args else ""
            return finish(
                TERMINATED_MESSAGE if action.name == "send_msg_to_user"
                else TERMINATED_INFEASIBLE
            )

    parse_streak = 0
    while consumed < config.max_steps:
        obs = env.observe()
        history = [
            (s.url, s.observation, s.thought, s.action_text) for s in episode.steps
        ]
        prompt = render_policy_prompt(
            query=task.query,
            current_observation=obs.text,
            history=history,
            memory_entries=memory.render() if config.skills_in_memory else (),
            skills=library.prompt_entries() if exposed else (),
        )
        response = backend.complete(
            ChatRequest("policy", prompt, config.temperature, config.max_tokens)
        )
        fp = env.fingerprint()
        try:
            thought, action = parse_policy_action(response.text, skill_names)
        except OutputParseError as exc:
            episode.steps.append(EpisodeStep(
                index=len(episode.steps),
                url=obs.url,
                observation=obs.text,
                thought=response.text.strip(),
                action=None,
                action_text=f"(no action: {exc})",
                outcome=PARSE_ERROR,
                error=str(exc),
                fingerprint_before=fp,
                fingerprint_after=fp,
                url_after=obs.url,
            ))
            parse_streak += 1
            if parse_streak >= config.parse_failure_budget:
                return finish(TERMINATED_MAX_STEPS)
            continue
        parse_streak = 0
        step = _execute(env, action, thought, library, config)
        step.index = len(episode.steps)
        episode.steps.append(step)
        consumed += 1
        if step.is_terminating:
            episode.final_message = str(action.args[0]) if action.args else ""
            return finish(
                TERMINATED_MESSAGE if action.name == "send_msg_to_user"
                else TERMINATED_INFEASIBLE
            )
    return finish(TERMINATED_MAX_STEPS)


def _execute(env: WebEnv, action: Action, thought: str, library: SkillLibrary,
             config: AgentConfig, forced: bool = False) -> EpisodeStep:
    """Apply one agent-level action (primitive or flattened skill call)."""
    obs = env.observe()
    before = env.fingerprint()
    trace: list = []
    if action.is_skill:
        program = library.get(action.name)
        if program is None:
            outcome, error = "error", f"skill '{action.name}' is not in the library"
        else:
            try:
                result = interpret_call(
                    program, list(action.args), env, library.skills, config.depth_limit
                )
                trace = result.steps
                outcome = "error" if result.truncated_by_error else "ok"
                error = result.error
                program.call_count += 1
            except DslError as exc:
                outcome, error = "error", str(exc)
    else:
        result = env.step(action)
        outcome, error = result.outcome, result.error
    after = env.fingerprint()
    return EpisodeStep(
        index=0,
        url=obs.url,
        observation=obs.text,
        thought=thought,
        action=action,
        action_text=action.canonical(),
        outcome=outcome,
        error=error,
        fingerprint_before=before,
        fingerprint_after=after,
        url_after=env.observe().url,
        trace=trace,
        forced=forced,
    )
