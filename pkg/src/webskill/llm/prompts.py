"""Prompt templates and renderers for the four model roles.

Renderers are deterministic: same context, same text. The policy prompt's
action list is where induced skills enter the agent's action space, so the
skill section is sorted by name to keep prompts canonical.
"""

from __future__ import annotations

from typing import Sequence

from ..dsl.primitives import PRIMITIVES
from .errors import MissingField

# How many most-recent steps keep their full page snapshot in the policy
# prompt; older steps are elided to their url line.
FULL_OBSERVATION_WINDOW = 3

POLICY_INSTRUCTION = """\
You are a web navigation agent. You help a user complete a task on a website, \
one action at a time, based on the observations and actions so far. Each page \
is shown as an accessibility tree; interactable elements carry a bid in \
square brackets. When the task is done, report to the user with \
send_msg_to_user; if the task cannot be done, use report_infeasible."""

POLICY_FORMAT = """\
Think step by step about the current page and the task. Then output exactly one \
action as the final line, inside a fenced code block, for example:

```
click('183')
```"""

JUDGE_INSTRUCTION = """\
You are an expert in evaluating the performance of a web navigation agent. The agent is designed to help a human user navigate a website to complete a task. Given the user's intent, the agent's action history, the final state of the webpage, and the agent's response to the user, your goal is to decide whether the agent's execution is successful or not. Please be careful of each detail and strict about the evaluation process.

There are three types of tasks:
1. Information seeking: The user wants to obtain certain information from the webpage, such as the information of a product, reviews, map info, comparison of map routes, etc. The bot's response must contain the information the user wants, or explicitly state that the information is not available. Otherwise, e.g. the bot encounters an exception and respond with the error content, the task is considered a failure. Besides, be careful about the sufficiency of the agent's actions. For example, when asked to list the top-searched items in a shop, the agent should order the items by the number of searches, and then return the top items. If the ordering action is missing, the task is likely to fail.
2. Site navigation: The user wants to navigate to a specific page. Carefully examine the bot's action history and the final state of the webpage to determine whether the bot successfully completes the task. No need to consider the bot's response.
3. Content modification: The user wants to modify the content of a webpage or configuration. Carefully examine the bot's action history and the final state of the webpage to determine whether the bot successfully completes the task. No need to consider the bot's response.

*IMPORTANT*
Please be strict about the evaluation process.
Format your response into two lines as shown below:

Thoughts: <your thoughts and reasoning process>

Status: "success" or "failure"
"""

CLEANER_INSTRUCTION = """\
You are a helpful assistant in summarizing web browsing actions. Your task is to summarize the main action taken and the corresponding state change, from the input thought process and environmental description.

Example input:
'''Let me think about this step by step:
1) I've clicked the Columns button and based on the accessibility tree, I can now see a list of available columns that can be shown/hidden.
2) Looking through the available columns in the accessibility tree, I don't see any direct column for "Number of Orders" or similar metric.
3) Since I don't see the information I need in the available columns, this suggests that:
   - Either this information is available through a different path
   - Or we need to access the Sales/Orders section to correlate this information
4) The most logical path would be to:
   - Go to the Sales section where we can see all orders
   - And then analyze which customers have the most orders
5) From the accessibility tree, I can see the "SALES" link with bid "183" in the main navigation.

Let me click on the SALES link:
This should open the Sales menu where we can access the Orders section to analyze customer order histories.'''

Example output:
'''Clicked the SALES link to access the Orders section for customer order histories.'''
"""

INDUCER_INSTRUCTION = """\
You are a proficient software engineer. Your task is to (1) summarize reusable functions as APIs from the provided action trajectories, and (2) rewrite the trajecoties using the reusable functions you generated in (1).

For (1), from the provided examples about the same task, you job is to generate Python functions that can be reused to solve (part of) these tasks.
The functions should have mediocre complexity: (i) containing at least three actions and not too simple (e.g., a single line of code), (ii) not too complex (e.g., more than 10 lines of code), and should be general enough to be applied to other similar tasks. The arguments to these functions should be common variables (such as strings and lists), avoid using complex inputs such as another function.

The actions you can use are:
'click', 'fill', 'hover', 'keyboard_press', 'scroll';
'tab_focus', 'new_tab', 'tab_close', 'go_back', 'go_forward';
'send_msg_to_user', 'report_infeasible', 'select_option'.
Do not use other undefined actions. Do not include any try-except blocks in the functions.

Please include 'Args', 'Returns', and 'Examples' in the function documentation.

For (2), write the instruction and rewritten code of each example. Do not include the answer response or example-specific information in the rewritten code.
Pay attention to whether all link IDs are available before specifying them in the generated functions.
If you use `send_msg_to_user`, make sure the message is decided within the function, instead of provided as an argument.

Make sure each function contains no less than 2 steps, and no more than 5 steps; to keep the functions simple and task-oriented.
You can generate zero, one, or multiple functions depending on the provided examples.
"""


def render_policy_prompt(
    query: str,
    current_observation: str,
    history: Sequence[tuple] = (),
    memory_entries: Sequence[str] = (),
    skills: Sequence[tuple] = (),
) -> str:
    """Render the policy prompt.

    ``history`` holds (url, observation text, thought, action line) per past
    step; only the last few keep the full page snapshot. ``skills`` holds
    (signature, summary) pairs for induced skills callable as actions.
    """
    if not query:
        raise MissingField("policy prompt needs a task query")
    if not current_observation:
        raise MissingField("policy prompt needs the current observation")

    parts = [POLICY_INSTRUCTION, "", "# Task", query, "", "# Actions"]
    for sig in PRIMITIVES.values():
        parts.append(f"{sig.signature()} - {sig.description}")
    if skills:
        parts += ["", "# Skills", "Learned skills, callable exactly like actions:"]
        for signature, summary in sorted(skills):
            parts.append(f"{signature} - {summary}" if summary else signature)
    if memory_entries:
        parts += ["", "# Memory", "Notes from earlier tasks on this site:"]
        for i, entry in enumerate(memory_entries, start=1):
            parts.append(f"[{i}] {entry}")
    if history:
        parts += ["", "# History"]
        cutoff = max(0, len(history) - FULL_OBSERVATION_WINDOW)
        for i, (url, obs, thought, action_line) in enumerate(history):
            parts.append(f"## Step {i + 1}")
            if i < cutoff:
                parts.append(f"(page: {url})")
            else:
                parts.append(obs)
            if thought:
                parts.append(f"Thought: {thought}")
            parts.append(f"Action: {action_line}")
    parts += ["", "# Current page", current_observation, "", POLICY_FORMAT]
    return "\n".join(parts)


def render_judge_prompt(
    query: str,
    action_history: Sequence[str],
    final_observation: str,
    final_message: str | None = None,
) -> str:
    if not query:
        raise MissingField("judge prompt needs a task query")
    if not final_observation:
        raise MissingField("judge prompt needs the final observation")
    parts = [JUDGE_INSTRUCTION, "User intent: " + query, "", "Action history:"]
    if action_history:
        for i, line in enumerate(action_history, start=1):
            parts.append(f"{i}. {line}")
    else:
        parts.append("(no actions taken)")
    parts += [
        "",
        "The final state of the webpage:",
        final_observation,
        "",
        "The agent's response to the user: " + (final_message if final_message else "(none)"),
    ]
    return "\n".join(parts)


def render_cleaner_prompt(thought: str) -> str:
    if not thought:
        raise MissingField("cleaner prompt needs a thought to summarize")
    return "\n".join([CLEANER_INSTRUCTION, "Input:", f"'''{thought}'''", "", "Output:"])


def render_inducer_prompt(
    examples: Sequence[tuple],
    library_signatures: Sequence[str] = (),
) -> str:
    """``examples`` holds (instruction, rendered trajectory text) pairs."""
    if not examples:
        raise MissingField("inducer prompt needs at least one example")
    parts = [INDUCER_INSTRUCTION, "Existing functions in the skill library:"]
    if library_signatures:
        parts.extend(sorted(library_signatures))
    else:
        parts.append("(none)")
    for i, (instruction, trajectory) in enumerate(examples, start=1):
        parts += ["", f"Example {i}:", f"Instruction: {instruction}", trajectory]
    return "\n".join(parts)
