"""Parsers for every model output the pipeline consumes."""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from typing import Container

from ..dsl.nodes import Action, PRIMITIVE_KIND, SKILL_KIND
from ..dsl.primitives import PRIMITIVES, coerce_args, is_primitive
from .errors import (
    ArgumentParseError,
    NoActionFound,
    UnknownActionName,
    UnparseableVerdict,
)

_FENCE = re.compile(r"```[ \t]*[a-zA-Z0-9_+-]*[ \t]*\n(.*?)```", re.S)
_CALL_LINE = re.compile(r"^\s*([A-Za-z_]\w*)\((.*)\)\s*;?\s*$")
_STATUS_LINE = re.compile(r"^\s*status\s*:\s*(.+?)\s*$", re.I)


def parse_call_text(text: str) -> tuple[str, tuple]:
    """Parse one `name(args)` expression with literal-only arguments."""
    try:
        expr = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ArgumentParseError(f"not a call expression: {text.strip()!r} ({exc.msg})") from exc
    call = expr.body
    if not isinstance(call, ast.Call) or not isinstance(call.func, ast.Name):
        raise ArgumentParseError(f"not a plain call expression: {text.strip()!r}")
    if call.keywords:
        raise ArgumentParseError("action arguments must be positional")
    values = []
    for a in call.args:
        try:
            values.append(ast.literal_eval(a))
        except ValueError:
            raise ArgumentParseError(
                f"argument {ast.unparse(a)!r} is not a literal"
            ) from None
    return call.func.id, tuple(values)


def make_action(name: str, args: tuple, skill_names: Container[str]) -> Action:
    """Classify a parsed call as a primitive or a known skill."""
    if is_primitive(name):
        sig = PRIMITIVES[name]
        if len(args) != sig.arity:
            raise ArgumentParseError(
                f"{name}() takes {sig.arity} argument{'s' if sig.arity != 1 else ''}, "
                f"got {len(args)}"
            )
        return Action(name, coerce_args(name, args), PRIMITIVE_KIND)
    if name in skill_names:
        return Action(name, args, SKILL_KIND)
    raise UnknownActionName(f"'{name}' is not an available action or skill")


def parse_policy_action(text: str, skill_names: Container[str] = frozenset()) -> tuple[str, Action]:
    """Extract (thought, action) from policy output.

    The action is the last fenced code block if any, else the last line that
    reads as a call expression. Everything before it is the thought.
    """
    blocks = list(_FENCE.finditer(text))
    if blocks:
        block = blocks[-1]
        thought = text[: block.start()].strip()
        candidate = _last_call_line(block.group(1))
        if candidate is None:
            candidate = block.group(1).strip()
            if not candidate:
                raise NoActionFound("final code block is empty")
    else:
        lines = text.splitlines()
        hit = None
        for i in range(len(lines) - 1, -1, -1):
            if _CALL_LINE.match(lines[i]):
                hit = i
                break
        if hit is None:
            raise NoActionFound("no action expression in policy output")
        thought = "\n".join(lines[:hit]).strip()
        candidate = lines[hit].strip().rstrip(";")
    name, args = parse_call_text(candidate)
    return thought, make_action(name, args, skill_names)


def _last_call_line(block: str) -> str | None:
    for line in reversed(block.splitlines()):
        if _CALL_LINE.match(line):
            return line.strip().rstrip(";")
    return None


@dataclass(frozen=True)
class JudgeVerdict:
    thoughts: str
    status: str  # "success" | "failure"

    @property
    def verdict(self) -> int:
        return 1 if self.status == "success" else 0


def parse_judge_verdict(text: str) -> JudgeVerdict:
    """Read the last `Status:` line; anything before it is the thoughts."""
    status_at = None
    raw = None
    lines = text.splitlines()
    for i, line in enumerate(lines):
        m = _STATUS_LINE.match(line)
        if m:
            status_at, raw = i, m.group(1)
    if raw is None:
        raise UnparseableVerdict("no 'Status:' line in judge output")
    value = raw.strip().strip("\"'.` ").lower()
    if value.startswith("success"):
        status = "success"
    elif value.startswith("fail"):
        status = "failure"
    else:
        raise UnparseableVerdict(f"unrecognized status {raw.strip()!r}")
    thoughts = "\n".join(lines[:status_at]).strip()
    if thoughts.lower().startswith("thoughts:"):
        thoughts = thoughts[len("thoughts:"):].strip()
    return JudgeVerdict(thoughts, status)


def parse_inducer_output(text: str) -> tuple[list, list]:
    """Split inducer output into function sources and rewritten examples.

    Code blocks containing a `def` are skill sources. Other blocks are
    rewritten trajectories, paired with the nearest preceding
    `Instruction:` line (None when absent). No fences means (both) empty.
    """
    sources: list[str] = []
    rewrites: list[tuple] = []
    prev_end = 0
    for m in _FENCE.finditer(text):
        code = m.group(1).strip("\n")
        if re.search(r"^\s*def\s+\w+\s*\(", code, re.M):
            sources.append(code)
        else:
            gap = text[prev_end:m.start()]
            rewrites.append((_last_instruction(gap), code))
        prev_end = m.end()
    return sources, rewrites


def _last_instruction(gap: str) -> str | None:
    instruction = None
    for line in gap.splitlines():
        m = re.match(r"^\s*instruction\s*:\s*(.+?)\s*$", line, re.I)
        if m:
            instruction = m.group(1).strip().strip("\"'")
    return instruction
