"""Canonical source rendering for skill programs.

Rendering a parsed skill and parsing the result yields a structurally equal
program, so the printed form is a stable canonical text: 4-space indents,
repr-quoted strings, one statement per line.
"""

from __future__ import annotations

from .nodes import (
    For,
    If,
    PrimitiveCall,
    SkillCall,
    SkillProgram,
    Statement,
    format_cond,
    format_expr,
)

INDENT = "    "


def render_skill(program: SkillProgram) -> str:
    """Render one skill as canonical source text (no trailing newline)."""
    lines = [f"def {program.signature()}:"]
    if program.docstring:
        lines.extend(_docstring_lines(program.docstring, 1))
    lines.extend(_statement_lines(program.body, 1))
    return "\n".join(lines)


def render_statements(body: tuple[Statement, ...], indent: int = 0) -> str:
    return "\n".join(_statement_lines(body, indent))


def canonicalize(source: str) -> str:
    """Reprint source text (one or more defs) in canonical form."""
    from .parser import parse_skill_source

    return "\n\n\n".join(render_skill(p) for p in parse_skill_source(source))


def _statement_lines(body: tuple[Statement, ...], indent: int) -> list[str]:
    pad = INDENT * indent
    lines: list[str] = []
    for stmt in body:
        if isinstance(stmt, (PrimitiveCall, SkillCall)):
            name = stmt.kind if isinstance(stmt, PrimitiveCall) else stmt.name
            args = ", ".join(format_expr(a) for a in stmt.args)
            lines.append(f"{pad}{name}({args})")
        elif isinstance(stmt, If):
            lines.append(f"{pad}if {format_cond(stmt.condition)}:")
            lines.extend(_statement_lines(stmt.then_block, indent + 1))
            if stmt.else_block:
                lines.append(f"{pad}else:")
                lines.extend(_statement_lines(stmt.else_block, indent + 1))
        elif isinstance(stmt, For):
            it = format_expr(stmt.iterable)
            if stmt.enumerated:
                target = ", ".join(stmt.loop_vars)
                lines.append(f"{pad}for {target} in enumerate({it}):")
            else:
                lines.append(f"{pad}for {stmt.loop_vars[0]} in {it}:")
            lines.extend(_statement_lines(stmt.body, indent + 1))
        else:
            raise TypeError(f"not a statement node: {stmt!r}")
    return lines


def _docstring_lines(text: str, indent: int) -> list[str]:
    pad = INDENT * indent
    safe = text.replace("\\", "\\\\").replace('"""', '\\"\\"\\"')
    if safe.endswith('"'):
        safe = safe[:-1] + '\\"'
    if "\n" not in safe:
        return [f'{pad}"""{safe}"""']
    lines = [f'{pad}"""{safe.splitlines()[0]}']
    for ln in safe.splitlines()[1:]:
        lines.append(f"{pad}{ln}" if ln else "")
    lines.append(f'{pad}"""')
    return lines
