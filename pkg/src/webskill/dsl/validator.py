"""Static checks a skill must pass before it can join the action space."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .nodes import (
    Expr,
    For,
    If,
    Index,
    ListLit,
    NoneCond,
    ParamRef,
    PredicateCond,
    PrimitiveCall,
    SkillCall,
    SkillProgram,
    Slice,
    Statement,
    TruthyCond,
)

MIN_STATEMENTS = 2
MAX_STATEMENTS = 5


@dataclass
class ValidationReport:
    name: str
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def fail(self, rule: str, message: str) -> None:
        self.errors.append(f"{rule}: {message}")


def validate_skill(
    program: SkillProgram,
    library: Mapping[str, SkillProgram] | None = None,
    siblings: Mapping[str, SkillProgram] | None = None,
) -> ValidationReport:
    """Check one skill against the admission rules.

    ``library`` holds already-admitted skills; ``siblings`` holds other
    candidates from the same induction batch, which may be called but also
    participate in cycle detection.
    """
    library = library or {}
    siblings = siblings or {}
    report = ValidationReport(program.name)

    n = len(program.body)
    if not MIN_STATEMENTS <= n <= MAX_STATEMENTS:
        report.fail(
            "statement-count",
            f"body has {n} top-level statement{'s' if n != 1 else ''} "
            f"(need {MIN_STATEMENTS} to {MAX_STATEMENTS})",
        )

    known = dict(library)
    known.update(siblings)
    known[program.name] = program
    _check_calls(program, known, report)
    _check_bindings(program, report)
    _check_param_use(program, report)
    _check_cycles(program.name, known, report)
    return report


def validate_batch(
    candidates: Iterable[SkillProgram],
    library: Mapping[str, SkillProgram] | None = None,
) -> dict[str, ValidationReport]:
    """Validate a batch of candidates that may reference each other."""
    batch = {p.name: p for p in candidates}
    return {
        name: validate_skill(p, library, {k: v for k, v in batch.items() if k != name})
        for name, p in batch.items()
    }


def find_cycle(programs: Mapping[str, SkillProgram]) -> list[str] | None:
    """Return one call-graph cycle among ``programs``, or None."""
    graph = {
        name: [c.name for c in _skill_calls(p) if c.name in programs]
        for name, p in programs.items()
    }
    color: dict[str, int] = {}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = 1
        stack.append(node)
        for nxt in graph[node]:
            if color.get(nxt) == 1:
                return stack[stack.index(nxt):] + [nxt]
            if color.get(nxt, 0) == 0:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        color[node] = 2
        return None

    for name in graph:
        if color.get(name, 0) == 0:
            found = visit(name)
            if found:
                return found
    return None


def _skill_calls(program: SkillProgram) -> list[SkillCall]:
    out: list[SkillCall] = []

    def walk(stmts: tuple[Statement, ...]) -> None:
        for s in stmts:
            if isinstance(s, SkillCall):
                out.append(s)
            elif isinstance(s, If):
                walk(s.then_block)
                if s.else_block:
                    walk(s.else_block)
            elif isinstance(s, For):
                walk(s.body)

    walk(program.body)
    return out


def _check_calls(program: SkillProgram, known: Mapping[str, SkillProgram],
                 report: ValidationReport) -> None:
    def walk(stmts: tuple[Statement, ...]) -> None:
        for s in stmts:
            if isinstance(s, PrimitiveCall):
                if s.kind == "send_msg_to_user" and any(not _is_literal(a) for a in s.args):
                    report.fail(
                        "message-literal",
                        "send_msg_to_user arguments must be literal text, not parameters",
                    )
            elif isinstance(s, SkillCall):
                callee = known.get(s.name)
                if callee is None:
                    report.fail("unknown-callee", f"call to undefined skill '{s.name}'")
                else:
                    lo, hi = callee.required_arity, len(callee.params)
                    if not lo <= len(s.args) <= hi:
                        want = str(lo) if lo == hi else f"{lo} to {hi}"
                        report.fail(
                            "callee-arity",
                            f"'{s.name}' takes {want} argument{'s' if hi != 1 else ''}, "
                            f"got {len(s.args)}",
                        )
            elif isinstance(s, If):
                walk(s.then_block)
                if s.else_block:
                    walk(s.else_block)
            elif isinstance(s, For):
                walk(s.body)

    walk(program.body)


def _is_literal(e: Expr) -> bool:
    if isinstance(e, ListLit):
        return all(_is_literal(i) for i in e.items)
    return not isinstance(e, (ParamRef, Index, Slice))


def _check_bindings(program: SkillProgram, report: ValidationReport) -> None:
    params = {p.name for p in program.params}

    def visit_expr(e: Expr, bound: set[str]) -> None:
        if isinstance(e, ParamRef) and e.name not in bound:
            report.fail("unbound-name", f"'{e.name}' is not a parameter or loop variable")
        elif isinstance(e, ListLit):
            for i in e.items:
                visit_expr(i, bound)
        elif isinstance(e, (Index, Slice)):
            visit_expr(e.seq, bound)

    def walk(stmts: tuple[Statement, ...], bound: set[str]) -> None:
        for s in stmts:
            if isinstance(s, (PrimitiveCall, SkillCall)):
                for a in s.args:
                    visit_expr(a, bound)
            elif isinstance(s, If):
                c = s.condition
                if isinstance(c, TruthyCond):
                    visit_expr(c.ref, bound)
                elif isinstance(c, NoneCond):
                    visit_expr(c.expr, bound)
                elif isinstance(c, PredicateCond):
                    for a in c.args:
                        visit_expr(a, bound)
                walk(s.then_block, bound)
                if s.else_block:
                    walk(s.else_block, bound)
            elif isinstance(s, For):
                visit_expr(s.iterable, bound)
                shadowed = set(s.loop_vars) & bound
                if shadowed:
                    report.fail(
                        "loop-shadowing",
                        f"loop variable '{sorted(shadowed)[0]}' shadows an outer name",
                    )
                walk(s.body, bound | set(s.loop_vars))

    walk(program.body, params)


def _check_param_use(program: SkillProgram, report: ValidationReport) -> None:
    used: set[str] = set()

    def visit_expr(e: Expr) -> None:
        if isinstance(e, ParamRef):
            used.add(e.name)
        elif isinstance(e, ListLit):
            for i in e.items:
                visit_expr(i)
        elif isinstance(e, (Index, Slice)):
            visit_expr(e.seq)

    def walk(stmts: tuple[Statement, ...]) -> None:
        for s in stmts:
            if isinstance(s, (PrimitiveCall, SkillCall)):
                for a in s.args:
                    visit_expr(a)
            elif isinstance(s, If):
                c = s.condition
                if isinstance(c, TruthyCond):
                    used.add(c.ref.name)
                elif isinstance(c, NoneCond):
                    visit_expr(c.expr)
                elif isinstance(c, PredicateCond):
                    for a in c.args:
                        visit_expr(a)
                walk(s.then_block)
                if s.else_block:
                    walk(s.else_block)
            elif isinstance(s, For):
                visit_expr(s.iterable)
                walk(s.body)

    walk(program.body)
    for p in program.params:
        if p.name not in used:
            report.fail("unused-parameter", f"parameter '{p.name}' is never used")


def _check_cycles(root: str, known: Mapping[str, SkillProgram],
                  report: ValidationReport) -> None:
    reachable: dict[str, SkillProgram] = {}
    frontier = [root]
    while frontier:
        name = frontier.pop()
        if name in reachable or name not in known:
            continue
        reachable[name] = known[name]
        frontier.extend(c.name for c in _skill_calls(known[name]))
    cycle = find_cycle(reachable)
    if cycle:
        report.fail("cycle", "call cycle: " + " -> ".join(cycle))
