"""Executor that flattens a skill call into primitive environment steps.

The interpreter binds literal argument values to parameters, walks the body
in order, evaluates conditions against the bindings or the live page, and
expands nested skill calls up to a depth limit. The result is a flat trace
of primitive actions with per-step outcomes and state fingerprints. The
first environment error stops execution (the trace is truncated, the caller
is not aborted).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Protocol

from .errors import ArityMismatch, DepthExceeded, EvaluationError, UnboundIdentifier
from .nodes import (
    Action,
    BoolLit,
    Cond,
    Expr,
    For,
    If,
    Index,
    ListLit,
    NoneCond,
    NoneLit,
    NumberLit,
    ParamRef,
    PredicateCond,
    PrimitiveCall,
    PRIMITIVE_KIND,
    SkillCall,
    SkillProgram,
    Slice,
    Statement,
    StringLit,
    TruthyCond,
)
from .primitives import coerce_args

DEFAULT_DEPTH_LIMIT = 3


class EnvHandle(Protocol):
    """What the interpreter needs from an environment."""

    def step(self, action: Action) -> Any:
        """Apply a primitive action; the result has .outcome and .error."""

    def fingerprint(self) -> str: ...

    def eval_predicate(self, name: str, args: tuple) -> bool: ...


@dataclass(frozen=True)
class TraceStep:
    action: Action
    outcome: str  # "ok" | "no_effect" | "error"
    error: str | None
    fingerprint_before: str
    fingerprint_after: str

    @property
    def changed_state(self) -> bool:
        return self.fingerprint_before != self.fingerprint_after


@dataclass
class ExecutionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    truncated_by_error: bool = False

    @property
    def ok(self) -> bool:
        return not self.truncated_by_error

    @property
    def error(self) -> str | None:
        for s in reversed(self.steps):
            if s.error:
                return s.error
        return None

    @property
    def actions(self) -> list[Action]:
        return [s.action for s in self.steps]


def evaluate_expr(e: Expr, bindings: Mapping[str, Any]) -> Any:
    if isinstance(e, (StringLit, NumberLit, BoolLit)):
        return e.value
    if isinstance(e, NoneLit):
        return None
    if isinstance(e, ListLit):
        return [evaluate_expr(i, bindings) for i in e.items]
    if isinstance(e, ParamRef):
        if e.name not in bindings:
            raise UnboundIdentifier(f"'{e.name}' is not bound")
        return bindings[e.name]
    if isinstance(e, Index):
        seq = evaluate_expr(e.seq, bindings)
        if not isinstance(seq, (list, str)):
            raise EvaluationError(f"cannot index into {type(seq).__name__}")
        try:
            return seq[e.index]
        except IndexError:
            raise EvaluationError(
                f"index {e.index} out of range for length {len(seq)}"
            ) from None
    if isinstance(e, Slice):
        seq = evaluate_expr(e.seq, bindings)
        if not isinstance(seq, (list, str)):
            raise EvaluationError(f"cannot slice {type(seq).__name__}")
        return seq[e.start:e.stop]
    raise EvaluationError(f"cannot evaluate {e!r}")


def bind_arguments(skill: SkillProgram, args: list) -> dict[str, Any]:
    """Map positional argument values onto parameters, filling defaults."""
    lo, hi = skill.required_arity, len(skill.params)
    if not lo <= len(args) <= hi:
        want = str(lo) if lo == hi else f"{lo} to {hi}"
        raise ArityMismatch(
            f"{skill.name}() takes {want} argument{'s' if hi != 1 else ''}, got {len(args)}"
        )
    bindings: dict[str, Any] = {}
    for i, p in enumerate(skill.params):
        if i < len(args):
            bindings[p.name] = args[i]
        else:
            bindings[p.name] = evaluate_expr(p.default, {})  # type: ignore[arg-type]
    return bindings


def interpret_call(
    skill: SkillProgram,
    args: list,
    env: EnvHandle,
    library: Mapping[str, SkillProgram] | None = None,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
) -> ExecutionTrace:
    """Run a skill against an environment, returning the flat primitive trace.

    ``library`` resolves nested skill calls by name; a nested call found when
    the remaining depth budget is exhausted raises DepthExceeded before any
    further environment step.
    """
    if depth_limit < 1:
        raise DepthExceeded(f"depth limit must be at least 1, got {depth_limit}")
    trace = ExecutionTrace()
    bindings = bind_arguments(skill, args)
    _run_block(skill.body, bindings, env, library or {}, depth_limit, trace)
    return trace


def _run_block(
    body: tuple[Statement, ...],
    bindings: dict[str, Any],
    env: EnvHandle,
    library: Mapping[str, SkillProgram],
    depth: int,
    trace: ExecutionTrace,
) -> bool:
    """Execute statements in order; returns False once an env error halts us."""
    for stmt in body:
        if isinstance(stmt, PrimitiveCall):
            values = coerce_args(stmt.kind, tuple(evaluate_expr(a, bindings) for a in stmt.args))
            action = Action(stmt.kind, values, PRIMITIVE_KIND)
            before = env.fingerprint()
            result = env.step(action)
            after = env.fingerprint()
            error = getattr(result, "error", None)
            outcome = getattr(result, "outcome", "ok")
            trace.steps.append(TraceStep(action, outcome, error, before, after))
            if outcome == "error":
                trace.truncated_by_error = True
                return False
        elif isinstance(stmt, SkillCall):
            if depth <= 1:
                raise DepthExceeded(
                    f"expanding '{stmt.name}' would exceed the skill nesting limit"
                )
            callee = library.get(stmt.name)
            if callee is None:
                raise UnboundIdentifier(f"call to undefined skill '{stmt.name}'")
            values = [evaluate_expr(a, bindings) for a in stmt.args]
            inner = bind_arguments(callee, values)
            if not _run_block(callee.body, inner, env, library, depth - 1, trace):
                return False
        elif isinstance(stmt, If):
            branch = stmt.then_block if _eval_cond(stmt.condition, bindings, env) else stmt.else_block
            if branch and not _run_block(branch, bindings, env, library, depth, trace):
                return False
        elif isinstance(stmt, For):
            seq = evaluate_expr(stmt.iterable, bindings)
            if not isinstance(seq, list):
                raise EvaluationError(
                    f"loop iterable must be a list, got {type(seq).__name__}"
                )
            for i, item in enumerate(seq):
                scope = dict(bindings)
                if stmt.enumerated:
                    scope[stmt.loop_vars[0]] = i
                    scope[stmt.loop_vars[1]] = item
                else:
                    scope[stmt.loop_vars[0]] = item
                if not _run_block(stmt.body, scope, env, library, depth, trace):
                    return False
        else:
            raise EvaluationError(f"not a statement node: {stmt!r}")
    return True


def _eval_cond(cond: Cond, bindings: Mapping[str, Any], env: EnvHandle) -> bool:
    if isinstance(cond, TruthyCond):
        value = bool(evaluate_expr(cond.ref, bindings))
    elif isinstance(cond, NoneCond):
        value = evaluate_expr(cond.expr, bindings) is None
    elif isinstance(cond, PredicateCond):
        args = tuple(evaluate_expr(a, bindings) for a in cond.args)
        value = bool(env.eval_predicate(cond.name, args))
    else:
        raise EvaluationError(f"not a condition node: {cond!r}")
    return not value if cond.negated else value
