"""AST node types for the restricted skill language.

The language is a closed subset of Python function-definition syntax: a
skill is a ``def`` whose body chains browser primitives, calls to other
skills, ``if``/``else`` guards, and ``for`` loops over lists. Expressions
are literals, parameter references, and integer-literal indexing/slicing;
there is no arithmetic and no nesting of calls inside arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

# ---------------------------------------------------------------------------
# Expressions

@dataclass(frozen=True)
class StringLit:
    value: str


@dataclass(frozen=True)
class NumberLit:
    value: Union[int, float]


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class NoneLit:
    pass


@dataclass(frozen=True)
class ListLit:
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class ParamRef:
    """Reference to a parameter or an enclosing loop variable."""

    name: str


@dataclass(frozen=True)
class Index:
    """``seq[i]`` with an integer-literal index (possibly negative)."""

    seq: "Expr"
    index: int


@dataclass(frozen=True)
class Slice:
    """``seq[start:stop]`` with integer-literal bounds, either omissible."""

    seq: "Expr"
    start: Union[int, None]
    stop: Union[int, None]


Expr = Union[StringLit, NumberLit, BoolLit, NoneLit, ListLit, ParamRef, Index, Slice]

LITERAL_NODES = (StringLit, NumberLit, BoolLit, NoneLit, ListLit)


# ---------------------------------------------------------------------------
# Conditions (the only boolean contexts the grammar allows)

@dataclass(frozen=True)
class TruthyCond:
    """``if p:`` / ``if not p:`` — truthiness of a bound name."""

    ref: ParamRef
    negated: bool = False


@dataclass(frozen=True)
class NoneCond:
    """``if x is None:`` (negated=False) or ``if x is not None:``."""

    expr: "Expr"
    negated: bool = False


@dataclass(frozen=True)
class PredicateCond:
    """Call to an environment predicate, e.g. ``has_popup_window()``."""

    name: str
    args: tuple["Expr", ...] = ()
    negated: bool = False


Cond = Union[TruthyCond, NoneCond, PredicateCond]

ENV_PREDICATES: dict[str, int] = {
    "has_popup_window": 0,
    "element_exists": 1,
    "text_present": 1,
}


# ---------------------------------------------------------------------------
# Statements

@dataclass(frozen=True)
class PrimitiveCall:
    kind: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class SkillCall:
    name: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class If:
    condition: Cond
    then_block: tuple["Statement", ...]
    else_block: Union[tuple["Statement", ...], None] = None


@dataclass(frozen=True)
class For:
    """``for v in xs:`` or, with ``enumerated``, ``for i, v in enumerate(xs):``."""

    loop_vars: tuple[str, ...]
    iterable: "Expr"
    body: tuple["Statement", ...]
    enumerated: bool = False


Statement = Union[PrimitiveCall, SkillCall, If, For]


# ---------------------------------------------------------------------------
# Skill programs

@dataclass(frozen=True)
class Param:
    name: str
    annotation: Union[str, None] = None
    default: Union[Expr, None] = None


@dataclass
class SkillProgram:
    """A parsed skill definition.

    Equality is structural: it covers name, parameters, docstring, and body,
    and ignores provenance fields (source text, namespace, status, counters).
    """

    name: str
    params: tuple[Param, ...]
    docstring: Union[str, None]
    body: tuple[Statement, ...]
    source: str = field(compare=False, default="")
    namespace: str = field(compare=False, default="")
    origin_episode: str = field(compare=False, default="")
    status: str = field(compare=False, default="candidate")  # candidate|verified|deprecated
    call_count: int = field(compare=False, default=0)
    created_at: int = field(compare=False, default=0)  # commit sequence number

    def signature(self) -> str:
        parts = []
        for p in self.params:
            s = p.name
            if p.annotation:
                s += f": {p.annotation}"
            if p.default is not None:
                joiner = " = " if p.annotation else "="
                s += f"{joiner}{format_expr(p.default)}"
            parts.append(s)
        return f"{self.name}({', '.join(parts)})"

    @property
    def required_arity(self) -> int:
        return sum(1 for p in self.params if p.default is None)


# ---------------------------------------------------------------------------
# Agent-level actions

LiteralValue = Union[str, int, float, bool, None, list]

PRIMITIVE_KIND = "primitive"
SKILL_KIND = "skill"


@dataclass(frozen=True)
class Action:
    """One agent-level act: a primitive or a skill call with literal args."""

    name: str
    args: tuple
    kind: str  # PRIMITIVE_KIND or SKILL_KIND

    @property
    def is_skill(self) -> bool:
        return self.kind == SKILL_KIND

    def canonical(self) -> str:
        return f"{self.name}({', '.join(format_literal(a) for a in self.args)})"


def format_literal(value: LiteralValue) -> str:
    """Canonical text for a literal value (single-quoted strings, Python repr)."""
    if isinstance(value, list):
        return f"[{', '.join(format_literal(v) for v in value)}]"
    if isinstance(value, float) and value.is_integer():
        return repr(value)
    return repr(value)


def format_expr(e: Expr) -> str:
    """Canonical text for a body expression."""
    if isinstance(e, StringLit):
        return repr(e.value)
    if isinstance(e, NumberLit):
        return repr(e.value)
    if isinstance(e, BoolLit):
        return repr(e.value)
    if isinstance(e, NoneLit):
        return "None"
    if isinstance(e, ListLit):
        return f"[{', '.join(format_expr(i) for i in e.items)}]"
    if isinstance(e, ParamRef):
        return e.name
    if isinstance(e, Index):
        return f"{format_expr(e.seq)}[{e.index}]"
    if isinstance(e, Slice):
        start = "" if e.start is None else str(e.start)
        stop = "" if e.stop is None else str(e.stop)
        return f"{format_expr(e.seq)}[{start}:{stop}]"
    raise TypeError(f"not an expression node: {e!r}")


def format_cond(c: Cond) -> str:
    if isinstance(c, TruthyCond):
        text = c.ref.name
        return f"not {text}" if c.negated else text
    if isinstance(c, NoneCond):
        op = "is not" if c.negated else "is"
        return f"{format_expr(c.expr)} {op} None"
    if isinstance(c, PredicateCond):
        call = f"{c.name}({', '.join(format_expr(a) for a in c.args)})"
        return f"not {call}" if c.negated else call
    raise TypeError(f"not a condition node: {c!r}")


def iter_calls(body: tuple[Statement, ...]):
    """Yield every PrimitiveCall and SkillCall in a body, depth first."""
    for stmt in body:
        if isinstance(stmt, (PrimitiveCall, SkillCall)):
            yield stmt
        elif isinstance(stmt, If):
            yield from iter_calls(stmt.then_block)
            if stmt.else_block:
                yield from iter_calls(stmt.else_block)
        elif isinstance(stmt, For):
            yield from iter_calls(stmt.body)


def referenced_names(body: tuple[Statement, ...]) -> set[str]:
    """All ParamRef names appearing anywhere in a body (args and conditions)."""
    names: set[str] = set()

    def visit_expr(e: Expr) -> None:
        if isinstance(e, ParamRef):
            names.add(e.name)
        elif isinstance(e, ListLit):
            for item in e.items:
                visit_expr(item)
        elif isinstance(e, (Index, Slice)):
            visit_expr(e.seq)

    def visit(stmts: tuple[Statement, ...]) -> None:
        for stmt in stmts:
            if isinstance(stmt, (PrimitiveCall, SkillCall)):
                for a in stmt.args:
                    visit_expr(a)
            elif isinstance(stmt, If):
                c = stmt.condition
                if isinstance(c, TruthyCond):
                    names.add(c.ref.name)
                elif isinstance(c, NoneCond):
                    visit_expr(c.expr)
                elif isinstance(c, PredicateCond):
                    for a in c.args:
                        visit_expr(a)
                visit(stmt.then_block)
                if stmt.else_block:
                    visit(stmt.else_block)
            elif isinstance(stmt, For):
                visit_expr(stmt.iterable)
                visit(stmt.body)

    visit(body)
    return names
