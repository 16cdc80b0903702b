"""Parser from Python-syntax source text to skill ASTs.

The accepted language is the restricted subset described in nodes.py. The
parser leans on the stdlib ``ast`` module for tokenizing and shape, then
rejects anything outside the subset with a located error. A source string
may hold several ``def`` blocks; definitions are isolated so one malformed
block does not take down its siblings.
"""

from __future__ import annotations

import ast
import re

from .errors import ArityMismatch, SkillSyntaxError, UnsupportedConstruct
from .nodes import (
    BoolLit,
    Cond,
    ENV_PREDICATES,
    Expr,
    For,
    If,
    ListLit,
    NoneCond,
    NoneLit,
    NumberLit,
    Param,
    ParamRef,
    PredicateCond,
    PrimitiveCall,
    SkillCall,
    SkillProgram,
    Slice,
    StringLit,
    Index,
    TruthyCond,
)
from .primitives import ELEM, PRIMITIVES, is_primitive

_DEF_LINE = re.compile(r"^def\s+\w+\s*\(", re.MULTILINE)


def parse_skill_source(source: str, errors: list | None = None) -> list[SkillProgram]:
    """Parse every ``def`` block in ``source`` into a SkillProgram.

    When ``errors`` is given, definitions that fail to parse are skipped and
    their exceptions collected there; otherwise the first failure raises.
    Definitions after a block with a raw syntax error are still attempted.
    """
    programs: list[SkillProgram] = []
    for block, line_offset in _split_def_blocks(source):
        try:
            programs.extend(_parse_block(block, line_offset))
        except SkillSyntaxError as exc:
            if errors is None:
                raise
            errors.append(exc)
    return programs


def parse_single_skill(source: str) -> SkillProgram:
    """Parse a source string expected to hold exactly one definition."""
    programs = parse_skill_source(source)
    if len(programs) != 1:
        raise SkillSyntaxError(f"expected exactly one definition, found {len(programs)}")
    return programs[0]


def _split_def_blocks(source: str) -> list[tuple[str, int]]:
    """Split source at column-zero ``def`` lines, keeping 1-based offsets."""
    lines = source.split("\n")
    starts = [i for i, ln in enumerate(lines) if _DEF_LINE.match(ln)]
    if not starts:
        return [(source, 0)]
    blocks: list[tuple[str, int]] = []
    head = "\n".join(lines[: starts[0]]).strip()
    if head:
        blocks.append((head, 0))
    for j, start in enumerate(starts):
        end = starts[j + 1] if j + 1 < len(starts) else len(lines)
        blocks.append(("\n".join(lines[start:end]), start))
    return blocks


def _parse_block(block: str, line_offset: int) -> list[SkillProgram]:
    try:
        module = ast.parse(block)
    except SyntaxError as exc:
        name_m = re.search(r"def\s+(\w+)", block)
        raise SkillSyntaxError(
            exc.msg or "invalid syntax",
            (exc.lineno or 1) + line_offset,
            exc.offset or 0,
            name_m.group(1) if name_m else None,
        ) from exc
    programs = []
    for node in module.body:
        if not isinstance(node, ast.FunctionDef):
            raise UnsupportedConstruct(
                type(node).__name__,
                "only function definitions are allowed at top level",
                node.lineno + line_offset,
                node.col_offset,
            )
        programs.append(_convert_def(node, block, line_offset))
    return programs


class _DefConverter:
    """Converts one ast.FunctionDef, carrying its name for error context."""

    def __init__(self, name: str, line_offset: int):
        self.name = name
        self.line_offset = line_offset

    def fail(self, construct: str, message: str, node: ast.AST) -> UnsupportedConstruct:
        return UnsupportedConstruct(
            construct,
            message,
            getattr(node, "lineno", 0) + self.line_offset,
            getattr(node, "col_offset", 0),
            self.name,
        )

    # -- expressions --------------------------------------------------------

    def expr(self, node: ast.expr) -> Expr:
        if isinstance(node, ast.Constant):
            return self.constant(node)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            inner = node.operand
            if isinstance(inner, ast.Constant) and type(inner.value) in (int, float):
                return NumberLit(-inner.value)
            raise self.fail("unary-minus", "minus applies only to number literals", node)
        if isinstance(node, ast.List):
            return ListLit(tuple(self.expr(e) for e in node.elts))
        if isinstance(node, ast.Name):
            return ParamRef(node.id)
        if isinstance(node, ast.Subscript):
            return self.subscript(node)
        if isinstance(node, ast.JoinedStr):
            raise self.fail("f-string", "string interpolation is not allowed; pass parameters directly", node)
        if isinstance(node, ast.BinOp):
            raise self.fail("arithmetic", "operators are not allowed in arguments", node)
        if isinstance(node, ast.Call):
            raise self.fail("nested-call", "calls cannot appear inside arguments", node)
        if isinstance(node, (ast.Dict, ast.Set, ast.Tuple)):
            raise self.fail(type(node).__name__.lower(), "only list literals are allowed as collections", node)
        raise self.fail(type(node).__name__, "expression form is outside the skill language", node)

    def constant(self, node: ast.Constant) -> Expr:
        v = node.value
        if isinstance(v, bool):
            return BoolLit(v)
        if isinstance(v, (int, float)):
            return NumberLit(v)
        if isinstance(v, str):
            return StringLit(v)
        if v is None:
            return NoneLit()
        raise self.fail("constant", f"unsupported literal {v!r}", node)

    def subscript(self, node: ast.Subscript) -> Expr:
        seq = self.expr(node.value)
        sl = node.slice
        if isinstance(sl, ast.Slice):
            if sl.step is not None:
                raise self.fail("slice-step", "slices cannot have a step", node)
            return Slice(seq, self.int_or_none(sl.lower, node), self.int_or_none(sl.upper, node))
        idx = self.int_or_none(sl, node)
        if idx is None:
            raise self.fail("subscript", "index must be an integer literal", node)
        return Index(seq, idx)

    def int_or_none(self, node: ast.expr | None, ctx: ast.AST) -> int | None:
        if node is None:
            return None
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if (isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub)
                and isinstance(node.operand, ast.Constant) and type(node.operand.value) is int):
            return -node.operand.value
        raise self.fail("subscript", "indices and bounds must be integer literals", ctx)

    # -- calls ---------------------------------------------------------------

    def call(self, node: ast.Call) -> PrimitiveCall | SkillCall:
        if not isinstance(node.func, ast.Name):
            raise self.fail("attribute-call", "only plain function names can be called", node)
        if node.keywords:
            raise self.fail("keyword-argument", "arguments must be positional", node)
        name = node.func.id
        args = tuple(self.expr(a) for a in node.args)
        if is_primitive(name):
            sig = PRIMITIVES[name]
            if len(args) != sig.arity:
                raise ArityMismatch(
                    f"in definition '{self.name}': {name}() takes {sig.arity} "
                    f"argument{'s' if sig.arity != 1 else ''}, got {len(args)}"
                )
            # bids are strings in the page tree; accept bare-number spellings
            args = tuple(
                StringLit(str(int(a.value)))
                if (p.category == ELEM and isinstance(a, NumberLit)
                    and float(a.value).is_integer())
                else a
                for p, a in zip(sig.params, args)
            )
            return PrimitiveCall(name, args)
        return SkillCall(name, args)

    # -- conditions ----------------------------------------------------------

    def cond(self, node: ast.expr) -> Cond:
        negated = False
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
            negated = True
            node = node.operand
        if isinstance(node, ast.Name):
            return TruthyCond(ParamRef(node.id), negated)
        if isinstance(node, ast.Compare):
            if negated:
                raise self.fail("condition", "'not' cannot wrap a comparison; use 'is not None'", node)
            return self.none_compare(node)
        if isinstance(node, ast.Call):
            return self.predicate(node, negated)
        if isinstance(node, ast.BoolOp):
            raise self.fail("boolean-operator", "'and'/'or' are not allowed in conditions", node)
        raise self.fail("condition", "conditions are limited to parameter truthiness, None tests, and page predicates", node)

    def none_compare(self, node: ast.Compare) -> NoneCond:
        if len(node.ops) != 1 or len(node.comparators) != 1:
            raise self.fail("comparison", "chained comparisons are not allowed", node)
        op, right = node.ops[0], node.comparators[0]
        if not (isinstance(right, ast.Constant) and right.value is None):
            raise self.fail("comparison", "the only comparison allowed is against None with 'is'", node)
        if isinstance(op, ast.Is):
            return NoneCond(self.expr(node.left), negated=False)
        if isinstance(op, ast.IsNot):
            return NoneCond(self.expr(node.left), negated=True)
        raise self.fail("comparison", "None tests must use 'is' or 'is not'", node)

    def predicate(self, node: ast.Call, negated: bool) -> PredicateCond:
        if not isinstance(node.func, ast.Name):
            raise self.fail("condition", "only plain predicate names can be called in a condition", node)
        name = node.func.id
        if name not in ENV_PREDICATES:
            known = ", ".join(sorted(ENV_PREDICATES))
            raise self.fail("condition", f"unknown page predicate '{name}' (known: {known})", node)
        if node.keywords:
            raise self.fail("keyword-argument", "arguments must be positional", node)
        args = tuple(self.expr(a) for a in node.args)
        if len(args) != ENV_PREDICATES[name]:
            raise ArityMismatch(
                f"in definition '{self.name}': {name}() takes {ENV_PREDICATES[name]} "
                f"argument{'s' if ENV_PREDICATES[name] != 1 else ''}, got {len(args)}"
            )
        return PredicateCond(name, args, negated)

    # -- statements ----------------------------------------------------------

    def block(self, stmts: list[ast.stmt]) -> tuple:
        out = []
        for s in stmts:
            if isinstance(s, ast.Expr):
                if isinstance(s.value, ast.Call):
                    out.append(self.call(s.value))
                    continue
                if isinstance(s.value, ast.Constant) and isinstance(s.value.value, str):
                    raise self.fail("stray-string", "string expression outside the docstring position", s)
                raise self.fail("expression-statement", "bare expressions other than calls do nothing", s)
            if isinstance(s, ast.If):
                out.append(If(self.cond(s.test), self.block(s.body),
                              self.block(s.orelse) if s.orelse else None))
                continue
            if isinstance(s, ast.For):
                out.append(self.for_loop(s))
                continue
            if isinstance(s, ast.Pass):
                raise self.fail("pass", "empty statements are not allowed", s)
            if isinstance(s, ast.Return):
                raise self.fail("return", "skills do not return values", s)
            if isinstance(s, (ast.Assign, ast.AugAssign, ast.AnnAssign)):
                raise self.fail("assignment", "variables cannot be assigned; use parameters", s)
            if isinstance(s, ast.While):
                raise self.fail("while-loop", "only 'for' loops over lists are allowed", s)
            if isinstance(s, (ast.Try, ast.Raise, ast.Assert)):
                raise self.fail(type(s).__name__.lower(), "exception handling is not allowed", s)
            if isinstance(s, (ast.Import, ast.ImportFrom)):
                raise self.fail("import", "imports are not allowed", s)
            if isinstance(s, ast.FunctionDef):
                raise self.fail("nested-def", "definitions cannot nest", s)
            raise self.fail(type(s).__name__, "statement form is outside the skill language", s)
        return tuple(out)

    def for_loop(self, node: ast.For) -> For:
        if node.orelse:
            raise self.fail("for-else", "'for' loops cannot have an 'else' clause", node)
        it = node.iter
        enumerated = False
        if (isinstance(it, ast.Call) and isinstance(it.func, ast.Name)
                and it.func.id == "enumerate"):
            if len(it.args) != 1 or it.keywords:
                raise self.fail("enumerate", "enumerate() takes exactly one list argument", node)
            enumerated = True
            it = it.args[0]
        iterable = self.expr(it)
        if not isinstance(iterable, (ParamRef, ListLit, Slice)):
            raise self.fail("for-iterable", "loops iterate over a list parameter, a list literal, or a slice of one", node)
        target = node.target
        if enumerated:
            if not (isinstance(target, ast.Tuple) and len(target.elts) == 2
                    and all(isinstance(e, ast.Name) for e in target.elts)):
                raise self.fail("for-target", "enumerate loops unpack exactly two names", node)
            loop_vars = tuple(e.id for e in target.elts)  # type: ignore[union-attr]
        else:
            if not isinstance(target, ast.Name):
                raise self.fail("for-target", "loop target must be a single name (or two with enumerate)", node)
            loop_vars = (target.id,)
        return For(loop_vars, iterable, self.block(node.body), enumerated)


def _convert_def(node: ast.FunctionDef, block: str, line_offset: int) -> SkillProgram:
    conv = _DefConverter(node.name, line_offset)
    if node.decorator_list:
        raise conv.fail("decorator", "decorators are not allowed", node)
    params = _convert_params(node, conv)

    body_stmts = list(node.body)
    docstring = None
    if (body_stmts and isinstance(body_stmts[0], ast.Expr)
            and isinstance(body_stmts[0].value, ast.Constant)
            and isinstance(body_stmts[0].value.value, str)):
        docstring = ast.get_docstring(node, clean=True)
        body_stmts = body_stmts[1:]
    body = conv.block(body_stmts)
    if not body:
        raise conv.fail("empty-body", "a skill needs at least one action", node)

    source = ast.get_source_segment(block, node) or block.strip()
    return SkillProgram(node.name, params, docstring, body, source=source)


def _convert_params(node: ast.FunctionDef, conv: _DefConverter) -> tuple[Param, ...]:
    a = node.args
    if a.vararg or a.kwarg or a.kwonlyargs or a.posonlyargs:
        raise conv.fail("parameter", "only plain positional parameters are allowed", node)
    defaults: list[ast.expr | None] = [None] * (len(a.args) - len(a.defaults)) + list(a.defaults)
    params = []
    for arg, default in zip(a.args, defaults):
        annotation = None
        if arg.annotation is not None:
            annotation = ast.unparse(arg.annotation)
        default_expr = None
        if default is not None:
            default_expr = conv.expr(default)
            if isinstance(default_expr, (ParamRef, Index, Slice)):
                raise conv.fail("parameter-default", "defaults must be literal values", default)
        params.append(Param(arg.arg, annotation, default_expr))
    return tuple(params)
