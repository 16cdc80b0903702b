"""Restricted skill language: parser, validator, printer, interpreter."""

from .errors import (
    ArityMismatch,
    DepthExceeded,
    DslError,
    EvaluationError,
    SkillSyntaxError,
    UnboundIdentifier,
    UnsupportedConstruct,
)
from .interpreter import (
    DEFAULT_DEPTH_LIMIT,
    EnvHandle,
    ExecutionTrace,
    TraceStep,
    bind_arguments,
    evaluate_expr,
    interpret_call,
)
from .nodes import (
    Action,
    BoolLit,
    Cond,
    ENV_PREDICATES,
    Expr,
    For,
    If,
    Index,
    ListLit,
    NoneCond,
    NoneLit,
    NumberLit,
    PRIMITIVE_KIND,
    Param,
    ParamRef,
    PredicateCond,
    PrimitiveCall,
    SKILL_KIND,
    SkillCall,
    SkillProgram,
    Slice,
    Statement,
    StringLit,
    TruthyCond,
    format_cond,
    format_expr,
    format_literal,
    iter_calls,
    referenced_names,
)
from .parser import parse_single_skill, parse_skill_source
from .primitives import (
    PRIMITIVES,
    PrimitiveSig,
    TERMINATING,
    coerce_args,
    is_primitive,
)
from .printer import canonicalize, render_skill
from .validator import (
    MAX_STATEMENTS,
    MIN_STATEMENTS,
    ValidationReport,
    find_cycle,
    validate_batch,
    validate_skill,
)

__all__ = [
    "Action",
    "ArityMismatch",
    "BoolLit",
    "Cond",
    "DEFAULT_DEPTH_LIMIT",
    "DepthExceeded",
    "DslError",
    "ENV_PREDICATES",
    "EnvHandle",
    "EvaluationError",
    "ExecutionTrace",
    "Expr",
    "For",
    "If",
    "Index",
    "ListLit",
    "MAX_STATEMENTS",
    "MIN_STATEMENTS",
    "NoneCond",
    "NoneLit",
    "NumberLit",
    "PRIMITIVES",
    "PRIMITIVE_KIND",
    "Param",
    "ParamRef",
    "PredicateCond",
    "PrimitiveCall",
    "PrimitiveSig",
    "SKILL_KIND",
    "SkillCall",
    "SkillProgram",
    "SkillSyntaxError",
    "Slice",
    "Statement",
    "StringLit",
    "TERMINATING",
    "TraceStep",
    "TruthyCond",
    "UnboundIdentifier",
    "UnsupportedConstruct",
    "ValidationReport",
    "bind_arguments",
    "canonicalize",
    "coerce_args",
    "evaluate_expr",
    "find_cycle",
    "format_cond",
    "format_expr",
    "format_literal",
    "interpret_call",
    "is_primitive",
    "iter_calls",
    "parse_single_skill",
    "parse_skill_source",
    "referenced_names",
    "render_skill",
    "validate_batch",
    "validate_skill",
]
