"""Reversible sequential logic workbench: gates, latches, metrics."""

from ._core import (
    Circuit,
    DefinitionError,
    EvalError,
    Gate,
    LookupError,
    OscillationError,
    ParseError,
    Simulator,
    ValidationError,
    builtin_design,
    builtin_design_names,
    eval_expr,
    expr_vars,
    gate,
    gate_names,
    is_bijective,
    parse_circuit,
    parse_expr,
    parse_gates,
    reproduce,
    validate,
)

__all__ = [
    "Circuit",
    "DefinitionError",
    "EvalError",
    "Gate",
    "LookupError",
    "OscillationError",
    "ParseError",
    "Simulator",
    "ValidationError",
    "builtin_design",
    "builtin_design_names",
    "eval_expr",
    "expr_vars",
    "gate",
    "gate_names",
    "is_bijective",
    "parse_circuit",
    "parse_expr",
    "parse_gates",
    "reproduce",
    "validate",
]
