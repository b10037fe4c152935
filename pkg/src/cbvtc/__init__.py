"""Weak call-by-value higher-order rewriting with cost-size tuple interpretations."""

__version__ = "0.1.0"

from .engine import Fuel, derivation_height, match_rule, normalize, step
from .parser import parse_expr, parse_interpretation, parse_term, parse_trs
from .pretty import format_cstuple, format_expr, format_term, format_trs
from .semantics import (
    CSTuple,
    GridSpec,
    Interpretation,
    compare,
    eval_expr,
    interpret_term,
    make_zero_cost,
    sem_apply,
    type_interpretation,
)
from .stypes import Arrow, Base, Signature
from .terms import TRS, App, Lam, Rule, Sym, Var, alpha_eq, classify_symbols, is_value, substitute, typecheck
from .analyzer import bound_vs_actual, extract_bound, verify_rules

__all__ = [
    "App", "Arrow", "Base", "CSTuple", "Fuel", "GridSpec", "Interpretation", "Lam", "Rule",
    "Signature", "Sym", "TRS", "Var", "alpha_eq", "bound_vs_actual", "classify_symbols",
    "compare", "derivation_height", "eval_expr", "extract_bound", "format_cstuple",
    "format_expr", "format_term", "format_trs", "interpret_term", "is_value", "make_zero_cost",
    "match_rule", "normalize", "parse_expr", "parse_interpretation", "parse_term", "parse_trs",
    "sem_apply", "step", "substitute", "type_interpretation", "typecheck", "verify_rules",
]
