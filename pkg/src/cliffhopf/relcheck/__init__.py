"""Relation language, suite runner and deformation fitter."""

from .evaluate import DEFORM_MODES, EvalEnv, Evaluator, TypeMismatch, UnboundSymbol, evaluate, mv_to_expr, residual
from .fit import BadFamily, FitResult, Objective, PairFamily, family, fit
from .parser import (
    FUNCTIONS,
    Bin,
    Call,
    Expr,
    ExprSyntaxError,
    Num,
    Sym,
    Unary,
    UnknownFunction,
    parse,
    to_text,
    tokenize,
)
from .report import Report, Row, run

__all__ = [
    "DEFORM_MODES", "EvalEnv", "Evaluator", "TypeMismatch", "UnboundSymbol", "evaluate", "mv_to_expr", "residual",
    "BadFamily", "FitResult", "Objective", "PairFamily", "family", "fit",
    "FUNCTIONS", "Bin", "Call", "Expr", "ExprSyntaxError", "Num", "Sym", "Unary", "UnknownFunction",
    "parse", "to_text", "tokenize", "Report", "Row", "run",
]
