"""Derivatives of extended regular expressions through pluggable supports."""

from __future__ import annotations

from .boolfun import AND, NOT, OR, XOR, BoolFun, or_n
from .errors import (
    AlphabetRequired,
    ArityMismatch,
    BudgetExceeded,
    DerivKitError,
    ExprSyntaxError,
    MissingValuation,
    NonDisjunctive,
    NotSimple,
    UnknownSymbol,
)
from .expr import ONE, ZERO, BoolOp, Concat, Expr, One, Star, Sym, Zero, compare, nullable, simplify
from .syntax import parse, render

__all__ = [
    "AND", "NOT", "OR", "XOR", "BoolFun", "or_n",
    "AlphabetRequired", "ArityMismatch", "BudgetExceeded", "DerivKitError",
    "ExprSyntaxError", "MissingValuation", "NonDisjunctive", "NotSimple", "UnknownSymbol",
    "ONE", "ZERO", "BoolOp", "Concat", "Expr", "One", "Star", "Sym", "Zero",
    "compare", "nullable", "simplify", "parse", "render",
]
