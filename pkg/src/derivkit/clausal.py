"""Clausal forms over expressions and the support built on them.

A clausal form is a set of clauses; a clause is a set of literals; a
literal is an expression with a sign.  Read back as a sum of conjunctions,
so ``{∅}`` (one empty clause) means "everything" and ``∅`` means nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from .boolfun import AND, NOT, OR, BoolFun, rows
from .errors import ArityMismatch
from .expr import ONE, ZERO, BoolOp, Concat, Expr, simplify_if
from .support import SupportInstance


class Literal(NamedTuple):
    expr: Expr
    negated: bool = False

    def flip(self) -> "Literal":
        return Literal(self.expr, not self.negated)

    @property
    def sort_key(self) -> tuple:
        # positive before negative on the same expression
        return (self.expr.key, self.negated)

    def readback(self) -> Expr:
        return BoolOp(NOT, (self.expr,)) if self.negated else self.expr

    def __str__(self) -> str:
        return ("!" if self.negated else "") + str(self.expr)


Clause = frozenset  # frozenset[Literal]


def clause_key(clause: Clause) -> tuple:
    return tuple(sorted(lit.sort_key for lit in clause))


def sorted_literals(clause: Clause) -> list[Literal]:
    return sorted(clause, key=lambda lit: lit.sort_key)


@dataclass(frozen=True)
class ClausalForm:
    clauses: frozenset  # frozenset[Clause]

    @classmethod
    def of(cls, *clauses: Iterable[Literal | Expr]) -> "ClausalForm":
        """Build from literal iterables; bare expressions count as positive literals."""
        return cls(
            frozenset(
                frozenset(x if isinstance(x, Literal) else Literal(x) for x in c) for c in clauses
            )
        )

    def ordered(self) -> list[list[Literal]]:
        return [sorted_literals(c) for c in sorted(self.clauses, key=clause_key)]

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, c)) + "}" for c in self.ordered())
        return "{" + inner + "}"


EMPTY = ClausalForm(frozenset())
TOP = ClausalForm(frozenset({frozenset()}))


def oplus(c1: ClausalForm, c2: ClausalForm) -> ClausalForm:
    return ClausalForm(c1.clauses | c2.clauses)


def otimes(c1: ClausalForm, c2: ClausalForm) -> ClausalForm:
    return ClausalForm(frozenset(x | y for x in c1.clauses for y in c2.clauses))


def ominus(c: ClausalForm) -> ClausalForm:
    """Negation: product over clauses of the sum of flipped singletons."""
    if not c.clauses:
        return TOP
    if c.clauses == TOP.clauses:
        return EMPTY
    out = TOP
    for clause in c.clauses:
        flipped = ClausalForm(frozenset(frozenset({lit.flip()}) for lit in clause))
        out = otimes(out, flipped)
    return out


def h_clausal(c: ClausalForm) -> Expr:
    """Sum over clauses of the conjunction of their literals; empty clause reads as !0."""
    if not c.clauses:
        return ZERO
    terms = []
    for lits in c.ordered():
        if not lits:
            terms.append(BoolOp(NOT, (ZERO,)))
            continue
        term = lits[0].readback()
        for lit in lits[1:]:
            term = BoolOp(AND, (term, lit.readback()))
        terms.append(term)
    return reduce(lambda x, y: BoolOp(OR, (x, y)), terms)


def f_clausal(fun: BoolFun, args: Sequence[ClausalForm]) -> ClausalForm:
    """Lift ``fun`` through its truth table: sum over satisfying rows of products."""
    if len(args) != fun.arity:
        raise ArityMismatch(f"{fun.name} takes {fun.arity} arguments, got {len(args)}")
    negs: list[ClausalForm | None] = [None] * len(args)
    out = EMPTY
    for row, value in zip(rows(fun.arity), fun.table):
        if not value:
            continue
        parts = []
        for j, bit in enumerate(row):
            if bit:
                parts.append(args[j])
            else:
                if negs[j] is None:
                    negs[j] = ominus(args[j])
                parts.append(negs[j])
        out = oplus(out, reduce(otimes, parts))
    return out


def dot_clausal(c: ClausalForm, f: Expr, simplify: bool = True) -> ClausalForm:
    """Each clause becomes the one-literal clause ``h({clause}).f``."""
    return ClausalForm(
        frozenset(
            frozenset({Literal(simplify_if(simplify, Concat(h_clausal(ClausalForm(frozenset({cl}))), f)))})
            for cl in c.clauses
        )
    )


def clausal(simplify: bool = True) -> SupportInstance[ClausalForm]:
    def apply_fun(fun: BoolFun, args: Sequence[ClausalForm]) -> ClausalForm:
        if fun.is_or:
            return oplus(args[0], args[1])
        return f_clausal(fun, args)

    return SupportInstance(
        name="clausal",
        kind="clausal",
        h=h_clausal,
        apply_fun=apply_fun,
        dot=lambda c, f: dot_clausal(c, f, simplify),
        one=ClausalForm.of([ONE]),
        zero=EMPTY,
        display=str,
        simplify=simplify,
        declares_h1h2=True,
    )
