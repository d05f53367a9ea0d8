"""Seeded random expressions and structures for law checks and tests."""

from __future__ import annotations

import random
from typing import Sequence

from .boolfun import AND, NOT, OR, XOR, BoolFun
from .clausal import ClausalForm, Literal
from .expr import ONE, ZERO, BoolOp, Concat, Expr, Star, Sym
from .support import SupportInstance

DEFAULT_FUNS: tuple[BoolFun, ...] = (OR, AND, NOT, XOR)


def random_expr(
    rng: random.Random,
    depth: int = 4,
    alphabet: str = "ab",
    funs: Sequence[BoolFun] = DEFAULT_FUNS,
    simple: bool = False,
) -> Expr:
    """A random expression whose tree depth is at most ``depth``.

    With ``simple`` the only boolean operator used is the sum.
    """
    if simple:
        funs = (OR,)
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return ZERO
        if r < 0.16:
            return ONE
        return Sym(rng.choice(alphabet))
    kind = rng.random()
    if kind < 0.35:
        return Concat(
            random_expr(rng, depth - 1, alphabet, funs), random_expr(rng, depth - 1, alphabet, funs)
        )
    if kind < 0.55:
        return Star(random_expr(rng, depth - 1, alphabet, funs))
    fun = rng.choice(list(funs))
    return BoolOp(fun, [random_expr(rng, depth - 1, alphabet, funs) for _ in range(fun.arity)])


def random_exprs(
    count: int,
    seed: int = 0,
    depth: int = 4,
    alphabet: str = "ab",
    funs: Sequence[BoolFun] = DEFAULT_FUNS,
    simple: bool = False,
) -> list[Expr]:
    rng = random.Random(seed)
    return [random_expr(rng, depth, alphabet, funs, simple) for _ in range(count)]


def random_clausal(
    rng: random.Random, max_clauses: int = 3, max_lits: int = 3, atoms: Sequence[Expr] | None = None
) -> ClausalForm:
    """Small random clausal form; literals drawn from ``atoms`` if given."""
    pool = list(atoms) if atoms is not None else None
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        lits = []
        for _ in range(rng.randint(0, max_lits)):
            e = rng.choice(pool) if pool else random_expr(rng, 2)
            lits.append(Literal(e, rng.random() < 0.5))
        clauses.append(frozenset(lits))
    return ClausalForm(frozenset(clauses))


def random_structure(sup: SupportInstance, rng: random.Random):
    if sup.kind == "expr":
        return random_expr(rng, 3)
    if sup.kind == "exprset":
        # a support whose zero is {0} never produces the empty set
        smallest = 1 if sup.zero else 0
        return frozenset(random_expr(rng, 2) for _ in range(rng.randint(smallest, 3)))
    if sup.kind == "clausal":
        return random_clausal(rng)
    raise ValueError(f"no sampler for structures of kind {sup.kind!r}")


def law_samples(
    sup: SupportInstance, count: int = 100, seed: int = 0, arity: int = 2
) -> list[tuple[list, list[Expr]]]:
    """``count`` pairs of (structures, expressions) for :func:`check_support_laws`."""
    rng = random.Random(seed)
    return [
        (
            [random_structure(sup, rng) for _ in range(arity)],
            [random_expr(rng, 2) for _ in range(2)],
        )
        for _ in range(count)
    ]
