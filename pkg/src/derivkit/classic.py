"""Antimirov, Brzozowski and dissimilar-Brzozowski supports.

The stand-alone ``classical_*`` functions re-implement the textbook
derivatives directly, without going through :func:`derive_sym`; they exist
to cross-check the generic derivation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .boolfun import OR, BoolFun
from .errors import NotSimple
from .expr import ONE, ZERO, BoolOp, Concat, Expr, Star, Sym, is_simple, simplify, simplify_if
from .support import SupportInstance

ExprSet = frozenset  # frozenset[Expr]; iteration order is irrelevant, h sorts


def h_sum(exprs: Iterable[Expr]) -> Expr:
    """Left-folded sum in canonical order; the empty sum is 0."""
    ordered = sorted(set(exprs), key=lambda e: e.key)
    if not ordered:
        return ZERO
    out = ordered[0]
    for e in ordered[1:]:
        out = BoolOp(OR, (out, e))
    return out


def show_set(s: frozenset) -> str:
    return "{" + ", ".join(str(e) for e in sorted(s, key=lambda e: e.key)) + "}"


def antimirov(simplify: bool = True) -> SupportInstance[frozenset]:
    """Sets of expressions: union for the sum, singleton otherwise, product elementwise."""

    def apply_fun(fun: BoolFun, args) -> frozenset:
        if fun.is_or:
            return args[0] | args[1]
        return frozenset({simplify_if(simplify, BoolOp(fun, [h_sum(x) for x in args]))})

    def dot(s: frozenset, f: Expr) -> frozenset:
        return frozenset(simplify_if(simplify, Concat(e, f)) for e in s)

    return SupportInstance(
        name="antimirov",
        kind="exprset",
        h=h_sum,
        apply_fun=apply_fun,
        dot=dot,
        one=frozenset({ONE}),
        zero=frozenset(),
        display=show_set,
        simplify=simplify,
        declares_h1h2=True,
    )


def brzozowski(simplify: bool = True) -> SupportInstance[Expr]:
    """Expressions themselves, with the plain (non-ACI) sum."""

    def apply_fun(fun: BoolFun, args) -> Expr:
        return BoolOp(fun, args)

    def dot(s: Expr, f: Expr) -> Expr:
        return simplify_if(simplify, Concat(s, f))

    return SupportInstance(
        name="brzozowski",
        kind="expr",
        h=lambda e: e,
        apply_fun=apply_fun,
        dot=dot,
        one=ONE,
        zero=ZERO,
        display=str,
        simplify=simplify,
        declares_h1h2=False,
    )


def dissimilar(simplify: bool = True) -> SupportInstance[frozenset]:
    """Sets read back as sums; the product collapses the set into one summand."""

    def apply_fun(fun: BoolFun, args) -> frozenset:
        if fun.is_or:
            return args[0] | args[1]
        return frozenset({simplify_if(simplify, BoolOp(fun, [h_sum(x) for x in args]))})

    def dot(s: frozenset, f: Expr) -> frozenset:
        return frozenset({simplify_if(simplify, Concat(h_sum(s), f))})

    return SupportInstance(
        name="dissimilar",
        kind="exprset",
        h=h_sum,
        apply_fun=apply_fun,
        dot=dot,
        one=frozenset({ONE}),
        zero=frozenset({ZERO}),
        display=show_set,
        simplify=simplify,
        declares_h1h2=True,
    )


# stand-alone derivatives ---------------------------------------------------------


def classical_brzozowski(a: str, e: Expr, simplify: bool = True) -> Expr:
    """Brzozowski's derivative with the plain sum."""
    return _brzozowski(a, e, simplify)


@lru_cache(maxsize=100_000)
def _brzozowski(a: str, e: Expr, flag: bool) -> Expr:
    if isinstance(e, Sym):
        return ONE if e.char == a else ZERO
    if isinstance(e, Concat):
        head = simplify_if(flag, Concat(_brzozowski(a, e.left, flag), e.right))
        if e.left.nullable:
            return BoolOp(OR, (head, _brzozowski(a, e.right, flag)))
        return head
    if isinstance(e, Star):
        return simplify_if(flag, Concat(_brzozowski(a, e.inner, flag), e))
    if isinstance(e, BoolOp):
        return BoolOp(e.fun, [_brzozowski(a, x, flag) for x in e.args])
    return ZERO


def classical_antimirov(a: str, e: Expr, simplify: bool = True) -> frozenset:
    """Antimirov's partial derivatives; only sums are allowed as boolean operators."""
    if not is_simple(e):
        raise NotSimple(f"{e} uses a boolean operator other than the sum")
    return _antimirov(a, e, simplify)


@lru_cache(maxsize=100_000)
def _antimirov(a: str, e: Expr, flag: bool) -> frozenset:
    if isinstance(e, Sym):
        return frozenset({ONE}) if e.char == a else frozenset()
    if isinstance(e, BoolOp):
        return _antimirov(a, e.args[0], flag) | _antimirov(a, e.args[1], flag)
    if isinstance(e, Concat):
        out = frozenset(simplify_if(flag, Concat(x, e.right)) for x in _antimirov(a, e.left, flag))
        if e.left.nullable:
            out |= _antimirov(a, e.right, flag)
        return out
    if isinstance(e, Star):
        return frozenset(simplify_if(flag, Concat(x, e)) for x in _antimirov(a, e.inner, flag))
    return frozenset()


def summands(e: Expr) -> list[Expr]:
    """Leaves of the top-level sum tree, left to right."""
    if isinstance(e, BoolOp) and e.fun.is_or:
        return summands(e.args[0]) + summands(e.args[1])
    return [e]


def aci_sum(*parts: Expr) -> Expr:
    """Sum taken modulo associativity, commutativity and idempotence."""
    flat: list[Expr] = []
    for p in parts:
        flat.extend(summands(p))
    return h_sum(flat)


def classical_dissimilar(a: str, e: Expr, simplify: bool = True) -> Expr:
    """Brzozowski's derivative where every produced sum is an ACI sum."""
    return _dissimilar(a, e, simplify)


@lru_cache(maxsize=100_000)
def _dissimilar(a: str, e: Expr, flag: bool) -> Expr:
    if isinstance(e, Sym):
        return ONE if e.char == a else ZERO
    if isinstance(e, Concat):
        head = simplify_if(flag, Concat(_dissimilar(a, e.left, flag), e.right))
        if e.left.nullable:
            return simplify_if(flag, aci_sum(head, _dissimilar(a, e.right, flag)))
        return head
    if isinstance(e, Star):
        return simplify_if(flag, Concat(_dissimilar(a, e.inner, flag), e))
    if isinstance(e, BoolOp):
        args = [_dissimilar(a, x, flag) for x in e.args]
        if e.fun.is_or:
            return simplify_if(flag, aci_sum(*args))
        return simplify_if(flag, BoolOp(e.fun, args))
    return ZERO


def aci_normalize(e: Expr) -> Expr:
    """Every sum tree flattened, sorted and deduplicated, then simplified.

    Simplifying can lift a sum into a sum position (``c + 1.(b+a)``), so the
    two steps repeat until nothing changes.
    """
    cur = simplify(e)
    while True:
        nxt = simplify(_aci(cur))
        if nxt is cur:
            return cur
        cur = nxt


@lru_cache(maxsize=100_000)
def _aci(e: Expr) -> Expr:
    if isinstance(e, BoolOp):
        if e.fun.is_or:
            return h_sum(_aci(x) for x in summands(e))
        return BoolOp(e.fun, [_aci(x) for x in e.args])
    if isinstance(e, Concat):
        return Concat(_aci(e.left), _aci(e.right))
    if isinstance(e, Star):
        return Star(_aci(e.inner))
    return e
