"""Extended regular expressions.

Nodes are hash-consed: building the same tree twice returns the same
object, so structural equality is identity and hashing is O(1).  No
algebraic identification happens at construction; ``a+b`` and ``b+a`` are
different nodes.

Each node carries a precomputed ``key`` (a nested tuple) that realizes the
canonical total order, and its ``nullable`` bit.
"""

from __future__ import annotations

import threading
import weakref
from typing import Iterable, Sequence

from .boolfun import AND, NOT, OR, XOR, BoolFun
from .errors import ArityMismatch

_INTERN: "weakref.WeakValueDictionary[tuple, Expr]" = weakref.WeakValueDictionary()
_LOCK = threading.Lock()
_SELF = object()  # marks a node that is its own simplification


def _publish(ident: tuple, node: "Expr") -> "Expr":
    with _LOCK:
        existing = _INTERN.get(ident)
        if existing is not None:
            return existing
        _INTERN[ident] = node
        return node


class Expr:
    __slots__ = ("key", "nullable", "size", "symbols", "_simp", "__weakref__")

    key: tuple
    nullable: bool
    size: int
    symbols: frozenset[str]

    def _init(self, key: tuple, nullable: bool, size: int, symbols: frozenset[str]) -> None:
        self.key = key
        self.nullable = nullable
        self.size = size
        self.symbols = symbols
        self._simp = None

    def __copy__(self) -> "Expr":
        return self

    def __deepcopy__(self, memo: dict) -> "Expr":
        return self

    def __lt__(self, other: "Expr") -> bool:
        return self.key < other.key

    def __le__(self, other: "Expr") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Expr") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Expr") -> bool:
        return self.key >= other.key

    def __str__(self) -> str:
        from .syntax import render

        return render(self)


class Zero(Expr):
    __slots__ = ()

    def __new__(cls) -> "Zero":
        node = _INTERN.get(("zero",))
        if node is None:
            node = object.__new__(cls)
            node._init((0,), False, 1, frozenset())
            node = _publish(("zero",), node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (Zero, ())

    def __repr__(self) -> str:
        return "Zero()"


class One(Expr):
    __slots__ = ()

    def __new__(cls) -> "One":
        node = _INTERN.get(("one",))
        if node is None:
            node = object.__new__(cls)
            node._init((1,), True, 1, frozenset())
            node = _publish(("one",), node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (One, ())

    def __repr__(self) -> str:
        return "One()"


class Sym(Expr):
    __slots__ = ("char",)
    char: str

    def __new__(cls, char: str) -> "Sym":
        ident = ("sym", char)
        node = _INTERN.get(ident)
        if node is None:
            if not (isinstance(char, str) and len(char) == 1 and "a" <= char <= "z"):
                raise ValueError(f"symbols are single letters a-z, got {char!r}")
            node = object.__new__(cls)
            node.char = char
            node._init((2, char), False, 1, frozenset(char))
            node = _publish(ident, node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (Sym, (self.char,))

    def __repr__(self) -> str:
        return f"Sym({self.char!r})"


def _union(sets: Sequence[frozenset[str]]) -> frozenset[str]:
    best = max(sets, key=len)
    if all(s <= best for s in sets):
        return best
    return frozenset().union(*sets)


class Star(Expr):
    __slots__ = ("inner",)
    inner: Expr

    def __new__(cls, inner: Expr) -> "Star":
        ident = ("star", inner)
        node = _INTERN.get(ident)
        if node is None:
            node = object.__new__(cls)
            node.inner = inner
            node._init((3, inner.key), True, inner.size + 1, inner.symbols)
            node = _publish(ident, node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (Star, (self.inner,))

    def __repr__(self) -> str:
        return f"Star({self.inner!r})"


class Concat(Expr):
    __slots__ = ("left", "right")
    left: Expr
    right: Expr

    def __new__(cls, left: Expr, right: Expr) -> "Concat":
        ident = ("cat", left, right)
        node = _INTERN.get(ident)
        if node is None:
            node = object.__new__(cls)
            node.left = left
            node.right = right
            node._init(
                (4, left.key, right.key),
                left.nullable and right.nullable,
                left.size + right.size + 1,
                _union((left.symbols, right.symbols)),
            )
            node = _publish(ident, node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (Concat, (self.left, self.right))

    def __repr__(self) -> str:
        return f"Concat({self.left!r}, {self.right!r})"


class BoolOp(Expr):
    """A k-ary boolean operator node; ``BoolOp(OR, (E, F))`` is the sum E+F."""

    __slots__ = ("fun", "args")
    fun: BoolFun
    args: tuple[Expr, ...]

    def __new__(cls, fun: BoolFun, args: Iterable[Expr]) -> "BoolOp":
        args = tuple(args)
        ident = ("op", fun, args)
        node = _INTERN.get(ident)
        if node is None:
            if len(args) != fun.arity:
                raise ArityMismatch(f"{fun.name} takes {fun.arity} arguments, got {len(args)}")
            node = object.__new__(cls)
            node.fun = fun
            node.args = args
            node._init(
                (5, fun.name, fun.table, tuple(a.key for a in args)),
                fun(*(a.nullable for a in args)),
                sum(a.size for a in args) + 1,
                _union([a.symbols for a in args]),
            )
            node = _publish(ident, node)
        return node  # type: ignore[return-value]

    def __reduce__(self):
        return (BoolOp, (self.fun, self.args))

    def __repr__(self) -> str:
        return f"BoolOp({self.fun!r}, {self.args!r})"


ZERO = Zero()
ONE = One()


# construction helpers ------------------------------------------------------

def cat(*parts: Expr) -> Expr:
    """Left-associated concatenation; ``cat()`` is 1."""
    if not parts:
        return ONE
    out = parts[0]
    for p in parts[1:]:
        out = Concat(out, p)
    return out


def alt(*parts: Expr) -> Expr:
    """Left-associated sum; ``alt()`` is 0."""
    if not parts:
        return ZERO
    out = parts[0]
    for p in parts[1:]:
        out = BoolOp(OR, (out, p))
    return out


def conj(*parts: Expr) -> Expr:
    if not parts:
        return BoolOp(NOT, (ZERO,))
    out = parts[0]
    for p in parts[1:]:
        out = BoolOp(AND, (out, p))
    return out


def neg(e: Expr) -> Expr:
    return BoolOp(NOT, (e,))


def xor(e: Expr, f: Expr) -> Expr:
    return BoolOp(XOR, (e, f))


def word(w: str) -> Expr:
    return cat(*(Sym(c) for c in w))


# core operations -------------------------------------------------------------

def nullable(e: Expr) -> bool:
    """Whether the empty word is denoted by ``e`` (computed at construction)."""
    return e.nullable


def compare(e1: Expr, e2: Expr) -> int:
    """Canonical total order: -1, 0 or 1.

    Constructor rank Zero < One < Sym < Star < Concat < BoolOp, then
    lexicographic on (symbol | children | function name, table, args).
    """
    if e1 is e2:
        return 0
    return -1 if e1.key < e2.key else 1


def is_sum(e: Expr) -> bool:
    return isinstance(e, BoolOp) and e.fun.is_or


def is_simple(e: Expr) -> bool:
    """Only boolean operator used is the binary sum."""
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, BoolOp):
            if not node.fun.is_or:
                return False
            stack.extend(node.args)
        elif isinstance(node, Concat):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Star):
            stack.append(node.inner)
    return True


def funs_used(e: Expr) -> set[BoolFun]:
    out: set[BoolFun] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, BoolOp):
            out.add(node.fun)
            stack.extend(node.args)
        elif isinstance(node, Concat):
            stack.extend((node.left, node.right))
        elif isinstance(node, Star):
            stack.append(node.inner)
    return out


def depth(e: Expr) -> int:
    if isinstance(e, Star):
        return 1 + depth(e.inner)
    if isinstance(e, Concat):
        return 1 + max(depth(e.left), depth(e.right))
    if isinstance(e, BoolOp):
        return 1 + max(depth(a) for a in e.args)
    return 0


def simplify(e: Expr) -> Expr:
    """Rewrite E+0, 0+E -> E; E.0, 0.E -> 0; E.1, 1.E -> E bottom-up.

    No other identity is applied.  Results are memoized on the node.
    """
    cached = e._simp
    if cached is not None:
        return e if cached is _SELF else cached
    if isinstance(e, Concat):
        left = simplify(e.left)
        right = simplify(e.right)
        if left is ZERO or right is ZERO:
            out: Expr = ZERO
        elif left is ONE:
            out = right
        elif right is ONE:
            out = left
        elif left is e.left and right is e.right:
            out = e
        else:
            out = Concat(left, right)
    elif isinstance(e, Star):
        inner = simplify(e.inner)
        out = e if inner is e.inner else Star(inner)
    elif isinstance(e, BoolOp):
        args = tuple(simplify(a) for a in e.args)
        if e.fun.is_or and args[1] is ZERO:
            out = args[0]
        elif e.fun.is_or and args[0] is ZERO:
            out = args[1]
        elif all(x is y for x, y in zip(args, e.args)):
            out = e
        else:
            out = BoolOp(e.fun, args)
    else:
        out = e
    e._simp = _SELF if out is e else out
    if out._simp is None:
        out._simp = _SELF
    return out


def simplify_if(flag: bool, e: Expr) -> Expr:
    return simplify(e) if flag else e
