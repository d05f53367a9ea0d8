"""Boolean formulas over an arbitrary atom set.

Formulas are trees (duplicated subformulas are kept).  ``Const`` carries
the constant-false marker used for pruned automaton transitions; no
simplification is ever performed on formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, Hashable, Iterable, Mapping, TypeVar

from .boolfun import AND, NOT, OR, XOR, BoolFun
from .errors import ArityMismatch, MissingValuation

A = TypeVar("A", bound=Hashable)
B = TypeVar("B", bound=Hashable)


class Formula(Generic[A]):
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula[A]):
    value: A


@dataclass(frozen=True)
class Op(Formula[A]):
    fun: BoolFun
    args: tuple[Formula[A], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.fun.arity:
            raise ArityMismatch(
                f"{self.fun.name} takes {self.fun.arity} arguments, got {len(self.args)}"
            )


@dataclass(frozen=True)
class Const(Formula[A]):
    value: bool


FALSE: Const = Const(False)
TRUE: Const = Const(True)


def f_or(*parts: Formula[A]) -> Formula[A]:
    out = parts[0]
    for p in parts[1:]:
        out = Op(OR, (out, p))
    return out


def f_and(*parts: Formula[A]) -> Formula[A]:
    out = parts[0]
    for p in parts[1:]:
        out = Op(AND, (out, p))
    return out


def f_not(phi: Formula[A]) -> Formula[A]:
    return Op(NOT, (phi,))


def evaluate(phi: Formula[A], valuation: Mapping[A, bool] | Callable[[A], bool]) -> bool:
    """Evaluate ``phi``; shared subtrees are evaluated once.

    ``valuation`` is a mapping or a callable; a missing atom raises
    :class:`MissingValuation`.
    """
    if callable(valuation) and not isinstance(valuation, Mapping):
        lookup = valuation
    else:
        mapping = valuation

        def lookup(a: A) -> bool:
            try:
                return mapping[a]
            except KeyError:
                raise MissingValuation(a) from None

    memo: dict[int, bool] = {}

    def go(node: Formula[A]) -> bool:
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        if isinstance(node, Atom):
            value = bool(lookup(node.value))
        elif isinstance(node, Op):
            value = node.fun(*(go(x) for x in node.args))
        elif isinstance(node, Const):
            value = node.value
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[id(node)] = value
        return value

    return go(phi)


def atoms(phi: Formula[A]) -> set[A]:
    out: set[A] = set()
    seen: set[int] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Atom):
            out.add(node.value)
        elif isinstance(node, Op):
            stack.extend(node.args)
    return out


def atoms_in_order(phi: Formula[A]) -> list[A]:
    """Atoms in left-to-right order of first occurrence."""
    out: dict[A, None] = {}

    def go(node: Formula[A]) -> None:
        if isinstance(node, Atom):
            out.setdefault(node.value, None)
        elif isinstance(node, Op):
            for x in node.args:
                go(x)

    go(phi)
    return list(out)


def map_atoms(phi: Formula[A], g: Callable[[A], Formula[B]]) -> Formula[B]:
    """Replace every ``Atom(a)`` by ``g(a)``, keeping the operator structure.

    ``g`` is called once per distinct atom and shared subtrees stay shared,
    so repeated substitution grows the formula linearly in memory.
    """
    sub: dict[A, Formula[B]] = {}
    memo: dict[int, Formula[B]] = {}

    def go(node: Formula[A]) -> Formula[B]:
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        if isinstance(node, Atom):
            out = sub.get(node.value)
            if out is None:
                out = sub[node.value] = g(node.value)
        elif isinstance(node, Op):
            out = Op(node.fun, tuple(go(x) for x in node.args))
        elif isinstance(node, Const):
            out = node
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[id(node)] = out
        return out

    return go(phi)


def is_disjunction(phi: Formula[A]) -> bool:
    """Atom, constant false, or an OR-tree whose leaves are atoms."""
    if isinstance(phi, Atom) or phi == FALSE:
        return True
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Op) and node.fun.is_or:
            stack.extend(node.args)
        elif not isinstance(node, Atom):
            return False
    return True


def disjuncts(phi: Formula[A]) -> list[Formula[A]]:
    """Flatten the top-level OR-tree, left to right."""
    if isinstance(phi, Op) and phi.fun.is_or:
        return disjuncts(phi.args[0]) + disjuncts(phi.args[1])
    return [phi]


def conjuncts(phi: Formula[A]) -> list[Formula[A]]:
    if isinstance(phi, Op) and phi.fun == AND:
        return conjuncts(phi.args[0]) + conjuncts(phi.args[1])
    return [phi]


_UNICODE = {OR: "∨", AND: "∧", XOR: "⊻"}
_ASCII = {OR: "+", AND: "&", XOR: "^"}
_RANK = {OR: 1, XOR: 2, AND: 3}


def to_text(
    phi: Formula[A],
    atom_text: Callable[[A], str] = str,
    ascii: bool = False,
) -> str:
    """Render with infix sugar for OR/AND/XOR and prefix NOT."""
    signs = _ASCII if ascii else _UNICODE
    not_sign = "!" if ascii else "¬"

    def go(node: Formula[A], min_rank: int) -> str:
        if isinstance(node, Atom):
            return atom_text(node.value)
        if isinstance(node, Const):
            return "1" if node.value else "0"
        assert isinstance(node, Op)
        if node.fun == NOT:
            return not_sign + go(node.args[0], 4)
        if node.fun in signs:
            rank = _RANK[node.fun]
            text = f" {signs[node.fun]} ".join(
                (go(node.args[0], rank), go(node.args[1], rank + 1))
            )
            return f"({text})" if rank < min_rank else text
        return f"{node.fun.name}({', '.join(go(x, 0) for x in node.args)})"

    return go(phi, 0)


def truth_table(phi: Formula[A], order: Iterable[A]) -> int:
    """Truth table of ``phi`` over ``order`` as a bit-parallel integer.

    Bit ``i`` is the value under the valuation whose j-th atom is bit j of
    ``i``.  Shared subtrees are computed once.
    """
    order = list(order)
    k = len(order)
    width = 1 << k
    full = (1 << width) - 1
    columns: dict[A, int] = {}
    for j, a in enumerate(order):
        block = ((1 << (1 << j)) - 1) << (1 << j)  # 1s where bit j is set, one period
        period = 1 << (j + 1)
        col = 0
        for start in range(0, width, period):
            col |= block << start
        columns[a] = col & full
    memo: dict[int, int] = {}

    def go(node: Formula[A]) -> int:
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        if isinstance(node, Atom):
            try:
                value = columns[node.value]
            except KeyError:
                raise MissingValuation(node.value) from None
        elif isinstance(node, Const):
            value = full if node.value else 0
        elif isinstance(node, Op):
            vals = [go(x) for x in node.args]
            fun = node.fun
            if fun == OR:
                value = vals[0] | vals[1]
            elif fun == AND:
                value = vals[0] & vals[1]
            elif fun == XOR:
                value = vals[0] ^ vals[1]
            elif fun == NOT:
                value = full & ~vals[0]
            else:
                value = 0
                for row, bit in zip(_rows(fun.arity), fun.table):
                    if not bit:
                        continue
                    term = full
                    for b, v in zip(row, vals):
                        term &= v if b else full & ~v
                    value |= term
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[id(node)] = value
        return value

    return go(phi)


def _rows(arity: int):
    from .boolfun import rows

    return rows(arity)
