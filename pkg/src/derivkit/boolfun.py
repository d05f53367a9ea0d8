"""k-ary boolean functions given by truth table.

The table is indexed by the argument tuple read as a big-endian binary
number: ``table[0]`` is f(0,...,0) and ``table[-1]`` is f(1,...,1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator


@dataclass(frozen=True)
class BoolFun:
    name: str
    arity: int
    table: tuple[bool, ...]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError(f"arity must be positive, got {self.arity}")
        table = tuple(bool(b) for b in self.table)
        if len(table) != 1 << self.arity:
            raise ValueError(
                f"{self.name}: table has {len(table)} rows, expected {1 << self.arity}"
            )
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(cls, name: str, arity: int, fn: Callable[..., bool]) -> "BoolFun":
        return cls(name, arity, tuple(bool(fn(*row)) for row in rows(arity)))

    def __call__(self, *bits: bool) -> bool:
        if len(bits) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} arguments, got {len(bits)}")
        index = 0
        for b in bits:
            index = (index << 1) | bool(b)
        return self.table[index]

    @property
    def is_or(self) -> bool:
        """True for the binary disjunction, whatever the function is named."""
        return self.arity == 2 and self.table == (False, True, True, True)

    @property
    def complement_like(self) -> bool:
        # f(0,...,0) = 1 means the lifted language operator is alphabet-relative
        return self.table[0]

    def satisfying_rows(self) -> Iterator[tuple[bool, ...]]:
        for row, value in zip(rows(self.arity), self.table):
            if value:
                yield row

    def bits(self) -> list[int]:
        return [int(b) for b in self.table]

    def __repr__(self) -> str:
        if BUILTINS.get(self.name) == self:
            return self.name
        return f"BoolFun({self.name!r}, {self.arity}, {''.join(map(str, self.bits()))})"


def rows(arity: int) -> Iterator[tuple[bool, ...]]:
    """All argument tuples in lexicographic order, 0 before 1."""
    return itertools.product((False, True), repeat=arity)


OR = BoolFun("OR", 2, (False, True, True, True))
AND = BoolFun("AND", 2, (False, False, False, True))
NOT = BoolFun("NOT", 1, (True, False))
XOR = BoolFun("XOR", 2, (False, True, True, False))

BUILTINS: dict[str, BoolFun] = {f.name: f for f in (OR, AND, NOT, XOR)}


def or_n(k: int) -> BoolFun:
    """The k-ary disjunction (``OR3`` for k=3 and so on)."""
    return BoolFun.from_callable(f"OR{k}", k, lambda *b: any(b))
