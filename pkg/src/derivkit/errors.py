"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DerivKitError(Exception):
    """Base class for all errors raised by derivkit."""


class ExprSyntaxError(DerivKitError, ValueError):
    """Malformed expression text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at offset {position}")
        self.text = text
        self.position = position


class ArityMismatch(DerivKitError, ValueError):
    pass


class MissingValuation(DerivKitError, KeyError):
    def __init__(self, atom: object) -> None:
        super().__init__(atom)
        self.atom = atom

    def __str__(self) -> str:
        return f"no value for atom {self.atom!r}"


class AlphabetRequired(DerivKitError, ValueError):
    pass


class BudgetExceeded(DerivKitError, RuntimeError):
    def __init__(self, cap: int, what: str = "structures") -> None:
        super().__init__(f"more than {cap} distinct {what} discovered")
        self.cap = cap


class NotSimple(DerivKitError, ValueError):
    pass


class NonDisjunctive(DerivKitError, ValueError):
    def __init__(self, state: object, symbol: str | None, formula: object) -> None:
        where = "initial formula" if symbol is None else f"transition ({state}, {symbol})"
        super().__init__(f"{where} is not a disjunction of atoms: {formula}")
        self.state = state
        self.symbol = symbol
        self.formula = formula


class UnknownSymbol(DerivKitError, ValueError):
    pass
