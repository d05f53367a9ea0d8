"""Concrete syntax for expressions.

Precedence, loosest first::

    +   sum (OR), left-assoc
    ^   XOR, left-assoc
    &   AND, left-assoc
        juxtaposition (concatenation), left-assoc
    !   prefix NOT
    *   postfix star

``0`` and ``1`` are the constants, letters a-z are symbols, blanks are
ignored.  Functions other than the four builtins have no text form; they
render as ``NAME(arg,...)`` for display only.
"""

from __future__ import annotations

from .boolfun import AND, NOT, OR, XOR
from .errors import ExprSyntaxError
from .expr import ONE, ZERO, BoolOp, Concat, Expr, Star, Sym

_BINARY = {"+": OR, "^": XOR, "&": AND}
_LEVELS = ("+", "^", "&")

# binding strength used by render
_P_OR, _P_XOR, _P_AND, _P_CAT, _P_NOT, _P_STAR, _P_ATOM = range(7)
_INFIX = {OR: ("+", _P_OR), XOR: ("^", _P_XOR), AND: ("&", _P_AND)}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Expr:
        if not self.peek():
            raise self.error("empty expression")
        e = self.binary(0)
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return e

    def binary(self, level: int) -> Expr:
        if level == len(_LEVELS):
            return self.concat()
        op = _LEVELS[level]
        left = self.binary(level + 1)
        while self.peek() == op:
            self.pos += 1
            right = self.binary(level + 1)
            left = BoolOp(_BINARY[op], (left, right))
        return left

    def starts_unary(self, c: str) -> bool:
        return c == "(" or c == "!" or c in "01" or ("a" <= c <= "z")

    def concat(self) -> Expr:
        left = self.unary()
        while self.peek() and self.starts_unary(self.peek()):
            left = Concat(left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek() == "!":
            self.pos += 1
            return BoolOp(NOT, (self.unary(),))
        e = self.atom()
        while self.peek() == "*":
            self.pos += 1
            e = Star(e)
        return e

    def atom(self) -> Expr:
        c = self.peek()
        if not c:
            raise self.error("unexpected end of input")
        if c == "(":
            open_at = self.pos
            self.pos += 1
            if self.peek() == ")":
                raise self.error("empty parentheses")
            e = self.binary(0)
            if self.peek() != ")":
                raise self.error("unbalanced '('", open_at if not self.peek() else None)
            self.pos += 1
            return e
        if c == "0":
            self.pos += 1
            return ZERO
        if c == "1":
            self.pos += 1
            return ONE
        if "a" <= c <= "z":
            self.pos += 1
            return Sym(c)
        raise self.error(f"unexpected {c!r}")


def parse(text: str) -> Expr:
    """Parse ``text``; raises :class:`ExprSyntaxError` with a 0-based offset."""
    return _Parser(text).parse()


def _prec(e: Expr) -> int:
    if isinstance(e, Concat):
        return _P_CAT
    if isinstance(e, Star):
        return _P_STAR
    if isinstance(e, BoolOp):
        if e.fun == NOT:
            return _P_NOT
        if e.fun in _INFIX:
            return _INFIX[e.fun][1]
    return _P_ATOM


def render(e: Expr) -> str:
    """Minimally parenthesized text with ``parse(render(e)) == e``."""
    out: list[str] = []
    _emit(e, out)
    return "".join(out)


def _wrap(e: Expr, min_prec: int, out: list[str]) -> None:
    if _prec(e) < min_prec:
        out.append("(")
        _emit(e, out)
        out.append(")")
    else:
        _emit(e, out)


def _emit(e: Expr, out: list[str]) -> None:
    if e is ZERO:
        out.append("0")
    elif e is ONE:
        out.append("1")
    elif isinstance(e, Sym):
        out.append(e.char)
    elif isinstance(e, Star):
        _wrap(e.inner, _P_STAR, out)
        out.append("*")
    elif isinstance(e, Concat):
        _wrap(e.left, _P_CAT, out)
        _wrap(e.right, _P_NOT, out)
    elif isinstance(e, BoolOp):
        if e.fun == NOT:
            out.append("!")
            _wrap(e.args[0], _P_NOT, out)
        elif e.fun in _INFIX:
            sign, p = _INFIX[e.fun]
            _wrap(e.args[0], p, out)
            out.append(sign)
            _wrap(e.args[1], p + 1, out)
        else:
            out.append(e.fun.name)
            out.append("(")
            for i, a in enumerate(e.args):
                if i:
                    out.append(",")
                _emit(a, out)
            out.append(")")
    else:  # pragma: no cover
        raise TypeError(f"not an expression: {e!r}")
