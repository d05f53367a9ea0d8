"""Naive string-set semantics, used to validate the bitmask oracle."""

from __future__ import annotations

import itertools

from derivkit.expr import BoolOp, Concat, Expr, One, Star, Sym, Zero


def words_upto(sigma: str, n: int) -> list[str]:
    out = [""]
    for length in range(1, n + 1):
        out.extend("".join(p) for p in itertools.product(sorted(sigma), repeat=length))
    return out


def lang(e: Expr, n: int, sigma: str) -> set[str]:
    if isinstance(e, Zero):
        return set()
    if isinstance(e, One):
        return {""}
    if isinstance(e, Sym):
        return {e.char} if n >= 1 else set()
    if isinstance(e, Concat):
        left, right = lang(e.left, n, sigma), lang(e.right, n, sigma)
        return {u + v for u in left for v in right if len(u) + len(v) <= n}
    if isinstance(e, Star):
        inner = lang(e.inner, n, sigma)
        out = {""}
        while True:
            bigger = out | {u + v for u in out for v in inner if len(u) + len(v) <= n}
            if bigger == out:
                return out
            out = bigger
    if isinstance(e, BoolOp):
        parts = [lang(x, n, sigma) for x in e.args]
        return {w for w in words_upto(sigma, n) if e.fun(*(w in p for p in parts))}
    raise TypeError(e)
