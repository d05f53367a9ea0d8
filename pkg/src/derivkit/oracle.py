"""Bounded-length language semantics, computed without derivatives.

A language restricted to words of length at most ``n`` over a sorted
alphabet is stored as a Python integer: bit ``i`` stands for the i-th word
in shortlex order.  Union, intersection and the other boolean operators
become bitwise operations; concatenation and star are built from per-length
slices.  Nothing here calls derivative code, so it serves as the
independent reference for every derivative path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .boolfun import AND, NOT, OR, XOR, BoolFun
from .errors import AlphabetRequired
from .expr import BoolOp, Concat, Expr, One, Star, Sym, Zero

_CACHE_LIMIT = 200_000


@dataclass(frozen=True)
class BoundedLang:
    """``L(E)`` intersected with the words of length at most ``bound``."""

    bound: int
    words: frozenset[str]
    alphabet: tuple[str, ...]

    def __contains__(self, w: object) -> bool:
        return w in self.words

    def __len__(self) -> int:
        return len(self.words)

    def sorted(self) -> list[str]:
        return sorted(self.words, key=lambda w: (len(w), w))


class Lattice:
    """All words of length <= ``bound`` over ``alphabet`` in shortlex order."""

    def __init__(self, alphabet: Iterable[str], bound: int) -> None:
        if bound < 0:
            raise ValueError(f"bound must be >= 0, got {bound}")
        self.alphabet = tuple(sorted(set(alphabet)))
        self.bound = bound
        k = len(self.alphabet)
        self.k = k
        self.counts = [k**length for length in range(bound + 1)]
        self.offsets = [0]
        for c in self.counts:
            self.offsets.append(self.offsets[-1] + c)
        self.size = self.offsets[-1]
        self.full = (1 << self.size) - 1
        self.slice_masks = [((1 << c) - 1) << o for c, o in zip(self.counts, self.offsets)]
        self._rank = {c: i for i, c in enumerate(self.alphabet)}
        self._masks: dict[Expr, int] = {}
        self._words: list[str] | None = None

    # word <-> index ---------------------------------------------------------

    def index(self, w: str) -> int | None:
        if len(w) > self.bound:
            return None
        r = 0
        for c in w:
            d = self._rank.get(c)
            if d is None:
                return None
            r = r * self.k + d
        return self.offsets[len(w)] + r

    def word(self, i: int) -> str:
        if self._words is None:
            self._words = [self._spell(j) for j in range(self.size)]
        return self._words[i]

    def _spell(self, i: int) -> str:
        length = 0
        while self.offsets[length + 1] <= i:
            length += 1
        r = i - self.offsets[length]
        chars = []
        for _ in range(length):
            r, d = divmod(r, self.k)
            chars.append(self.alphabet[d])
        return "".join(reversed(chars))

    def words_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.word(i) for i in _bits(mask))

    def mask_of(self, words: Iterable[str]) -> int:
        m = 0
        for w in words:
            i = self.index(w)
            if i is not None:
                m |= 1 << i
        return m

    # language operations on masks -------------------------------------------

    def slices(self, mask: int) -> list[int]:
        """Per-length rank sets: ``slices(m)[l]`` has bit r for the r-th word of length l."""
        return [(mask >> o) & ((1 << c) - 1) for o, c in zip(self.offsets, self.counts)]

    def concat(self, m1: int, m2: int) -> int:
        if not m1 or not m2:
            return 0
        # a word of length l1 and rank r1 followed by one of length l2 has
        # rank r1 * counts[l2] + r2, so a whole right slice shifts in at once
        right = self.slices(m2)
        out = 0
        for l1, left in enumerate(self.slices(m1)):
            for l2 in range(self.bound - l1 + 1):
                block = right[l2]
                if not left or not block:
                    continue
                base = self.offsets[l1 + l2]
                step = self.counts[l2]
                for r1 in _bits(left):
                    out |= block << (base + r1 * step)
        return out

    def star(self, m: int) -> int:
        eps = 1  # index 0 is the empty word
        out = eps
        while True:
            nxt = eps | self.concat(out, m)
            if nxt == out:
                return out
            out = nxt

    def apply(self, fun: BoolFun, masks: list[int]) -> int:
        full = self.full
        if fun == OR:
            return masks[0] | masks[1]
        if fun == AND:
            return masks[0] & masks[1]
        if fun == XOR:
            return masks[0] ^ masks[1]
        if fun == NOT:
            return full & ~masks[0]
        out = 0
        for row in fun.satisfying_rows():
            term = full
            for b, m in zip(row, masks):
                term &= m if b else full & ~m
                if not term:
                    break
            out |= term
        return out

    def symbol(self, c: str) -> int:
        i = self.index(c)
        return 0 if i is None else 1 << i

    def mask(self, e: Expr) -> int:
        """``L(e)`` restricted to this lattice, memoized per expression."""
        hit = self._masks.get(e)
        if hit is not None:
            return hit
        if isinstance(e, Zero):
            out = 0
        elif isinstance(e, One):
            out = 1
        elif isinstance(e, Sym):
            out = self.symbol(e.char)
        elif isinstance(e, Concat):
            out = self.concat(self.mask(e.left), self.mask(e.right))
        elif isinstance(e, Star):
            out = self.star(self.mask(e.inner))
        elif isinstance(e, BoolOp):
            out = self.apply(e.fun, [self.mask(a) for a in e.args])
        else:
            raise TypeError(f"not an expression: {e!r}")
        if len(self._masks) > _CACHE_LIMIT:
            self._masks.clear()
        self._masks[e] = out
        return out

    def quotient_mask(self, e: Expr, a: str) -> int:
        """``a^-1 L(e)`` by structural case analysis on ``e``.

        A second route to the one-symbol quotient, kept independent of the
        set-theoretic definition used by :func:`quotient`.
        """
        if isinstance(e, Sym):
            return 1 if e.char == a else 0
        if isinstance(e, (Zero, One)):
            return 0
        if isinstance(e, Concat):
            out = self.concat(self.quotient_mask(e.left, a), self.mask(e.right))
            if e.left.nullable:
                out |= self.quotient_mask(e.right, a)
            return out
        if isinstance(e, Star):
            return self.concat(self.quotient_mask(e.inner, a), self.mask(e))
        if isinstance(e, BoolOp):
            return self.apply(e.fun, [self.quotient_mask(x, a) for x in e.args])
        raise TypeError(f"not an expression: {e!r}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=64)
def lattice(alphabet: tuple[str, ...], bound: int) -> Lattice:
    return Lattice(alphabet, bound)


def needs_alphabet(e: Expr) -> bool:
    """True if ``e`` uses an operator with f(0,...,0) = 1 (a complement)."""
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, BoolOp):
            if node.fun.complement_like:
                return True
            stack.extend(node.args)
        elif isinstance(node, Concat):
            stack.extend((node.left, node.right))
        elif isinstance(node, Star):
            stack.append(node.inner)
    return False


def resolve_alphabet(
    exprs: Iterable[Expr], alphabet: Iterable[str] | None, extra: str = "", strict: bool = True
) -> tuple[str, ...]:
    """Alphabet used for quantification: supplied letters plus those occurring.

    With ``strict`` and no alphabet given, an expression using a
    complement-like operator raises :class:`AlphabetRequired`.
    """
    exprs = list(exprs)
    letters: set[str] = set(extra)
    for e in exprs:
        letters |= e.symbols
    if alphabet is None:
        if strict and any(needs_alphabet(e) for e in exprs):
            raise AlphabetRequired(
                "expression contains a complement-like operator; supply an alphabet"
            )
    else:
        letters |= set(alphabet)
    return tuple(sorted(letters))


def enumerate_lang(e: Expr, n: int, alphabet: Iterable[str] | None = None) -> BoundedLang:
    """``L(e)`` restricted to words of length <= n."""
    sigma = resolve_alphabet([e], alphabet)
    lat = lattice(sigma, n)
    return BoundedLang(n, lat.words_of(lat.mask(e)), sigma)


def member(e: Expr, w: str, alphabet: Iterable[str] | None = None) -> bool:
    """Whether ``w`` is in ``L(e)``.

    Membership does not depend on letters outside ``e`` and ``w``, so the
    alphabet defaults to those.
    """
    sigma = resolve_alphabet([e], alphabet, extra=w, strict=False)
    lat = lattice(sigma, len(w))
    return bool(lat.mask(e) >> lat.index(w) & 1)


def quotient(e: Expr, w: str, n: int, alphabet: Iterable[str] | None = None) -> BoundedLang:
    """``{v : |v| <= n and wv in L(e)}``, straight from the definition.

    The words ``wv`` with ``|v| = l`` occupy one contiguous block of indices
    in the lattice of bound ``|w| + n``, so each length is a single shift.
    """
    sigma = resolve_alphabet([e], alphabet, extra=w)
    small = lattice(sigma, n)
    big = lattice(sigma, len(w) + n)
    m = big.mask(e)
    prefix_rank = big.index(w) - big.offsets[len(w)]
    out = 0
    for length in range(n + 1):
        count = small.counts[length]
        start = big.offsets[len(w) + length] + prefix_rank * count
        out |= ((m >> start) & ((1 << count) - 1)) << small.offsets[length]
    return BoundedLang(n, small.words_of(out), sigma)


def quotient_inductive(
    e: Expr, w: str, n: int, alphabet: Iterable[str] | None = None
) -> BoundedLang:
    """Quotient via structural case analysis for the first letter.

    Later letters use ``(au)^-1 L = u^-1 (a^-1 L)`` on the bounded result,
    so the first step is computed at bound ``n + |w| - 1``.
    """
    sigma = resolve_alphabet([e], alphabet, extra=w)
    if not w:
        return enumerate_lang(e, n, sigma)
    bound = n + len(w) - 1
    lat = lattice(sigma, bound)
    mask = lat.quotient_mask(e, w[0])
    for a in w[1:]:
        smaller = lattice(sigma, bound - 1)
        mask = _shift_quotient(lat, smaller, mask, a)
        lat, bound = smaller, bound - 1
    return BoundedLang(n, lat.words_of(mask), sigma)


def _shift_quotient(big: Lattice, small: Lattice, mask: int, a: str) -> int:
    out = 0
    for i in range(small.size):
        j = big.index(a + small.word(i))
        if j is not None and mask >> j & 1:
            out |= 1 << i
    return out


def equiv_upto(
    e1: Expr, e2: Expr, n: int, alphabet: Iterable[str] | None = None
) -> bool:
    """Same words of length <= n, over the union of both alphabets."""
    return witness(e1, e2, n, alphabet) is None


def witness(
    e1: Expr, e2: Expr, n: int, alphabet: Iterable[str] | None = None
) -> str | None:
    """Shortest shortlex word of length <= n on which ``e1`` and ``e2`` differ."""
    sigma = resolve_alphabet([e1, e2], alphabet, strict=False)
    lat = lattice(sigma, n)
    diff = lat.mask(e1) ^ lat.mask(e2)
    if not diff:
        return None
    return lat.word((diff & -diff).bit_length() - 1)


def all_words(alphabet: Iterable[str], n: int, min_len: int = 0) -> list[str]:
    """Every word of length in ``[min_len, n]`` in shortlex order."""
    lat = lattice(tuple(sorted(set(alphabet))), n)
    return [lat.word(i) for i in range(lat.offsets[min_len], lat.size)]
