"""Generic derivation through a pluggable support.

A support bundles a structure space with a readback ``h`` into
expressions, a lift of every boolean function, a product with an
expression, and distinguished one/zero structures.  ``derive_sym`` is the
single generic derivation; the concrete supports only supply the record.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterable, Sequence, TypeVar

from .boolfun import AND, NOT, OR, XOR, BoolFun
from .errors import BudgetExceeded
from .expr import ONE, ZERO, BoolOp, Concat, Expr, Star, Sym, simplify_if
from .oracle import witness

S = TypeVar("S", bound=Hashable)

DEFAULT_CAP = 10_000
_MEMO_LIMIT = 500_000


@dataclass(frozen=True, eq=False)
class SupportInstance(Generic[S]):
    """Behaviour record of a support.

    Structures must be hashable with ``==`` agreeing with ``equal``;
    closures deduplicate through hashing.
    """

    name: str
    kind: str
    h: Callable[[S], Expr]
    apply_fun: Callable[[BoolFun, Sequence[S]], S]
    dot: Callable[[S, Expr], S]
    one: S
    zero: S
    display: Callable[[S], str]
    simplify: bool = True
    declares_h1h2: bool = False
    equal: Callable[[S, S], bool] = lambda x, y: x == y
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def readback(self, s: S) -> Expr:
        """``h(s)``, simplified when the support's flag is on."""
        return simplify_if(self.simplify, self.h(s))

    def __repr__(self) -> str:
        return f"<support {self.name} simplify={self.simplify}>"


def derive_sym(sup: SupportInstance[S], a: str, e: Expr) -> S:
    """Derivative of ``e`` with respect to the letter ``a`` inside ``sup``."""
    memo = sup._memo
    key = (a, e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(e, BoolOp):
        out = sup.apply_fun(e.fun, [derive_sym(sup, a, x) for x in e.args])
    elif isinstance(e, Concat):
        left = sup.dot(derive_sym(sup, a, e.left), simplify_if(sup.simplify, e.right))
        if e.left.nullable:
            out = sup.apply_fun(OR, [left, derive_sym(sup, a, e.right)])
        else:
            out = left
    elif isinstance(e, Star):
        out = sup.dot(derive_sym(sup, a, e.inner), simplify_if(sup.simplify, e))
    elif isinstance(e, Sym) and e.char == a:
        out = sup.one
    else:
        out = sup.zero
    if len(memo) > _MEMO_LIMIT:
        memo.clear()
    memo[key] = out
    return out


def derive_word(sup: SupportInstance[S], w: str, e: Expr) -> S:
    """Derivative by a non-empty word, reading back through ``h`` between letters."""
    if not w:
        raise ValueError("derive_word needs a non-empty word")
    s = derive_sym(sup, w[0], e)
    for a in w[1:]:
        s = derive_sym(sup, a, sup.readback(s))
    return s


def derivative_closure(
    sup: SupportInstance[S],
    e: Expr,
    cap: int = DEFAULT_CAP,
    alphabet: Iterable[str] | None = None,
) -> tuple[S, ...]:
    """All ``D(w, e)`` for non-empty ``w``, breadth-first by word length.

    Raises :class:`BudgetExceeded` once more than ``cap`` distinct
    structures have been found.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    sigma = sorted(set(alphabet or ()) | e.symbols)
    found: dict[S, None] = {}
    queue: deque[Expr] = deque([e])
    seen_exprs = {e}
    while queue:
        source = queue.popleft()
        for a in sigma:
            s = derive_sym(sup, a, source)
            if s in found:
                continue
            found[s] = None
            if len(found) > cap:
                raise BudgetExceeded(cap)
            nxt = sup.readback(s)
            if nxt not in seen_exprs:
                seen_exprs.add(nxt)
                queue.append(nxt)
    return tuple(found)


def member_via(sup: SupportInstance[S], e: Expr, w: str) -> bool:
    if not w:
        return e.nullable
    return sup.h(derive_word(sup, w, e)).nullable


# law checking -----------------------------------------------------------------


@dataclass(frozen=True)
class LawFailure:
    law: str
    detail: str
    witness: str | None


@dataclass
class LawReport:
    support: str
    checked: int = 0
    failures: list[LawFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = f"{self.support}: {self.checked} checks, {len(self.failures)} failures"
        lines = [head]
        for f in self.failures[:20]:
            shown = "ε" if f.witness == "" else f.witness
            lines.append(f"  [{f.law}] {f.detail} (witness {shown!r})")
        return "\n".join(lines)


LAW_FUNS: tuple[BoolFun, ...] = (OR, AND, NOT, XOR)


def check_support_laws(
    sup: SupportInstance[S],
    samples: Iterable[tuple[Sequence[S], Sequence[Expr]]],
    n: int = 4,
    alphabet: Iterable[str] = ("a", "b"),
    funs: Sequence[BoolFun] = LAW_FUNS,
) -> LawReport:
    """Check the three readback laws on every sample at bounded length ``n``.

    Each sample is a pair (structures, expressions).  Every function in
    ``funs`` is applied to the leading structures; every structure is
    multiplied by every expression.
    """
    sigma = tuple(alphabet)
    report = LawReport(sup.name)

    def compare(law: str, got: Expr, want: Expr, what: str) -> None:
        report.checked += 1
        w = witness(got, want, n, sigma)
        if w is not None:
            report.failures.append(LawFailure(law, f"{what}: h gives {got}, expected {want}", w))

    compare("unit", sup.h(sup.one), ONE, "h(one)")
    compare("unit", sup.h(sup.zero), ZERO, "h(zero)")
    for structures, exprs in samples:
        structures = list(structures)
        for f in funs:
            if f.arity > len(structures):
                continue
            args = structures[: f.arity]
            got = sup.h(sup.apply_fun(f, args))
            want = BoolOp(f, [sup.h(s) for s in args])
            compare("operator", got, want, f"{f.name}({', '.join(map(sup.display, args))})")
        for s in structures:
            for x in exprs:
                compare("product", sup.h(sup.dot(s, x)), Concat(sup.h(s), x),
                        f"{sup.display(s)} . {x}")
    return report


def check_h1(sup: SupportInstance[S], structures: Sequence[S]) -> list[str]:
    """Associativity, commutativity and idempotence of the binary sum, structurally."""
    problems = []

    def plus(x: S, y: S) -> S:
        return sup.apply_fun(OR, [x, y])

    for x in structures:
        if not sup.equal(plus(x, x), x):
            problems.append(f"not idempotent on {sup.display(x)}")
        for y in structures:
            if not sup.equal(plus(x, y), plus(y, x)):
                problems.append(f"not commutative on {sup.display(x)}, {sup.display(y)}")
            for z in structures:
                if not sup.equal(plus(plus(x, y), z), plus(x, plus(y, z))):
                    problems.append(
                        f"not associative on {sup.display(x)}, {sup.display(y)}, {sup.display(z)}"
                    )
    return problems


def check_h2(
    sup: SupportInstance[S],
    fun: BoolFun,
    args: Sequence[S],
    a: str,
    semantic_bound: int | None = None,
    alphabet: Iterable[str] = ("a", "b"),
) -> str | None:
    """Does deriving commute with the lifted ``fun`` on ``args``?

    Compares ``D(a, h(f(args)))`` with ``f(D(a, h(arg)) ...)`` structurally,
    or by bounded language of the readbacks when ``semantic_bound`` is set.
    Returns a description of the mismatch, or None.
    """
    lhs = derive_sym(sup, a, sup.h(sup.apply_fun(fun, args)))
    rhs = sup.apply_fun(fun, [derive_sym(sup, a, sup.h(s)) for s in args])
    if semantic_bound is None:
        same = sup.equal(lhs, rhs)
    else:
        same = witness(sup.h(lhs), sup.h(rhs), semantic_bound, tuple(alphabet)) is None
    if same:
        return None
    return f"{fun.name} by {a}: {sup.display(lhs)} vs {sup.display(rhs)}"
