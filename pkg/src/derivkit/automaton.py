"""Alternating automata built from derivatives.

States are expressions.  The transition on ``a`` from state ``q`` is the
base formula of the read-back derivative of ``q``; the initial condition is
the single atom of the input expression unless ``initial_base`` is set.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .boolfun import AND, BUILTINS, NOT, BoolFun
from .errors import BudgetExceeded, DerivKitError, NonDisjunctive, UnknownSymbol
from .expr import ONE, ZERO, BoolOp, Concat, Expr, Star, Sym, nullable
from .formula import (
    FALSE,
    Atom,
    Const,
    Formula,
    Op,
    atoms,
    atoms_in_order,
    disjuncts,
    evaluate,
    is_disjunction,
    map_atoms,
    to_text,
    truth_table,
)
from .support import DEFAULT_CAP, SupportInstance, derive_sym
from .syntax import parse, render

# base functions ------------------------------------------------------------------


@dataclass(frozen=True)
class BaseFun:
    name: str
    apply: Callable[[Expr], Formula[Expr]]

    def __call__(self, e: Expr) -> Formula[Expr]:
        return self.apply(e)


def _base_a(e: Expr) -> Formula[Expr]:
    if isinstance(e, BoolOp) and e.fun.is_or:
        return Op(e.fun, (_base_a(e.args[0]), _base_a(e.args[1])))
    return Atom(e)


def _base_b(e: Expr) -> Formula[Expr]:
    return Atom(e)


def _base_c(e: Expr) -> Formula[Expr]:
    if isinstance(e, BoolOp):
        return Op(e.fun, tuple(_base_c(x) for x in e.args))
    return Atom(e)


base_A = BaseFun("BA", _base_a)
base_B = BaseFun("BB", _base_b)
base_C = BaseFun("BC", _base_c)
BASES: dict[str, BaseFun] = {b.name: b for b in (base_A, base_B, base_C)}


# the automaton -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AltAutomaton:
    alphabet: tuple[str, ...]
    states: tuple[Expr, ...]
    initial: Formula[Expr]
    final: Mapping[Expr, bool]
    trans: Mapping[tuple[Expr, str], Formula[Expr]]
    names: dict[Expr, str] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.names:
            self.names.update({q: f"q{i + 1}" for i, q in enumerate(self.states)})

    def name(self, q: Expr) -> str:
        return self.names[q]

    def formula_text(self, phi: Formula[Expr], ascii: bool = False) -> str:
        return to_text(phi, self.name, ascii=ascii)

    def is_deterministic(self) -> bool:
        """Initial condition and every transition a single atom or false."""
        return all(
            isinstance(phi, Atom) or phi == FALSE
            for phi in (self.initial, *self.trans.values())
        )

    def structurally_equal(self, other: "AltAutomaton") -> bool:
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and self.initial == other.initial
            and dict(self.final) == dict(other.final)
            and dict(self.trans) == dict(other.trans)
        )


def build_automaton(
    sup: SupportInstance,
    base: BaseFun,
    e: Expr,
    cap: int = DEFAULT_CAP,
    alphabet: Iterable[str] | None = None,
    prune: bool = False,
    initial_base: bool = False,
) -> AltAutomaton:
    """Accessible part of the derivative automaton of ``e``.

    With ``prune``, transitions that are false under every valuation
    (including those reading back to 0) become :data:`FALSE` and states no
    longer reachable are dropped; the initial condition is left alone.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    sigma = tuple(sorted(set(alphabet or ()) | e.symbols))
    initial = base(e) if initial_base else Atom(e)
    states: dict[Expr, None] = {}
    trans: dict[tuple[Expr, str], Formula[Expr]] = {}
    queue: deque[Expr] = deque()

    def visit(q: Expr) -> None:
        if q not in states:
            states[q] = None
            if len(states) > cap:
                raise BudgetExceeded(cap, "states")
            queue.append(q)

    for q in atoms_in_order(initial):
        visit(q)
    while queue:
        q = queue.popleft()
        for a in sigma:
            phi = base(sup.readback(derive_sym(sup, a, q)))
            trans[(q, a)] = phi
            for r in atoms_in_order(phi):
                visit(r)
    aut = AltAutomaton(
        sigma, tuple(states), initial, {q: nullable(q) for q in states}, trans
    )
    return prune_false(aut) if prune else aut


def _always_false(phi: Formula[Expr], limit: int = 20) -> bool:
    found = atoms(phi)
    if len(found) > limit:
        return False
    return truth_table(phi, sorted(found, key=lambda q: q.key)) == 0


def prune_false(aut: AltAutomaton) -> AltAutomaton:
    def kill_zero(q: Expr) -> Formula[Expr]:
        return FALSE if q is ZERO else Atom(q)

    trans = {}
    for key, phi in aut.trans.items():
        phi = map_atoms(phi, kill_zero)
        trans[key] = FALSE if phi == FALSE or _always_false(phi) else phi
    reachable: dict[Expr, None] = {}
    queue = deque(atoms_in_order(aut.initial))
    while queue:
        q = queue.popleft()
        if q in reachable:
            continue
        reachable[q] = None
        for a in aut.alphabet:
            queue.extend(atoms_in_order(trans[(q, a)]))
    states = tuple(q for q in aut.states if q in reachable)
    return AltAutomaton(
        aut.alphabet,
        states,
        aut.initial,
        {q: aut.final[q] for q in states},
        {(q, a): trans[(q, a)] for q in states for a in aut.alphabet},
    )


def _check_symbol(aut: AltAutomaton, a: str) -> None:
    if a not in aut.alphabet:
        raise UnknownSymbol(f"symbol {a!r} is not in the alphabet {''.join(aut.alphabet)!r}")


def step(aut: AltAutomaton, phi: Formula[Expr], a: str) -> Formula[Expr]:
    """Extend the transition function to the formula ``phi`` by substitution."""
    _check_symbol(aut, a)
    return map_atoms(phi, lambda q: aut.trans[(q, a)])


def run(aut: AltAutomaton, w: str) -> bool:
    phi = aut.initial
    for a in w:
        phi = step(aut, phi, a)
    return evaluate(phi, aut.final)


def delta_word(aut: AltAutomaton, phi: Formula[Expr], w: str) -> Formula[Expr]:
    """Transition extension written out case by case, without substitution helpers."""
    if not w:
        return phi
    a = w[0]
    _check_symbol(aut, a)

    def one(node: Formula[Expr]) -> Formula[Expr]:
        if isinstance(node, Atom):
            return aut.trans[(node.value, a)]
        if isinstance(node, Op):
            return Op(node.fun, tuple(one(x) for x in node.args))
        return node

    return delta_word(aut, one(phi), w[1:])


def run_direct(aut: AltAutomaton, w: str) -> bool:
    return evaluate(delta_word(aut, aut.initial, w), aut.final)


# atom-derivability -----------------------------------------------------------------


@dataclass(frozen=True)
class DerivabilityMismatch:
    symbol: str
    direct: frozenset
    via_atoms: frozenset


def check_atom_derivability(
    sup: SupportInstance, base: BaseFun, e: Expr, alphabet: Iterable[str] | None = None
) -> list[DerivabilityMismatch]:
    """Compare atoms of the derived base with the union over the base's atoms."""
    sigma = sorted(set(alphabet or ()) | e.symbols)
    out = []
    for a in sigma:
        direct = frozenset(atoms(base(sup.readback(derive_sym(sup, a, e)))))
        via: set[Expr] = set()
        for q in atoms(base(e)):
            via |= atoms(base(sup.readback(derive_sym(sup, a, q))))
        if direct != via:
            out.append(DerivabilityMismatch(a, direct, frozenset(via)))
    return out


# NFA view and determinization ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: tuple[str, ...]
    states: tuple[Expr, ...]
    initial: frozenset
    final: Mapping[Expr, bool]
    trans: Mapping[tuple[Expr, str], frozenset]

    def accepts(self, w: str) -> bool:
        current = set(self.initial)
        for a in w:
            if a not in self.alphabet:
                raise UnknownSymbol(f"symbol {a!r} is not in the alphabet")
            current = {r for q in current for r in self.trans[(q, a)]}
        return any(self.final[q] for q in current)


def _atom_list(phi: Formula[Expr]) -> frozenset:
    if phi == FALSE:
        return frozenset()
    return frozenset(d.value for d in disjuncts(phi))  # type: ignore[attr-defined]


def to_nfa(aut: AltAutomaton) -> Nfa:
    """Reinterpret an automaton whose formulas are all disjunctions of atoms."""
    if not is_disjunction(aut.initial):
        raise NonDisjunctive(None, None, aut.formula_text(aut.initial))
    for (q, a), phi in aut.trans.items():
        if not is_disjunction(phi):
            raise NonDisjunctive(aut.name(q), a, aut.formula_text(phi))
    return Nfa(
        aut.alphabet,
        aut.states,
        _atom_list(aut.initial),
        aut.final,
        {key: _atom_list(phi) for key, phi in aut.trans.items()},
    )


DETERMINIZE_BUDGET = 1 << 16
_MAX_ATOMS = 24


def _canonical(phi: Formula[Expr]) -> tuple:
    """Identify formulas that agree under every valuation."""
    order = sorted(atoms(phi), key=lambda q: q.key)
    if len(order) > _MAX_ATOMS:
        raise BudgetExceeded(_MAX_ATOMS, "atoms in one formula-state")
    table = truth_table(phi, order)
    k = len(order)
    essential = []
    for j in range(k):
        # compare the table with bit j cleared against bit j set
        period = 1 << j
        low_mask = 0
        for start in range(0, 1 << k, period * 2):
            low_mask |= ((1 << period) - 1) << start
        low = table & low_mask
        high = (table >> period) & low_mask
        if low != high:
            essential.append(j)
    projected = 0
    for i in range(1 << len(essential)):
        full_index = 0
        for pos, j in enumerate(essential):
            if i >> pos & 1:
                full_index |= 1 << j
        if table >> full_index & 1:
            projected |= 1 << i
    return (tuple(order[j] for j in essential), projected)


def formula_to_expr(phi: Formula[Expr]) -> Expr:
    if isinstance(phi, Atom):
        return phi.value
    if isinstance(phi, Const):
        return BoolOp(NOT, (ZERO,)) if phi.value else ZERO
    assert isinstance(phi, Op)
    return BoolOp(phi.fun, [formula_to_expr(x) for x in phi.args])


def determinize(aut: AltAutomaton, budget: int = DETERMINIZE_BUDGET) -> AltAutomaton:
    """Deterministic automaton over formula-states up to logical equivalence.

    Each class is represented by the first formula found in it, turned into
    an expression (a constant class becomes 0 or !0).  Cost is exponential
    in the number of atoms per formula.
    """
    used: set[Expr] = set()

    def settle(phi: Formula[Expr]) -> Formula[Expr]:
        # the state 0 recognizes nothing, so it joins the constant-false class
        return map_atoms(phi, lambda q: FALSE if q is ZERO else Atom(q))

    def represent(phi: Formula[Expr], key: tuple) -> Expr:
        if not key[0]:
            e = BoolOp(NOT, (ZERO,)) if key[1] else ZERO
        else:
            e = formula_to_expr(phi)
        # a state atom 0 and the constant-false class are different classes;
        # keep their labels apart without changing the language
        while e in used:
            e = BoolOp(AND, (e, e))
        used.add(e)
        return e

    start = settle(aut.initial)
    start_key = _canonical(start)
    reps: dict[tuple, Formula[Expr]] = {start_key: start}
    exprs: dict[tuple, Expr] = {start_key: represent(start, start_key)}
    trans: dict[tuple[Expr, str], Formula[Expr]] = {}
    queue = deque([start_key])
    while queue:
        key = queue.popleft()
        phi = reps[key]
        for a in aut.alphabet:
            nxt = settle(step(aut, phi, a))
            nkey = _canonical(nxt)
            if nkey not in reps:
                if len(reps) >= budget:
                    raise BudgetExceeded(budget, "formula-states")
                reps[nkey] = nxt
                exprs[nkey] = represent(nxt, nkey)
                queue.append(nkey)
            trans[(exprs[key], a)] = Atom(exprs[nkey])
    states = tuple(exprs.values())
    final = {exprs[k]: evaluate(reps[k], aut.final) for k in reps}
    return AltAutomaton(aut.alphabet, states, Atom(exprs[start_key]), final, trans)


# export ----------------------------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(aut: AltAutomaton) -> str:
    lines = ["digraph afa {", "  rankdir=LR;"]
    lines.append(f'  // initial: {_dot_escape(aut.formula_text(aut.initial))}')
    starts = atoms(aut.initial)
    for q in aut.states:
        shape = "doublecircle" if aut.final[q] else "circle"
        extra = ", penwidth=2" if q in starts else ""
        label = _dot_escape(f"{aut.name(q)}: {render(q)}")
        lines.append(f'  {aut.name(q)} [shape={shape}, label="{label}"{extra}];')
    for q in aut.states:
        for a in aut.alphabet:
            phi = aut.trans[(q, a)]
            label = _dot_escape(f"{a}: {aut.formula_text(phi)}")
            for r in atoms_in_order(phi):
                lines.append(f'  {aut.name(q)} -> {aut.name(r)} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _formula_json(phi: Formula[Expr], index: Mapping[Expr, int]) -> dict:
    if isinstance(phi, Atom):
        return {"atom": index[phi.value]}
    if isinstance(phi, Const):
        return {"const": phi.value}
    assert isinstance(phi, Op)
    return {
        "fun": phi.fun.name,
        "table": phi.fun.bits(),
        "args": [_formula_json(x, index) for x in phi.args],
    }


def _formula_from_json(tree: dict, states: list[Expr]) -> Formula[Expr]:
    if "atom" in tree:
        return Atom(states[tree["atom"]])
    if "const" in tree:
        return Const(bool(tree["const"]))
    fun = _fun_from_json(tree)
    return Op(fun, tuple(_formula_from_json(x, states) for x in tree["args"]))


def _fun_from_json(tree: dict) -> BoolFun:
    table = tuple(bool(b) for b in tree["table"])
    arity = len(tree["args"])
    return BoolFun(tree["fun"], arity, table)


def expr_to_json(e: Expr) -> dict:
    if e is ZERO:
        return {"op": "zero"}
    if e is ONE:
        return {"op": "one"}
    if isinstance(e, Sym):
        return {"op": "sym", "char": e.char}
    if isinstance(e, Star):
        return {"op": "star", "args": [expr_to_json(e.inner)]}
    if isinstance(e, Concat):
        return {"op": "cat", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    assert isinstance(e, BoolOp)
    return {
        "op": "fun",
        "fun": e.fun.name,
        "table": e.fun.bits(),
        "args": [expr_to_json(x) for x in e.args],
    }


def expr_from_json(tree: dict) -> Expr:
    op = tree["op"]
    if op == "zero":
        return ZERO
    if op == "one":
        return ONE
    if op == "sym":
        return Sym(tree["char"])
    args = [expr_from_json(x) for x in tree.get("args", [])]
    if op == "star":
        return Star(args[0])
    if op == "cat":
        return Concat(args[0], args[1])
    if op == "fun":
        return BoolOp(_fun_from_json(tree), args)
    raise DerivKitError(f"unknown expression node {op!r}")


def _needs_trees(states: Iterable[Expr]) -> bool:
    from .expr import funs_used

    return any(BUILTINS.get(f.name) != f for q in states for f in funs_used(q))


def export_json(aut: AltAutomaton) -> str:
    """JSON encoding; formula atoms refer to positions in ``states``.

    States whose operators have no text syntax are also written as trees
    under ``exprs`` so that import can rebuild them.
    """
    index = {q: i for i, q in enumerate(aut.states)}
    rendered = [render(q) for q in aut.states]
    doc: dict = {
        "alphabet": list(aut.alphabet),
        "states": rendered,
        "initial": _formula_json(aut.initial, index),
        "final": {rendered[i]: aut.final[q] for i, q in enumerate(aut.states)},
        "trans": {
            rendered[i]: {a: _formula_json(aut.trans[(q, a)], index) for a in aut.alphabet}
            for i, q in enumerate(aut.states)
        },
    }
    if _needs_trees(aut.states):
        doc["exprs"] = [expr_to_json(q) for q in aut.states]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def import_json(text: str) -> AltAutomaton:
    doc = json.loads(text)
    if "exprs" in doc:
        states = [expr_from_json(t) for t in doc["exprs"]]
    else:
        states = [parse(s) for s in doc["states"]]
    rendered = doc["states"]
    alphabet = tuple(doc["alphabet"])
    return AltAutomaton(
        alphabet,
        tuple(states),
        _formula_from_json(doc["initial"], states),
        {q: bool(doc["final"][rendered[i]]) for i, q in enumerate(states)},
        {
            (q, a): _formula_from_json(doc["trans"][rendered[i]][a], states)
            for i, q in enumerate(states)
            for a in alphabet
        },
    )


def export_text(aut: AltAutomaton, ascii: bool = False) -> str:
    lines = [f"alphabet: {' '.join(aut.alphabet)}"]
    lines.append(f"initial: {aut.formula_text(aut.initial, ascii)}")
    lines.append("states:")
    for q in aut.states:
        mark = "  final" if aut.final[q] else ""
        lines.append(f"  {aut.name(q)} = {render(q)}{mark}")
    lines.append("transitions:")
    for q in aut.states:
        for a in aut.alphabet:
            lines.append(f"  {aut.name(q)} --{a}--> {aut.formula_text(aut.trans[(q, a)], ascii)}")
    return "\n".join(lines) + "\n"
