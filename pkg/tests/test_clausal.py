from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from derivkit.boolfun import AND, NOT, OR, XOR, or_n
from derivkit.clausal import (
    EMPTY,
    TOP,
    ClausalForm,
    Literal,
    clausal,
    dot_clausal,
    f_clausal,
    h_clausal,
    ominus,
    oplus,
    otimes,
)
from derivkit.errors import ArityMismatch
from derivkit.expr import ONE, ZERO, BoolOp, Concat, Sym
from derivkit.oracle import equiv_upto
from derivkit.syntax import parse

from strategies import clausal_forms

x, y, z = Sym("x"), Sym("y"), Sym("z")
C = ClausalForm.of


def neg(e):
    return Literal(e, True)


def absorbed(c: ClausalForm) -> frozenset:
    """Drop clauses that strictly contain another clause."""
    return frozenset(k for k in c.clauses if not any(j < k for j in c.clauses))


def same_language(c1: ClausalForm, c2: ClausalForm) -> bool:
    return equiv_upto(h_clausal(c1), h_clausal(c2), 4, "ab")


def test_empty_and_top_differ():
    assert EMPTY != TOP
    assert str(EMPTY) == "{}" and str(TOP) == "{{}}"


def test_literal_flip_is_involution():
    lit = Literal(x)
    assert lit.flip().flip() == lit
    assert lit.flip() == neg(x)


def test_oplus_examples():
    assert oplus(C([x]), EMPTY) == C([x])
    assert oplus(C([x]), C([y])) == C([x], [y])
    assert oplus(C([x]), C([x])) == C([x])


def test_otimes_examples():
    assert otimes(C([x]), C([y], [z])) == C([x, y], [x, z])
    assert otimes(EMPTY, C([x])) == EMPTY
    assert otimes(TOP, C([x], [y])) == C([x], [y])


def test_ominus_examples():
    assert ominus(EMPTY) == TOP
    assert ominus(TOP) == EMPTY
    assert ominus(C([x])) == C([neg(x)])
    assert ominus(ominus(C([x]))) == C([x])
    q2 = parse("b(ab)*a")
    assert ominus(C([q2], [ONE])) == C([neg(q2), neg(ONE)])


def test_double_negation_is_not_identity():
    c = C([x, y], [z])
    assert ominus(ominus(c)) != c
    assert ominus(ominus(c)) == C([x, y], [x, z], [y, z], [z])
    assert absorbed(ominus(ominus(c))) == c.clauses


def test_h_examples():
    assert h_clausal(EMPTY) is ZERO
    assert h_clausal(TOP) is BoolOp(NOT, [ZERO])
    e, f = Sym("a"), Sym("b")
    assert h_clausal(C([e], [neg(f)])) is BoolOp(OR, [e, BoolOp(NOT, [f])])
    assert h_clausal(C([e])) is e
    assert h_clausal(C([e, neg(e)])) is BoolOp(AND, [e, BoolOp(NOT, [e])])


def test_canonical_display():
    c = C([neg(ONE), parse("ab"), ONE], [neg(Sym("a"))])
    assert str(c) == "{{1,!1,ab},{!a}}"


def test_f_clausal_matches_hand_expansions():
    c1, c2 = C([x], [y]), C([neg(z)], [x, y])
    assert f_clausal(XOR, [c1, c2]) == oplus(otimes(ominus(c1), c2), otimes(c1, ominus(c2)))
    assert f_clausal(AND, [c1, c2]) == otimes(c1, c2)
    want_or = oplus(oplus(otimes(ominus(c1), c2), otimes(c1, ominus(c2))), otimes(c1, c2))
    assert f_clausal(OR, [c1, c2]) == want_or
    assert f_clausal(NOT, [c1]) == ominus(c1)


def test_f_clausal_arity():
    with pytest.raises(ArityMismatch):
        f_clausal(XOR, [C([x])])


def test_dot_examples():
    assert dot_clausal(C([ONE]), Sym("b")) == C([Sym("b")])
    assert dot_clausal(C([ONE]), Sym("b"), simplify=False) == C([Concat(ONE, Sym("b"))])
    assert dot_clausal(EMPTY, x) == EMPTY
    a, b, c = Sym("a"), Sym("b"), Sym("c")
    assert dot_clausal(C([a], [b]), c) == C([Concat(a, c)], [Concat(b, c)])
    # a clause with a negative literal reads back before the product
    assert dot_clausal(C([neg(a)]), c) == C([Concat(BoolOp(NOT, [a]), c)])


def test_support_sum_is_union():
    sup = clausal()
    c1, c2 = C([x]), C([neg(x)])
    assert sup.apply_fun(OR, [c1, c2]) == oplus(c1, c2)
    assert sup.apply_fun(OR, [c1, c2]) != f_clausal(OR, [c1, c2])
    assert sup.one == C([ONE]) and sup.zero == EMPTY


@given(clausal_forms, clausal_forms, clausal_forms)
def test_product_distributes_over_sum(c1, c2, c3):
    assert otimes(c1, oplus(c2, c3)) == oplus(otimes(c1, c2), otimes(c1, c3))


@given(clausal_forms, clausal_forms)
def test_de_morgan_modulo_absorption(c1, c2):
    assert absorbed(ominus(oplus(c1, c2))) == absorbed(otimes(ominus(c1), ominus(c2)))
    assert absorbed(ominus(otimes(c1, c2))) == absorbed(oplus(ominus(c1), ominus(c2)))


@given(clausal_forms, clausal_forms)
def test_de_morgan_in_language(c1, c2):
    assert same_language(ominus(oplus(c1, c2)), otimes(ominus(c1), ominus(c2)))
    assert same_language(ominus(otimes(c1, c2)), oplus(ominus(c1), ominus(c2)))


def test_de_morgan_structural_counterexamples():
    # a shared two-literal clause is negated once on one side, twice on the other
    c = C([x, y])
    assert ominus(oplus(c, c)) == C([neg(x)], [neg(y)])
    assert otimes(ominus(c), ominus(c)) == C([neg(x)], [neg(y)], [neg(x), neg(y)])
    # negating a product yields clauses that the sum of negations absorbs
    c1, c2 = C([x]), C([y], [z])
    assert ominus(otimes(c1, c2)) != oplus(ominus(c1), ominus(c2))


def test_sum_over_product_distributivity_can_fail():
    forms = [EMPTY, TOP, C([x]), C([y]), C([z]), C([x], [y]), C([neg(x)])]
    found = [
        (c1, c2, c3)
        for c1, c2, c3 in itertools.product(forms, repeat=3)
        if oplus(c1, otimes(c2, c3)) != otimes(oplus(c1, c2), oplus(c1, c3))
    ]
    assert found
    assert (C([x]), C([y]), C([z])) in found
    for c1, c2, c3 in found:
        lhs, rhs = oplus(c1, otimes(c2, c3)), otimes(oplus(c1, c2), oplus(c1, c3))
        assert absorbed(lhs) == absorbed(rhs)


@given(clausal_forms, clausal_forms)
def test_operators_sound_in_language(c1, c2):
    h1, h2 = h_clausal(c1), h_clausal(c2)
    assert equiv_upto(h_clausal(oplus(c1, c2)), BoolOp(OR, [h1, h2]), 4, "ab")
    assert equiv_upto(h_clausal(otimes(c1, c2)), BoolOp(AND, [h1, h2]), 4, "ab")
    assert equiv_upto(h_clausal(ominus(c1)), BoolOp(NOT, [h1]), 4, "ab")


@given(clausal_forms, clausal_forms, clausal_forms)
def test_ternary_or_equals_two_sums(c1, c2, c3):
    lifted = f_clausal(or_n(3), [c1, c2, c3])
    assert same_language(lifted, oplus(oplus(c1, c2), c3))
