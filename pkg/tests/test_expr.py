from __future__ import annotations

import copy
import pickle

import pytest
from hypothesis import given

from derivkit.boolfun import AND, NOT, OR, XOR, BoolFun, or_n
from derivkit.errors import ArityMismatch, ExprSyntaxError
from derivkit.expr import (
    ONE,
    ZERO,
    BoolOp,
    Concat,
    Star,
    Sym,
    alt,
    cat,
    compare,
    is_simple,
    nullable,
    simplify,
)
from derivkit.oracle import enumerate_lang, equiv_upto
from derivkit.syntax import parse, render

from strategies import exprs

a, b = Sym("a"), Sym("b")


# boolean functions

def test_builtin_tables():
    assert [OR(x, y) for x in (0, 1) for y in (0, 1)] == [False, True, True, True]
    assert [XOR(x, y) for x in (0, 1) for y in (0, 1)] == [False, True, True, False]
    assert NOT(0) and not NOT(1)
    assert AND(1, 1) and not AND(1, 0)


def test_table_length_checked():
    with pytest.raises(ValueError):
        BoolFun("bad", 2, (True, False))


def test_or_detection_ignores_name():
    renamed = BoolFun("ANY", 2, (False, True, True, True))
    assert renamed.is_or
    assert not or_n(3).is_or
    assert or_n(3)(False, False, True)


# parsing

def test_parse_examples():
    assert parse("ab*") is Concat(a, Star(b))
    e = parse("((ab)*a)^((abab)*a)")
    want = BoolOp(XOR, [
        Concat(Star(Concat(a, b)), a),
        Concat(Star(Concat(Concat(Concat(a, b), a), b)), a),
    ])
    assert e is want
    assert parse("0+a") is BoolOp(OR, [ZERO, a])


def test_precedence_and_associativity():
    assert parse("abc") is Concat(Concat(a, b), Sym("c"))
    assert parse("a+b+c") is BoolOp(OR, [BoolOp(OR, [a, b]), Sym("c")])
    assert parse("a+b^a&b") is BoolOp(OR, [a, BoolOp(XOR, [b, BoolOp(AND, [a, b])])])
    assert parse("!a*") is BoolOp(NOT, [Star(a)])
    assert parse("!ab") is Concat(BoolOp(NOT, [a]), b)
    assert parse("a**") is Star(Star(a))
    assert parse(" a  b ") is Concat(a, b)


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("(ab", 0), ("a)", 1), ("a+", 2), ("()", 1), ("aB", 1), ("a+*", 2)],
)
def test_syntax_errors_report_offset(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == offset
    assert f"offset {offset}" in str(info.value)


def test_render_examples():
    assert render(ZERO) == "0"
    assert render(Star(a)) == "a*"
    assert render(BoolOp(NOT, [a])) == "!a"
    assert render(Concat(a, Concat(b, a))) == "a(ba)"
    assert render(Star(BoolOp(NOT, [a]))) == "(!a)*"


@given(exprs())
def test_render_round_trip(e):
    assert parse(render(e)) is e


def test_user_function_renders_for_display():
    maj = BoolFun.from_callable("MAJ", 3, lambda x, y, z: x + y + z >= 2)
    assert render(BoolOp(maj, [a, b, ONE])) == "MAJ(a,b,1)"


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        BoolOp(XOR, [a])


# identity and ordering

def test_hash_consing():
    assert Concat(a, b) is parse("ab")
    assert copy.deepcopy(parse("a*b")) is parse("a*b")
    assert pickle.loads(pickle.dumps(parse("(a^b)*"))) is parse("(a^b)*")


def test_no_algebraic_identification():
    assert parse("a+b") is not parse("b+a")
    assert parse("a+a") is not a


def test_compare_examples():
    assert compare(ZERO, ONE) == -1
    assert compare(a, a) == 0
    assert compare(Concat(a, b), Star(a)) == 1
    assert compare(Star(ZERO), BoolOp(NOT, [ZERO])) == -1


@given(exprs(), exprs(), exprs())
def test_compare_is_total_order(x, y, z):
    assert compare(x, y) == -compare(y, x)
    assert (compare(x, y) == 0) == (x is y)
    if compare(x, y) <= 0 and compare(y, z) <= 0:
        assert compare(x, z) <= 0


# nullable

def test_nullable_examples():
    assert nullable(ONE)
    assert nullable(Star(Concat(a, b)))
    assert not nullable(Concat(a, Star(b)))
    assert not nullable(ZERO) and not nullable(a)
    assert nullable(BoolOp(NOT, [a]))
    assert not nullable(parse("a*^b*"))


@given(exprs())
def test_nullable_matches_oracle(e):
    assert nullable(e) == ("" in enumerate_lang(e, 0, "ab").words)


# simplify

def test_simplify_examples():
    assert simplify(BoolOp(OR, [a, ZERO])) is a
    assert simplify(BoolOp(OR, [ZERO, a])) is a
    e = Concat(ONE, Concat(b, Star(Concat(a, b))))
    assert simplify(e) is Concat(b, Star(Concat(a, b)))
    assert render(simplify(e)) == "b(ab)*"
    assert simplify(Concat(a, ZERO)) is ZERO
    assert simplify(Concat(ZERO, a)) is ZERO


def test_simplify_rewrites_nothing_else():
    for text in ["a+a", "a&0", "!0", "0^a", "1*", "0*", "a+b"]:
        assert simplify(parse(text)) is parse(text)


def test_simplify_cascades():
    # (1.(0+a)).1 collapses all the way
    assert simplify(cat(cat(ONE, alt(ZERO, a)), ONE)) is a


@given(exprs())
def test_simplify_idempotent(e):
    assert simplify(simplify(e)) is simplify(e)


@given(exprs())
def test_simplify_preserves_language(e):
    assert equiv_upto(e, simplify(e), 4, "ab")


def test_is_simple():
    assert is_simple(parse("(a+b)*ab"))
    assert not is_simple(parse("a&b"))
