from __future__ import annotations

import dataclasses
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derivkit.boolfun import AND, NOT, OR, XOR
from derivkit.classic import antimirov, brzozowski
from derivkit.errors import BudgetExceeded
from derivkit.expr import ONE, ZERO, BoolOp, Concat, Star, Sym
from derivkit.oracle import member, quotient, enumerate_lang
from derivkit.registry import SUPPORTS, get_support
from derivkit.sampling import law_samples, random_structure
from derivkit.support import (
    check_h1,
    check_h2,
    check_support_laws,
    derivative_closure,
    derive_sym,
    derive_word,
    member_via,
)
from derivkit.syntax import parse

from strategies import exprs

a, b = Sym("a"), Sym("b")
XOR_EXAMPLE = parse("((ab)*a)^((abab)*a)")
ALL = list(SUPPORTS)


def test_derive_sym_examples():
    sb_raw = brzozowski(simplify=False)
    assert derive_sym(get_support("brzozowski"), "a", a) is ONE
    assert derive_sym(sb_raw, "a", Concat(a, b)) is Concat(ONE, b)
    assert derive_sym(get_support("brzozowski"), "a", Concat(a, b)) is b
    assert derive_sym(get_support("antimirov"), "a", BoolOp(OR, [a, b])) == {ONE}


def test_derive_by_absent_symbol_is_zero():
    for name in ALL:
        sup = get_support(name)
        assert sup.h(derive_sym(sup, "c", parse("ab*"))) is ZERO


def test_derive_word_examples():
    sb_raw = brzozowski(simplify=False)
    e = parse("(ab)*a")
    assert derive_word(sb_raw, "a", e) is derive_sym(sb_raw, "a", e)
    # d(a*) = 1.a*, then the nullable-concatenation rule on 1.a*
    want = BoolOp(OR, [Concat(ZERO, Star(a)), Concat(ONE, Star(a))])
    assert derive_word(sb_raw, "aa", Star(a)) is want
    assert derive_word(get_support("antimirov"), "ab", e) == {e}


def test_derive_word_rejects_empty():
    with pytest.raises(ValueError):
        derive_word(get_support("clausal"), "", a)


def test_closure_examples():
    sa_raw = antimirov(simplify=False)
    assert derivative_closure(sa_raw, Star(a), 100) == (frozenset({Concat(ONE, Star(a))}),)
    sb_raw = brzozowski(simplify=False)
    closure = derivative_closure(sb_raw, Concat(a, a), 100)
    assert [str(s) for s in closure] == ["1a", "0a+1", "0a+0"]
    with pytest.raises(BudgetExceeded) as info:
        derivative_closure(sb_raw, Star(a), 10)
    assert info.value.cap == 10


def test_closure_alphabet_widening():
    sup = get_support("antimirov")
    assert derivative_closure(sup, Star(a), 10) == (frozenset({Star(a)}),)
    # deriving by b adds the empty set
    widened = derivative_closure(sup, Star(a), 10, alphabet="ab")
    assert widened == (frozenset({Star(a)}), frozenset())


def test_member_via_examples():
    assert member_via(get_support("brzozowski"), Star(a), "")
    assert member_via(get_support("clausal"), XOR_EXAMPLE, "aba")
    assert not member_via(get_support("clausal"), XOR_EXAMPLE, "a")


@pytest.mark.parametrize("name", ALL)
@given(e=exprs(), w=st.text(alphabet="ab", min_size=1, max_size=3))
def test_language_preservation(name, e, w):
    sup = get_support(name)
    got = enumerate_lang(sup.h(derive_word(sup, w, e)), 4, "ab").words
    assert got == quotient(e, w, 4, "ab").words


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("flag", [True, False])
@given(e=exprs(max_leaves=6), w=st.text(alphabet="ab", max_size=5))
def test_membership_soundness(name, flag, e, w):
    assert member_via(get_support(name, flag), e, w) == member(e, w, "ab")


@pytest.mark.parametrize("name", ALL)
def test_support_laws_hold(name):
    sup = get_support(name)
    report = check_support_laws(sup, law_samples(sup, 100, seed=5), n=4)
    assert report.ok, report.summary()
    assert report.checked > 100


def test_unit_law_is_checked_on_words():
    sup = get_support("antimirov")
    broken = dataclasses.replace(sup, one=frozenset({Star(a)}), _memo={})
    report = check_support_laws(broken, [], n=3)
    assert [f.law for f in report.failures] == ["unit"]
    assert report.failures[0].witness == "a"


def test_mutant_dot_fails_with_witness():
    sup = get_support("antimirov")
    mutant = dataclasses.replace(sup, dot=lambda s, f: s, _memo={})
    report = check_support_laws(mutant, law_samples(sup, 20, seed=1), n=4)
    product = [f for f in report.failures if f.law == "product"]
    assert product
    f = product[0]
    assert f.witness is not None and len(f.witness) <= 4


@pytest.mark.parametrize("name", ["antimirov", "dissimilar", "clausal"])
def test_h1_sum_is_aci(name):
    sup = get_support(name)
    rng = random.Random(11)
    structures = [random_structure(sup, rng) for _ in range(6)]
    assert check_h1(sup, structures) == []


def test_h1_fails_for_plain_sum():
    sup = get_support("brzozowski")
    assert check_h1(sup, [a, b])


@pytest.mark.parametrize("name", ["antimirov", "dissimilar"])
@pytest.mark.parametrize("flag", [True, False])
def test_h2_structural_for_set_supports(name, flag):
    sup = get_support(name, flag)
    rng = random.Random(7)
    for fun in (OR, AND, NOT, XOR):
        for _ in range(40):
            args = [random_structure(sup, rng) for _ in range(fun.arity)]
            for letter in "ab":
                assert check_h2(sup, fun, args, letter) is None


def test_h2_clausal():
    sup = get_support("clausal")
    rng = random.Random(7)
    structural_misses = 0
    for fun in (OR, AND, NOT, XOR):
        for _ in range(40):
            args = [random_structure(sup, rng) for _ in range(fun.arity)]
            for letter in "ab":
                miss = check_h2(sup, fun, args, letter)
                if fun is OR:
                    assert miss is None
                structural_misses += miss is not None
                assert check_h2(sup, fun, args, letter, semantic_bound=4) is None
    # negation is not an involution on clausal forms, so structure differs
    assert structural_misses > 0


def test_closure_finite_on_sample():
    rng = random.Random(3)
    from derivkit.sampling import random_expr

    for _ in range(30):
        e = random_expr(rng, 4)
        for name in ("antimirov", "dissimilar", "clausal"):
            derivative_closure(get_support(name), e, 10_000, alphabet="ab")
