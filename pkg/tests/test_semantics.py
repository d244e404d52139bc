import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from timedlogic.logic import ast
from timedlogic.logic.analysis import modal_depth
from timedlogic.logic.intervals import Interval
from timedlogic.sampling import random_mtl, random_tptl, random_ttl, random_word
from timedlogic.semantics import (
    NotAnchoredError,
    eval_mtl,
    eval_tptl,
    eval_ttl,
    lang_member_mtl,
    lang_member_tptl,
    lang_member_ttl,
    reduce_instantaneous,
    reduce_unitary,
)
from timedlogic.semantics.evaluate import FreezeEvaluator, MTLEvaluator, UnsupportedNode, satisfying_positions_mtl
from timedlogic.semantics.possets import positions_freeze, positions_mtl
from timedlogic.separations import gen_instantaneous, gen_unitary
from timedlogic.ttl2mitl import compute_pos_val

from conftest import W, mtl, tptl, ttl

A1 = W(("a", 0), ("a", 1), ("c", "7/2"))
B1 = W(("a", 0), ("a", 1), ("c", "5/2"))
THM2 = "(F [0,inf) (and a (F (1,2) c)))"
INTRO_TPTL = "(freeze x (U a (and b (cmp T-x < 2))))"
INTRO_MTL = "(U [0,2) a b)"


# -- MTL --------------------------------------------------------------------------

def test_until_example():
    assert eval_mtl(W(("a", 0), ("b", "3/2")), 1, mtl(INTRO_MTL))


def test_future_needs_later_position():
    assert not eval_mtl(W(("a", 0)), 1, mtl("(F [0,inf) a)"))


def test_thm2_words():
    f = mtl(THM2)
    assert eval_mtl(B1, 1, f) and not eval_mtl(A1, 1, f)
    assert lang_member_mtl(B1, f) and not lang_member_mtl(A1, f)


def test_first_letter_membership():
    assert lang_member_mtl(W(("c", 3), ("a", 4)), mtl("c"))


def test_position_out_of_range():
    with pytest.raises(IndexError):
        eval_mtl(B1, 4, mtl("a"))


def test_strict_until_ignores_current_position():
    w = W(("b", 0), ("a", 0))
    assert not eval_mtl(w, 1, mtl("(U [0,0] (top) b)"))
    assert eval_mtl(w, 1, mtl("(U [0,0] (top) a)"))


def test_mtl_evaluator_is_shift_invariant():
    f = mtl(THM2)
    shifted = W(("a", 5), ("a", 6), ("c", "15/2"))
    assert eval_mtl(shifted, 1, f)


def test_mtl_evaluator_rejects_freeze():
    with pytest.raises(UnsupportedNode):
        eval_mtl(B1, 1, tptl("(freeze x a)"))


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_mtl_agrees_with_position_sets(seed):
    r = random.Random(seed)
    f = random_mtl(r, 3, max_const=3)
    w = random_word(r, (1, 6), anchored=r.random() < 0.7)
    assert satisfying_positions_mtl(w, f) == positions_mtl(w, f)


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_derived_modalities(seed):
    r = random.Random(seed)
    phi = random_mtl(r, 2)
    w = random_word(r, (1, 6))
    iv = Interval(r.randint(0, 2), None, r.random() < 0.5, True)
    ev = MTLEvaluator(w)
    for i in w.positions():
        assert ev.holds(i, ast.Future(iv, phi)) == ev.holds(i, ast.Until(iv, ast.Top(), phi))
        assert ev.holds(i, ast.Past(iv, phi)) == ev.holds(i, ast.Since(iv, ast.Top(), phi))


# -- TPTL -------------------------------------------------------------------------

def test_intro_equivalence_example():
    w = W(("a", 0), ("b", "3/2"))
    assert eval_tptl(w, 1, {}, tptl(INTRO_TPTL)) and eval_mtl(w, 1, mtl(INTRO_MTL))


def test_freeze_then_check():
    assert eval_tptl(W(("a", 0)), 1, None, tptl("(freeze x (cmp x-T <= 0))"))


THM5 = ("(F (freeze p (and a (F (and b (and (cmp T-p > 1) (and (cmp T-p < 2)"
        " (F (and c (and (cmp T-p > 1) (cmp T-p < 2)))))))))))")


def _triple_oracle(w):
    """Some a, later b, later c with both lags in (1,2), the a strictly after position 1."""
    for i, j, k in combinations(w.positions(), 3):
        if i == 1:
            continue
        if (w.letter(i), w.letter(j), w.letter(k)) != ("a", "b", "c"):
            continue
        if all(1 < w.time(x) - w.time(i) < 2 for x in (j, k)):
            return True
    return False


def test_thm5_formula_example():
    w = W(("a", 0), ("a", 1), ("b", "5/2"), ("c", "11/4"))
    assert eval_tptl(w, 1, {}, tptl(THM5))
    assert _triple_oracle(w)


@settings(max_examples=150)
@given(st.integers(0, 10**9))
def test_thm5_formula_matches_triple_oracle(seed):
    r = random.Random(seed)
    w = random_word(r, (1, 7), ("a", "b", "c"), max_time=5)
    assert lang_member_tptl(w, tptl(THM5)) == _triple_oracle(w)


def test_tptl_membership_needs_anchor():
    with pytest.raises(NotAnchoredError):
        lang_member_tptl(W(("a", 1)), tptl("a"))


def test_missing_variable_reads_zero():
    w = W(("a", 0), ("b", 3))
    assert eval_tptl(w, 2, {}, tptl("(cmp T-z = 3)"))


@settings(max_examples=150)
@given(st.integers(0, 10**9))
def test_tptl_agrees_with_position_sets(seed):
    r = random.Random(seed)
    f = random_tptl(r, 3, variables=("x", "y"))
    w = random_word(r, (1, 5))
    ev = FreezeEvaluator(w)
    assert {i for i in w.positions() if ev.holds(i, {}, f)} == positions_freeze(w, f)


# -- TTL --------------------------------------------------------------------------

def test_ttl_next_lands_on_first_match():
    w = W(("a", 0), ("b", 1), ("b", 2))
    f = ttl("(X (ev b (tt)) (top))")
    assert eval_ttl(w, 1, {}, f)
    assert compute_pos_val(w, f).position(f.arg) == 2


def test_ttl_next_skips_guard_failures():
    w = W(("a", 0), ("b", 1), ("b", 2))
    f = ttl("(freeze x (X (ev b (cmp T-x >= 2)) (top)))")
    assert eval_ttl(w, 1, {}, f)
    assert compute_pos_val(w, f).position(f.arg.arg) == 3


def test_ttl_end_position():
    assert eval_ttl(W(("a", 0), ("b", 1)), 1, {}, ttl("(ep (ev b (tt)))"))


def test_ttl_next_strict_under_equal_timestamps():
    w = W(("b", 0), ("b", 0))
    f = ttl("(X (ev b (tt)) (top))")
    assert compute_pos_val(w, f).position(f.arg) == 2
    assert not eval_ttl(W(("b", 0)), 1, {}, f)


def test_ttl_membership_needs_anchor():
    with pytest.raises(NotAnchoredError):
        lang_member_ttl(W(("a", 1)), ttl("(top)"))


def test_ttl_rejects_mtl_nodes():
    with pytest.raises(UnsupportedNode):
        eval_ttl(B1, 1, {}, mtl("(F [0,1] a)"))


@settings(max_examples=150)
@given(st.integers(0, 10**9))
def test_ttl_agrees_with_position_sets(seed):
    r = random.Random(seed)
    f = random_ttl(r, 3)
    w = random_word(r, (1, 5))
    ev = FreezeEvaluator(w)
    assert {i for i in w.positions() if ev.holds(i, {}, f)} == positions_freeze(w, f)


# -- intro sanity -------------------------------------------------------------------

@settings(max_examples=300)
@given(st.integers(0, 10**9))
def test_intro_formulas_agree(seed):
    r = random.Random(seed)
    w = random_word(r, (1, 7), ("a", "b"), max_time=4)
    assert lang_member_tptl(w, tptl(INTRO_TPTL)) == lang_member_mtl(w, mtl(INTRO_MTL))


# -- reductions ---------------------------------------------------------------------

def test_reduce_instantaneous_examples():
    assert reduce_instantaneous(mtl("(U [0,5) a b)")) == mtl("(U [0,0] a b)")
    assert ast.is_false(reduce_instantaneous(mtl("(U (1,2) a b)"), preserve_depth=False))
    kept = reduce_instantaneous(mtl("(U (1,2) a b)"))
    assert modal_depth(kept) == 1 and not eval_mtl(W(("a", 0), ("b", 0)), 1, kept)
    assert reduce_instantaneous(tptl(INTRO_TPTL)) == mtl("(U [0,0] a (and b (top)))")


def test_reduce_unitary_examples():
    assert reduce_unitary(mtl("(U [0,inf) a b)")) == mtl("(U (0,1) a b)")
    assert ast.is_false(reduce_unitary(mtl("(U (1,2) a b)"), preserve_depth=False))
    assert reduce_unitary(mtl("(F [0,1] a)")) == mtl("(F (0,1) a)")


def test_generated_devices():
    assert str(gen_instantaneous(2, "ab")) == "(a,0)(b,0)"
    assert str(gen_unitary(3, "a")) == "(a,1/4)(a,1/2)(a,3/4)"


@settings(max_examples=200)
@given(st.integers(0, 10**9), st.booleans())
def test_reductions_sound(seed, preserve):
    r = random.Random(seed)
    f = random_mtl(r, 3, max_const=3)
    w = gen_instantaneous(r.randint(1, 6), "ab", r)
    g = reduce_instantaneous(f, preserve)
    assert all(eval_mtl(w, i, f) == eval_mtl(w, i, g) for i in w.positions())
    u = gen_unitary(r.randint(1, 6), "ab", r)
    h = reduce_unitary(f, preserve)
    assert all(eval_mtl(u, i, f) == eval_mtl(u, i, h) for i in u.positions())
    if preserve:
        assert modal_depth(g) == modal_depth(f) == modal_depth(h)


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_reduce_instantaneous_tptl(seed):
    r = random.Random(seed)
    f = random_tptl(r, 3, variables=("x", "y"))
    w = gen_instantaneous(r.randint(1, 6), "ab", r)
    g = reduce_instantaneous(f)
    assert modal_depth(g) == modal_depth(f)
    assert all(eval_tptl(w, i, {}, f) == eval_mtl(w, i, g) for i in w.positions())
