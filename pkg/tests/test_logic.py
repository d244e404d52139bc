import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from timedlogic.logic import ast
from timedlogic.logic.analysis import (
    classify_formula,
    modal_count,
    modal_depth,
    reuses_freeze_variable,
    truncate_constants,
)
from timedlogic.logic.guards import Comparison, Guard, T_MINUS_X, X_MINUS_T, eval_guard, expand_equalities, normalize_guard
from timedlogic.logic.intervals import Interval, IntervalError, family_admits, parse_interval
from timedlogic.logic.syntax import FormulaSyntaxError, parse_formula, print_formula
from timedlogic.sampling import random_comparison, random_mtl, random_tptl, random_ttl

from conftest import mtl, tptl, ttl


# -- intervals ---------------------------------------------------------------------

def test_interval_parse_and_print():
    iv = parse_interval("[0,2)")
    assert iv == Interval(0, 2, False, True)
    assert str(iv) == "[0,2)"
    assert str(parse_interval("(1,inf)")) == "(1,inf)"


@pytest.mark.parametrize("text", ["(2,2)", "[2,2)", "[3,1]", "[0,inf]", "[-1,2]"])
def test_empty_or_bad_intervals(text):
    with pytest.raises((IntervalError, ValueError)):
        parse_interval(text)


def test_interval_contains_exact():
    iv = Interval(1, 2, True, True)
    assert not iv.contains(Fraction(1))
    assert iv.contains(Fraction(3, 2))
    assert not iv.contains(Fraction(2))
    assert Interval(3, 3).contains(Fraction(3))


def test_family_rules():
    assert not family_admits("ExtInt", Interval(1, 1))
    assert not family_admits("BInt", Interval(0, None, False, True))
    assert not family_admits("Int^k", Interval(0, 3), 2)
    assert family_admits("Int^k", Interval(0, 2), 2)


# -- guards -------------------------------------------------------------------------

def test_eval_guard_examples():
    assert eval_guard({"x": Fraction(0)}, Fraction(3, 2), Comparison(T_MINUS_X, "x", "<", 2))
    assert eval_guard({}, Fraction(0), Comparison(X_MINUS_T, "x", "<=", 0))
    assert eval_guard({"x": Fraction(1)}, Fraction(0), Comparison(X_MINUS_T, "x", "=", 1))
    assert not eval_guard({"x": Fraction(1)}, Fraction(0), Comparison(X_MINUS_T, "x", "=", 2))


def test_normalize_examples():
    g = normalize_guard(Guard((Comparison(X_MINUS_T, "x", "<", -2),)))
    assert g.atoms == (Comparison(T_MINUS_X, "x", ">", 2),)
    same = Guard((Comparison(X_MINUS_T, "x", "<=", 0),))
    assert normalize_guard(same) == same
    g = normalize_guard(Guard((Comparison(X_MINUS_T, "x", "=", 1), Comparison(T_MINUS_X, "y", "<", -1))))
    assert g.atoms == (Comparison(X_MINUS_T, "x", "=", 1), Comparison(X_MINUS_T, "y", ">", 1))


def test_expand_equalities():
    g = expand_equalities(Guard((Comparison(X_MINUS_T, "x", "=", 1),)))
    assert {a.op for a in g.atoms} == {"<=", ">="}


@given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_normalize_preserves_meaning(seed, xv, shift):
    r = random.Random(seed)
    g = Guard(tuple(random_comparison(r, ("x", "y"), 3) for _ in range(r.randint(1, 3))))
    n = normalize_guard(g)
    assert all(a.c >= 0 for a in n.atoms)
    assert normalize_guard(n) == n
    # boundary values: t differs from nu by an exact constant or a half-step off it
    for t in {Fraction(max(0, xv + shift)), Fraction(max(0, xv + shift)) + Fraction(1, 2)}:
        nu = {"x": Fraction(max(0, xv)), "y": Fraction(max(0, shift))}
        assert eval_guard(nu, t, g) == eval_guard(nu, t, n)
        assert eval_guard(nu, t, g) == eval_guard(nu, t, expand_equalities(n))


# -- syntax -------------------------------------------------------------------------

def test_parse_until():
    f = mtl("(U [0,2) a b)")
    assert f == ast.Until(Interval(0, 2, False, True), ast.Atom("a"), ast.Atom("b"))


def test_parse_intro_tptl():
    f = tptl("(freeze x (U a (and b (cmp T-x < 2))))")
    assert isinstance(f, ast.Freeze) and f.var == "x"
    assert isinstance(f.arg, ast.Until) and f.arg.interval is None
    assert f.arg.right.right == ast.Constraint(Comparison(T_MINUS_X, "x", "<", 2))


def test_parse_empty_interval_error():
    with pytest.raises(FormulaSyntaxError, match="empty interval"):
        mtl("(U (2,2) a b)")


@pytest.mark.parametrize("text,logic", [
    ("(U [0,1) a)", "mtl"),
    ("(X (ev a (tt)) a", "ttl"),
    ("(freeze x a)", "mtl"),
    ("(sp a)", "tptl"),
    ("(U a b)", "mtl"),
    ("(F [0,1) a) b", "mtl"),
    ("(cmp x-T ~ 2)", "tptl"),
])
def test_syntax_errors(text, logic):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text, logic)
    assert info.value.pos is None or info.value.pos >= 0


def test_print_examples():
    assert print_formula(mtl("(U [0,2) a b)")) == "(U [0,2) a b)"
    assert print_formula(ast.Future(Interval(3, 3), ast.Atom("c"))) == "(F [3,3] c)"


def test_ttl_bare_atom_is_event():
    f = ttl("(X (ev b (cmp x-T < 2)) a)")
    assert f.arg == ast.Event("a")


def test_node_ids_unique():
    f = mtl("(and (F [0,1] a) (F [0,1] a))")
    ids = [g.node_id for g in ast.walk(f)]
    assert len(ids) == len(set(ids))


@settings(max_examples=150)
@given(st.integers(0, 10**9), st.sampled_from(["mtl", "tptl", "ttl"]))
def test_print_parse_roundtrip(seed, logic):
    r = random.Random(seed)
    f = {"mtl": lambda: random_mtl(r, 4), "tptl": lambda: random_tptl(r, 4, variables=("x", "y")),
         "ttl": lambda: random_ttl(r, 4)}[logic]()
    text = print_formula(f)
    g = parse_formula(text, logic)
    assert g == f
    assert print_formula(g) == text


# -- analysis -----------------------------------------------------------------------

def test_classify_examples():
    frag = classify_formula(mtl("(F [0,inf) (and a (F (1,2) c)))"))
    assert (frag.unary, frag.bounded, frag.non_punctual, frag.max_constant) == (True, False, True, 2)
    assert frag.name() == "MITL[F,P]"
    frag = classify_formula(mtl("(F (0,1) (and a (F [3,3] c)))"))
    assert (frag.unary, frag.bounded, frag.non_punctual, frag.max_constant) == (True, True, False, 3)
    frag = classify_formula(mtl("(U [0,0] a b)"))
    assert (frag.unary, frag.bounded, frag.non_punctual, frag.max_constant) == (False, True, False, 0)


def test_depth_and_count():
    assert (modal_depth(mtl("a")), modal_count(mtl("a"))) == (0, 0)
    f = mtl("(F [0,inf) (and a (F [0,inf) c)))")
    assert (modal_depth(f), modal_count(f)) == (2, 2)
    g = ttl("(freeze x (X (ev a (cmp x-T < 1)) (Y (ev b (cmp T-x > 0)) (top))))")
    assert (modal_depth(g), modal_count(g)) == (2, 2)
    assert modal_depth(ttl("(and (sp a) (ep (X (ev a (tt)) a)))")) == 2


def test_reuse_detection():
    assert reuses_freeze_variable(tptl("(freeze x (F (freeze x a)))"))
    assert not reuses_freeze_variable(tptl("(freeze x (F (freeze y a)))"))


def test_truncate_examples():
    assert truncate_constants(mtl("(F (1,3) b)"), 2) == mtl("(F (1,2) b)")
    assert truncate_constants(mtl("(F [0,inf) a)"), 2) == mtl("(F [0,2) a)")
    assert ast.is_false(truncate_constants(mtl("(F (2,3) b)"), 2))
    assert truncate_constants(mtl("(U [1,1] a b)"), 0) == mtl("(U [0,0] a b)")


def test_truncate_negative_bound():
    with pytest.raises(ValueError):
        truncate_constants(mtl("a"), -1)
