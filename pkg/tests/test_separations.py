import random
from fractions import Fraction
from itertools import combinations

import pytest

from timedlogic.logic.analysis import classify_formula
from timedlogic.semantics import lang_member_mtl, lang_member_tptl
from timedlogic.separations import (
    CASE_IDS,
    gen_case,
    gen_instantaneous,
    gen_thm2,
    gen_thm3,
    gen_thm5,
    gen_ttl_i,
    gen_ttl_ii,
    gen_unitary,
    run_all,
    run_separation,
)
from timedlogic.separations.families import gen_thm3_game, thm3_constants, thm5_audit, ttl_i_band
from timedlogic.separations.runner import edge_summary
from timedlogic.words import untime

from conftest import W


# -- generators --------------------------------------------------------------------------

def test_thm2_words():
    case = gen_thm2(1, 1)
    assert case.words == (W(("a", 0), ("a", 1), ("c", "7/2")), W(("a", 0), ("a", 1), ("c", "5/2")))
    assert (case.game.rounds, case.game.menu_kind, case.game.k) == (1, "BInt^k", 1)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_thm2_split(n):
    case = gen_thm2(n, 1)
    A, B = case.words
    assert lang_member_mtl(B, case.formula) and not lang_member_mtl(A, case.formula)


def test_thm2_rejects_bad_split():
    with pytest.raises(ValueError):
        gen_thm2(3, 2)


def test_thm3_values():
    delta, eps = thm3_constants(1)
    assert (delta, eps) == (Fraction(1, 16), Fraction(1, 256))
    A, B = gen_thm3(1).words
    assert untime(A) == "aaaccc"
    middle_a = A.time(2)
    assert middle_a == Fraction(1, 8)
    assert B.time(5) - middle_a == 3
    assert A.time(5) - B.time(5) == eps
    assert [A.time(i) for i in (4, 6)] == [B.time(i) for i in (4, 6)]


@pytest.mark.parametrize("n", [1, 2])
def test_thm3_split(n):
    case = gen_thm3(n)
    A, B = case.words
    assert lang_member_mtl(B, case.formula) and not lang_member_mtl(A, case.formula)


def test_thm3_game_instance():
    case = gen_thm3_game(1)
    assert case.params == {"r": 1, "n": 2}
    assert case.game.rounds == 1 and case.game.menu_kind == "ExtInt"
    assert case.game.k > max(w.last_time for w in case.words)


def test_thm5_layout_values():
    case = gen_thm5(1, 1)
    assert "m=5" in case.notes[0] and "delta=1/10" in case.notes[0] and "middle segment 3" in case.notes[0]
    A, B = case.words
    assert len(A) == len(B) == 1 + 3 * 5


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2)])
def test_thm5_split_and_audit(n, k):
    case = gen_thm5(n, k)
    A, B = case.words
    assert lang_member_tptl(A, case.formula) and not lang_member_tptl(B, case.formula)
    assert thm5_audit(A, k) == [] and thm5_audit(B, k) == []


def test_thm5_audit_catches_collisions():
    w = W(("a", 0), ("a", "5/2"), ("b", "7/2"))
    assert any("integral distance" in p for p in thm5_audit(w, 1))
    assert any("inside" in p for p in thm5_audit(W(("a", 0), ("a", "1/2")), 1))


def test_thm5_no_integral_differences_brute_force():
    for w in gen_thm5(1, 1).words:
        assert all((t - s).denominator != 1 for s, t in combinations(w.times, 2))


def test_ttl_i_words():
    for n in (1, 2):
        case = gen_ttl_i(n)
        w, v = case.words
        L = 2 * n + 3
        assert untime(w) == "a" * L + "c" * L
        assert not lang_member_mtl(w, case.formula) and lang_member_mtl(v, case.formula)


def test_ttl_i_band_sizes():
    for n in (1, 2):
        for m in range(n + 1):
            a_band, c_band = ttl_i_band(n, m)
            assert len(a_band) == len(c_band) == 2 * n - 2 * m + 3


def test_ttl_ii_layout():
    case = gen_ttl_ii(1)
    w, v1, v2 = case.words
    assert untime(w) == "ac" * 5
    assert v1.time(4) == 4 + Fraction(1, 2) + Fraction(7, 10)
    assert case.groups == ((1, 2, 3), (3, 4, 5))
    assert not lang_member_mtl(w, case.formula)
    assert all(lang_member_mtl(v, case.formula) for v in (v1, v2))


@pytest.mark.parametrize("m", [1, 2])
def test_ttl_ii_family_size(m):
    case = gen_ttl_ii(m)
    assert len(case.words) == 1 + 2 * m and len(case.groups) >= m + 1


def test_untimed_devices():
    assert str(gen_instantaneous(2, "ab")) == "(a,0)(b,0)"
    u = gen_unitary(5, "ab", random.Random(1))
    assert all(0 < t < 1 for t in u.times) and len(set(u.times)) == 5
    with pytest.raises(ValueError):
        gen_unitary(0)


def test_fragment_consistency():
    assert classify_formula(gen_thm2(1).formula).name() == "MITL[F,P]"
    frag = classify_formula(gen_thm3(1).formula)
    assert frag.unary and frag.bounded and not frag.non_punctual


def test_gen_case_dispatch():
    assert gen_case("thm2", m=2, k=1).params["n"] == 2
    with pytest.raises(ValueError):
        gen_case("nope")


# -- runner ------------------------------------------------------------------------------

def test_thm2_runner_three_checks():
    rep = run_separation(gen_case("thm2", m=2, k=1))
    assert rep.passed and len(rep.checks) == 3
    assert rep.lines()[-1] == "RESULT PASS"


def test_thm5_runner():
    rep = run_separation(gen_case("thm5", n=1, k=1))
    assert rep.passed
    assert {c.name for c in rep.checks} >= {"eval", "game", "audit"}


def test_ttl_ii_runner():
    rep = run_separation(gen_case("ttl_ii", m=1), samples=50)
    assert rep.passed


def test_runner_reports_failures():
    case = gen_thm2(1, 1)
    case.expected = (True, False)
    rep = run_separation(case)
    assert not rep.passed
    assert rep.lines()[-1] == "RESULT FAIL"


def test_run_all_small():
    reports = run_all(small=True, samples=40)
    assert {r.case.id for r in reports} == set(CASE_IDS)
    assert all(r.passed for r in reports), [line for r in reports for line in r.lines()]
    summary = edge_summary(reports)
    assert any("TPTL[F]" in line for line in summary)
