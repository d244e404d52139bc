from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from timedlogic.words import STRICT, WEAK, TimedWord, WordError, parse_word, serialize_word, untime
from timedlogic.separations import gen_thm2, gen_thm3, gen_thm5, gen_ttl_ii

from conftest import W


def test_parse_strict_anchored():
    w = parse_word("a 0\nb 3/2")
    assert w.events == (("a", Fraction(0)), ("b", Fraction(3, 2)))
    assert w.monotonicity == STRICT
    assert w.anchored_zero


def test_parse_weak_repeat():
    w = parse_word("a 0\na 0")
    assert w.monotonicity == WEAK and w.anchored_zero and len(w) == 2


def test_parse_decreasing_rejected():
    with pytest.raises(WordError, match="decreasing"):
        parse_word("a 0\nb 1\nb 0.5")


@pytest.mark.parametrize("text", ["a", "a 1 2", "A 0", "a -1", "a x", "a 1/0", "", "# only a comment"])
def test_parse_malformed(text):
    with pytest.raises(WordError):
        parse_word(text)


def test_comments_and_decimals():
    w = parse_word("# header\na 0\n\n  # indented comment\nb 0.25\n")
    assert w.time(2) == Fraction(1, 4)


def test_serialize_canonical():
    assert serialize_word(W(("a", 0), ("b", "3/2"))) == "a 0/1\nb 3/2"
    assert serialize_word(W(("a", 0))) == "a 0/1"


def test_untime():
    assert untime(W(("a", 0), ("b", "3/2"))) == "ab"
    assert untime(gen_thm2(1, 1).words[0]) == "aac"
    assert untime(W(("a", 0), ("a", 0), ("a", 0))) == "aaa"


def test_strict_word_rejects_repeats():
    with pytest.raises(WordError):
        TimedWord.of([("a", 0), ("a", 0)], STRICT)


def test_floats_refused():
    with pytest.raises(TypeError):
        TimedWord.of([("a", 0.5)])


def test_positions_one_based():
    w = W(("a", 0), ("b", 1))
    assert list(w.positions()) == [1, 2]
    assert w.letter(2) == "b"
    with pytest.raises(IndexError):
        w.check_position(3)


def test_anchor_recorded_not_enforced():
    w = W(("a", "1/2"))
    assert not w.anchored_zero


words = st.lists(
    st.tuples(st.sampled_from("abc"), st.fractions(min_value=0, max_value=10, max_denominator=64)),
    min_size=1, max_size=8,
).map(lambda evs: TimedWord.of(sorted(evs, key=lambda e: e[1])))


@given(words)
def test_roundtrip_property(w):
    assert parse_word(serialize_word(w)) == w


@pytest.mark.parametrize("case", [gen_thm2(4, 2), gen_thm3(3), gen_thm5(1, 1), gen_thm5(1, 2), gen_ttl_ii(2)],
                         ids=lambda c: c.label())
def test_generated_words_roundtrip(case):
    for w in case.words:
        assert parse_word(serialize_word(w)) == w


def test_exact_differences():
    # 1/(2n+2)^4 sized gaps stay exact
    w = gen_thm3(4).words[0]
    d = w.time(len(w)) - w.time(len(w) - 1)
    assert isinstance(d, Fraction) and d == Fraction(1, 100)
