"""Witness word families for the separation results.

Each generator returns a SeparationCase: the formula, the words it splits,
and the game (if any) that shows no formula of the weaker logic splits them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from ..logic import ast
from ..logic.intervals import B_INT_K, EXT_INT, INT_K
from ..logic.syntax import MTL, TPTL, parse_formula
from ..words import STRICT, WEAK, TimedWord

THM2_FORMULA = "(F [0,inf) (and a (F (1,2) c)))"
THM3_FORMULA = "(F (0,1) (and a (F [3,3] c)))"
THM5_FORMULA = (
    "(F (freeze p (and a (F (and b (and (cmp T-p > 1) (and (cmp T-p < 2)"
    " (F (and c (and (cmp T-p > 1) (cmp T-p < 2)))))))))))"
)

CASE_IDS = ("thm2", "thm3", "thm5", "ttl_i", "ttl_ii", "instantaneous", "unitary")


class GenerationError(RuntimeError):
    """A construction could not meet its side conditions."""


@dataclass(frozen=True)
class GameSettings:
    rounds: int
    menu_kind: str
    k: int
    variant: str = "US"


@dataclass
class SeparationCase:
    id: str
    params: dict
    formula: ast.Formula
    logic: str
    words: tuple[TimedWord, ...]           # (satisfying?, ...) see `expected`
    expected: tuple[bool, ...]             # membership of each word in L(formula)
    game: Optional[GameSettings] = None
    groups: tuple[tuple[int, ...], ...] = ()
    notes: list[str] = field(default_factory=list)

    def label(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.id} {ps}".strip()


def _word(events, monotonicity=None) -> TimedWord:
    return TimedWord(tuple((a, Fraction(t)) for a, t in events), monotonicity)


# -- MITL[F,P] vs BMTL[U,S] ------------------------------------------------------

def gen_thm2(n: int, k: int = 1) -> SeparationCase:
    """a's at 0..n then a c at n+5/2 (A) or n+3/2 (B). The game has n/k rounds."""
    if n < 1 or k < 1 or n % k:
        raise ValueError("gen_thm2 needs n = m*k with m, k >= 1")
    a_part = [("a", i) for i in range(n + 1)]
    A = _word(a_part + [("c", n + Fraction(5, 2))])
    B = _word(a_part + [("c", n + Fraction(3, 2))])
    return SeparationCase(
        "thm2", {"m": n // k, "k": k, "n": n},
        parse_formula(THM2_FORMULA, MTL), MTL, (A, B), (False, True),
        GameSettings(n // k, B_INT_K, k),
    )


# -- BMTL[F,P] vs MITL[U,S] ------------------------------------------------------

def thm3_constants(n: int) -> tuple[Fraction, Fraction]:
    d = 2 * n + 2
    return Fraction(1, d * d), Fraction(1, d ** 4)


def gen_thm3(n: int, rounds: Optional[int] = None) -> SeparationCase:
    """a^(2n+1) c^(2n+1); B moves the middle c exactly 3 after the middle a."""
    if n < 1:
        raise ValueError("gen_thm3 needs n >= 1")
    delta, eps = thm3_constants(n)
    size = 2 * n + 1
    a_part = [("a", i * delta) for i in range(1, size + 1)]
    c_A = [("c", 3 + i * delta + eps) for i in range(1, size + 1)]
    c_B = list(c_A)
    c_B[n] = ("c", 3 + (n + 1) * delta)
    A, B = _word(a_part + c_A), _word(a_part + c_B)
    cap = math.ceil(max(A.last_time, B.last_time)) + 1
    case = SeparationCase(
        "thm3", {"n": n}, parse_formula(THM3_FORMULA, MTL), MTL, (A, B), (False, True),
        GameSettings(rounds if rounds is not None else n // 2, EXT_INT, cap),
    )
    case.notes.append(f"menu constants capped at {cap} = ceil(last timestamp) + 1")
    case.notes.append("words are not zero-anchored; only MTL checks are run on them")
    return case


def gen_thm3_game(r: int) -> SeparationCase:
    """The game instance: words for n = 2r, r rounds."""
    case = gen_thm3(2 * r, rounds=r)
    case.params = {"r": r, "n": 2 * r}
    return case


# -- TPTL[F] vs MTL[U,S] ---------------------------------------------------------

def _integral_collisions(times: Sequence[Fraction]) -> list[tuple[int, int]]:
    bad = []
    for (i, s), (j, t) in combinations(enumerate(times), 2):
        if (t - s).denominator == 1:
            bad.append((i, j))
    return bad


def _thm5_layout(n: int, k: int, schedule: int):
    m = 2 * n * (k + 1) + 1
    delta = Fraction(1, 2 * m)
    eps = delta / 8
    mid = n * (k + 1) + 1
    t1 = k + 1 + delta / 3
    # distinct offsets well inside the half-widths (delta/4 for b, eps/2 for c)
    scale = Fraction(1, 2 ** (4 + schedule)) if schedule else Fraction(1, 7 * (m + 1))
    events_B, events_A = [("a", Fraction(0))], [("a", Fraction(0))]
    for i in range(1, m + 1):
        t = t1 + (i - 1) * (1 - delta)
        u = (delta / 4) * scale * i
        v = (eps / 2) * scale * (m + 1 - i)
        seg = [("a", t), ("b", t + 2 - Fraction(3, 2) * delta + u), ("c", t + 2 + eps / 2 + v)]
        events_B.extend(seg)
        if i == mid:
            seg = seg[:2] + [("c", t + 2 - eps / 2 - v)]
        events_A.extend(seg)
    # segments overlap, so interleave by time
    events_A.sort(key=lambda e: e[1])
    events_B.sort(key=lambda e: e[1])
    return m, delta, eps, mid, events_A, events_B


def thm5_audit(w: TimedWord, k: int) -> list[str]:
    """Side conditions: no events in (0,k], none at integral distance from each other."""
    problems = []
    times = w.times
    if times[0] != 0:
        problems.append("first event is not at 0")
    if any(0 < t <= k for t in times[1:]):
        problems.append(f"event inside (0,{k}]")
    for i, j in _integral_collisions(times):
        problems.append(f"positions {i + 1} and {j + 1} are an integral distance apart")
    return problems


def gen_thm5(n: int, k: int) -> SeparationCase:
    """m overlapping segments a..b..c; A pulls the middle c back inside (1,2)."""
    if n < 1 or k < 1:
        raise ValueError("gen_thm5 needs n, k >= 1")
    for schedule in (0, 1):
        m, delta, eps, mid, ev_A, ev_B = _thm5_layout(n, k, schedule)
        A, B = _word(ev_A, STRICT), _word(ev_B, STRICT)
        problems = thm5_audit(A, k) + thm5_audit(B, k)
        if not problems:
            break
    else:
        raise GenerationError("no offset schedule avoids integral distances: " + "; ".join(problems[:3]))
    case = SeparationCase(
        "thm5", {"n": n, "k": k}, parse_formula(THM5_FORMULA, TPTL), TPTL, (A, B), (True, False),
        GameSettings(n, INT_K, k),
    )
    case.notes.append(f"m={m} segments, delta={delta}, eps={eps}, middle segment {mid}, offset schedule {schedule}")
    return case


# -- TTL ---------------------------------------------------------------------------

def gen_ttl_i(n: int) -> SeparationCase:
    """The thm3 pair at n+1; the check is reach avoidance, not a game."""
    base = gen_thm3(n + 1)
    case = SeparationCase(
        "ttl_i", {"n": n}, base.formula, MTL, base.words, base.expected,
        notes=["words are the n+1 instance of thm3; not zero-anchored"],
    )
    return case


def ttl_i_band(n: int, depth: int) -> tuple[range, range]:
    """Positions a depth-`depth` TTL formula never reaches in the ttl_i words.

    With block length L = 2n+3 the a-block occupies positions 1..L and the c-block
    L+1..2L. Returned as (a positions, c positions), each of size L - 2*depth.
    """
    L = 2 * n + 3
    a_band = range(depth + 2, L - depth + 2)
    c_band = range(L + depth + 1, 2 * L - depth + 1)
    return a_band, c_band


def gen_ttl_ii(m: int) -> SeparationCase:
    """(ac)^(4m+1) spaced 2 apart; v_j delays the c of pair 2j by 7/10."""
    if m < 1:
        raise ValueError("gen_ttl_ii needs m >= 1")
    pairs = 4 * m + 1
    base = []
    for x in range(1, pairs + 1):
        base.extend([("a", 2 * x), ("c", 2 * x + Fraction(1, 2))])
    w = _word(base)
    family = []
    for j in range(1, 2 * m + 1):
        ev = list(base)
        idx = 2 * (2 * j) - 1        # 0-based index of the c of pair 2j
        ev[idx] = ("c", ev[idx][1] + Fraction(7, 10))
        family.append(_word(ev))
    groups = tuple((2 * j - 1, 2 * j, 2 * j + 1) for j in range(1, 2 * m + 1))
    return SeparationCase(
        "ttl_ii", {"m": m}, parse_formula(THM2_FORMULA, MTL), MTL,
        (w, *family), (False,) + (True,) * len(family), groups=groups,
        notes=["words are not zero-anchored; sampled TTL formulas use bound variables only"],
    )


# -- untimed devices ---------------------------------------------------------------

def _letters(length: int, alphabet: Sequence[str], rng: Optional[random.Random]) -> list[str]:
    if length < 1:
        raise ValueError("length must be at least 1")
    alphabet = list(alphabet)
    if rng is None:
        return [alphabet[i % len(alphabet)] for i in range(length)]
    return [rng.choice(alphabet) for _ in range(length)]


def gen_instantaneous(length: int, alphabet: Sequence[str] = ("a",), rng: Optional[random.Random] = None) -> TimedWord:
    """Every event at time 0. Without rng the letters cycle through the alphabet."""
    return TimedWord(tuple((a, Fraction(0)) for a in _letters(length, alphabet, rng)), WEAK)


def gen_unitary(length: int, alphabet: Sequence[str] = ("a",), rng: Optional[random.Random] = None) -> TimedWord:
    """Events at i/(length+1), strictly inside (0,1)."""
    letters = _letters(length, alphabet, rng)
    return TimedWord(tuple((a, Fraction(i, length + 1)) for i, a in enumerate(letters, 1)), STRICT)


def gen_case(case_id: str, **params) -> SeparationCase:
    """Dispatch by id; instantaneous/unitary cases carry sample words only."""
    if case_id == "thm2":
        m, k = params.get("m", 1), params.get("k", 1)
        return gen_thm2(m * k, k)
    if case_id == "thm3":
        return gen_thm3_game(params.get("r", 1))
    if case_id == "thm5":
        return gen_thm5(params.get("n", 1), params.get("k", 1))
    if case_id == "ttl_i":
        return gen_ttl_i(params.get("n", 1))
    if case_id == "ttl_ii":
        return gen_ttl_ii(params.get("m", 1))
    if case_id in ("instantaneous", "unitary"):
        length = params.get("length", 3)
        gen = gen_instantaneous if case_id == "instantaneous" else gen_unitary
        words = (gen(length, ("a", "b")),)
        return SeparationCase(case_id, {"length": length}, ast.Top(), MTL, words, (True,))
    raise ValueError(f"unknown case {case_id!r}; expected one of {', '.join(CASE_IDS)}")
