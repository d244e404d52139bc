"""Seeded random generators for words and formulas (property tests and experiments)."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .logic import ast
from .logic.guards import OPS, Comparison, Guard, T_MINUS_X, TT, X_MINUS_T
from .logic.intervals import Interval, make_interval
from .words import TimedWord


def random_word(
    rng: random.Random,
    length: int | tuple[int, int] = (1, 6),
    alphabet: Sequence[str] = ("a", "b"),
    max_time: int = 4,
    denominator: int = 4,
    anchored: bool = True,
    repeat_prob: float = 0.15,
) -> TimedWord:
    """Weakly monotone word; timestamps are multiples of 1/denominator."""
    n = length if isinstance(length, int) else rng.randint(*length)
    ticks = sorted(rng.randint(0, max_time * denominator) for _ in range(n))
    if anchored:
        ticks = [t - ticks[0] for t in ticks]
    for i in range(1, n):
        if rng.random() < repeat_prob:
            ticks[i] = ticks[i - 1]
    ticks.sort()
    return TimedWord(tuple((rng.choice(alphabet), Fraction(t, denominator)) for t in ticks))


def random_interval(rng: random.Random, max_const: int, allow_inf: bool = True) -> Interval:
    while True:
        low = rng.randint(0, max_const)
        if allow_inf and rng.random() < 0.25:
            return Interval(low, None, rng.random() < 0.5, True)
        high = rng.randint(low, max_const)
        iv = make_interval(low, high, rng.random() < 0.4, rng.random() < 0.4)
        if iv is not None:
            return iv


def random_mtl(
    rng: random.Random,
    depth: int,
    alphabet: Sequence[str] = ("a", "b"),
    max_const: int = 2,
    unary: bool = False,
    allow_inf: bool = True,
) -> ast.Formula:
    """Random MTL formula of modal depth at most depth."""
    if depth <= 0 or rng.random() < 0.2:
        return _leaf_or_bool(rng, alphabet, lambda: random_mtl(rng, 0, alphabet, max_const, unary, allow_inf))
    sub = lambda: random_mtl(rng, depth - 1, alphabet, max_const, unary, allow_inf)  # noqa: E731
    roll = rng.random()
    if roll < 0.2:
        return ast.Not(random_mtl(rng, depth, alphabet, max_const, unary, allow_inf))
    if roll < 0.35:
        return rng.choice([ast.And, ast.Or])(
            random_mtl(rng, depth, alphabet, max_const, unary, allow_inf), sub()
        )
    iv = random_interval(rng, max_const, allow_inf)
    if unary or rng.random() < 0.4:
        return rng.choice([ast.Future, ast.Past])(iv, sub())
    return rng.choice([ast.Until, ast.Since])(iv, sub(), sub())


def _leaf_or_bool(rng, alphabet, leaf):
    roll = rng.random()
    if roll < 0.1:
        return ast.Top()
    if roll < 0.8:
        return ast.Atom(rng.choice(alphabet))
    if roll < 0.9:
        return ast.Not(ast.Atom(rng.choice(alphabet)))
    return rng.choice([ast.And, ast.Or])(ast.Atom(rng.choice(alphabet)), leaf())


def random_comparison(rng, variables: Sequence[str], max_const: int, allow_negative: bool = True) -> Comparison:
    lo = -max_const if allow_negative else 0
    return Comparison(
        rng.choice([X_MINUS_T, T_MINUS_X]), rng.choice(list(variables)), rng.choice(OPS), rng.randint(lo, max_const)
    )


def random_tptl(
    rng: random.Random,
    depth: int,
    alphabet: Sequence[str] = ("a", "b"),
    variables: Sequence[str] = ("x",),
    max_const: int = 2,
    future_only: bool = False,
) -> ast.Formula:
    def go(d):
        roll = rng.random()
        if d <= 0 or roll < 0.15:
            r = rng.random()
            if r < 0.35:
                return ast.Constraint(random_comparison(rng, variables, max_const))
            if r < 0.45:
                return ast.Top()
            return ast.Atom(rng.choice(alphabet))
        if roll < 0.3:
            return ast.Freeze(rng.choice(list(variables)), go(d))
        if roll < 0.4:
            return ast.Not(go(d))
        if roll < 0.55:
            return rng.choice([ast.And, ast.Or])(go(d), go(d - 1))
        if future_only:
            return ast.Future(None, go(d - 1))
        if rng.random() < 0.5:
            return rng.choice([ast.Future, ast.Past])(None, go(d - 1))
        return rng.choice([ast.Until, ast.Since])(None, go(d - 1), go(d - 1))

    return go(depth)


def random_ttl(
    rng: random.Random,
    depth: int,
    alphabet: Sequence[str] = ("a", "b"),
    variables: Sequence[str] = ("x", "y"),
    max_const: int = 3,
    relative_only: bool = False,
    no_reuse: bool = False,
    max_modal_count: int | None = None,
    max_atoms: int = 2,
) -> ast.Formula:
    """Random TTL formula of modal depth at most depth.

    relative_only: guards mention only variables frozen by an enclosing freeze.
    no_reuse: every variable is frozen at most once in the whole formula.
    max_modal_count: total number of modal nodes allowed.
    """
    budget = [max_modal_count if max_modal_count is not None else 10**9]
    unused = list(variables)

    def guard(bound):
        pool = bound if relative_only else list(variables)
        if not pool or rng.random() < 0.3:
            return TT
        n = rng.randint(1, max_atoms)
        return Guard(tuple(random_comparison(rng, pool, max_const) for _ in range(n)))

    def event(bound):
        return ast.Event(rng.choice(alphabet), guard(bound))

    def go(d, bound):
        roll = rng.random()
        if d <= 0 or budget[0] <= 0 or roll < 0.15:
            return ast.Top() if rng.random() < 0.25 else event(bound)
        if roll < 0.3:
            pool = unused if no_reuse else list(variables)
            if pool:
                x = rng.choice(pool)
                if no_reuse:
                    unused.remove(x)
                return ast.Freeze(x, go(d, sorted(set(bound) | {x})))
        if roll < 0.4:
            return ast.Not(go(d, bound))
        if roll < 0.55:
            return rng.choice([ast.And, ast.Or])(go(d, bound), go(d - 1, bound))
        budget[0] -= 1
        r = rng.random()
        if r < 0.1:
            return ast.Start(go(d - 1, bound))
        if r < 0.2:
            return ast.End(go(d - 1, bound))
        node = ast.Next if r < 0.65 else ast.Prev
        return node(event(bound), go(d - 1, bound))

    return go(depth, [])
