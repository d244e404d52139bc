"""Second, independently written evaluator working bottom-up on satisfaction sets.

For MTL every subformula maps to the set of positions where it holds. For the
freeze logics the table is indexed by (position, environment), where an
environment assigns each variable of the formula a value from {0} plus the
word's timestamps (the only values a freeze can ever produce). Until/Since are
computed by scanning backwards from each witness rather than forwards from each
position, so the code path differs from the recursive evaluator.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from ..logic import ast
from ..logic.guards import eval_guard
from ..words import TimedWord


def _modal_scan(w, interval, left_set, right_set, future: bool) -> set[int]:
    out = set()
    n = len(w)
    for j in right_set:
        # walk away from the witness j until the left operand breaks
        i = j - 1 if future else j + 1
        while 1 <= i <= n:
            d = w.time(j) - w.time(i) if future else w.time(i) - w.time(j)
            if interval is None or interval.contains(d):
                out.add(i)
            if left_set is not None and i not in left_set:
                break
            i = i - 1 if future else i + 1
    return out


def positions_mtl(w: TimedWord, f: ast.Formula) -> frozenset[int]:
    cache: dict[int, frozenset[int]] = {}
    everything = frozenset(w.positions())

    def sat(g: ast.Formula) -> frozenset[int]:
        key = id(g)
        if key in cache:
            return cache[key]
        if isinstance(g, ast.Top):
            res = everything
        elif isinstance(g, ast.Atom):
            res = frozenset(i for i in everything if w.letter(i) == g.name)
        elif isinstance(g, ast.Not):
            res = everything - sat(g.arg)
        elif isinstance(g, ast.And):
            res = sat(g.left) & sat(g.right)
        elif isinstance(g, ast.Or):
            res = sat(g.left) | sat(g.right)
        elif isinstance(g, (ast.Until, ast.Since)):
            if g.interval is None:
                raise TypeError("untimed modality in an MTL formula")
            res = frozenset(
                _modal_scan(w, g.interval, sat(g.left), sat(g.right), isinstance(g, ast.Until))
            )
        elif isinstance(g, (ast.Future, ast.Past)):
            if g.interval is None:
                raise TypeError("untimed modality in an MTL formula")
            res = frozenset(_modal_scan(w, g.interval, None, sat(g.arg), isinstance(g, ast.Future)))
        else:
            raise TypeError(f"{type(g).__name__} is not an MTL node")
        cache[key] = res
        return res

    return sat(f)


def _variables(f: ast.Formula) -> list[str]:
    names = set()
    for g in ast.walk(f):
        if isinstance(g, ast.Freeze):
            names.add(g.var)
        elif isinstance(g, ast.Constraint):
            names.add(g.cmp.var)
        elif isinstance(g, ast.Event):
            names |= g.guard.variables()
        elif isinstance(g, (ast.Next, ast.Prev)):
            names |= g.event.guard.variables()
    return sorted(names)


def positions_freeze(
    w: TimedWord, f: ast.Formula, nu: Mapping[str, Fraction] | None = None
) -> frozenset[int]:
    """Positions where a TPTL or TTL formula holds under valuation nu (default nu0)."""
    nu = dict(nu or {})
    names = _variables(f)
    values = sorted({Fraction(0), *w.times, *(nu.get(x, 0) for x in names)})
    envs = list(itertools.product(values, repeat=len(names)))
    slot = {x: k for k, x in enumerate(names)}
    n = len(w)
    rows = [(i, e) for i in w.positions() for e in envs]
    everything = frozenset(rows)
    cache: dict[int, frozenset] = {}

    def as_nu(env):
        return {x: env[k] for x, k in slot.items()}

    def theta(i, env, ev: ast.Event) -> bool:
        return w.letter(i) == ev.letter and eval_guard(as_nu(env), w.time(i), ev.guard)

    def sat(g: ast.Formula) -> frozenset:
        key = id(g)
        if key in cache:
            return cache[key]
        if isinstance(g, ast.Top):
            res = everything
        elif isinstance(g, ast.Atom):
            res = frozenset(r for r in rows if w.letter(r[0]) == g.name)
        elif isinstance(g, ast.Constraint):
            res = frozenset(r for r in rows if g.cmp.holds(as_nu(r[1]), w.time(r[0])))
        elif isinstance(g, ast.Event):
            res = frozenset(r for r in rows if theta(r[0], r[1], g))
        elif isinstance(g, ast.Not):
            res = everything - sat(g.arg)
        elif isinstance(g, ast.And):
            res = sat(g.left) & sat(g.right)
        elif isinstance(g, ast.Or):
            res = sat(g.left) | sat(g.right)
        elif isinstance(g, ast.Freeze):
            inner = sat(g.arg)
            k = slot[g.var]
            res = frozenset(
                (i, e) for i, e in rows if (i, e[:k] + (w.time(i),) + e[k + 1:]) in inner
            )
        elif isinstance(g, ast.TIMED_MODAL):
            future = isinstance(g, (ast.Until, ast.Future))
            binary = isinstance(g, (ast.Until, ast.Since))
            right = sat(g.right if binary else g.arg)
            left = sat(g.left) if binary else None
            out = set()
            for e in envs:
                r_set = {i for i in w.positions() if (i, e) in right}
                l_set = None if left is None else {i for i in w.positions() if (i, e) in left}
                out |= {(i, e) for i in _modal_scan(w, g.interval, l_set, r_set, future)}
            res = frozenset(out)
        elif isinstance(g, ast.Start):
            inner = sat(g.arg)
            res = frozenset((i, e) for i, e in rows if (1, e) in inner)
        elif isinstance(g, ast.End):
            inner = sat(g.arg)
            res = frozenset((i, e) for i, e in rows if (n, e) in inner)
        elif isinstance(g, (ast.Next, ast.Prev)):
            inner = sat(g.arg)
            forward = isinstance(g, ast.Next)
            out = set()
            for e in envs:
                # nearest matching position seen so far, sweeping against the jump direction
                nearest = None
                order = range(n, 0, -1) if forward else range(1, n + 1)
                for i in order:
                    if nearest is not None and (nearest, e) in inner:
                        out.add((i, e))
                    if theta(i, e, g.event):
                        nearest = i
            res = frozenset(out)
        else:
            raise TypeError(f"cannot evaluate {type(g).__name__}")
        cache[key] = res
        return res

    start_env = tuple(nu.get(x, Fraction(0)) for x in names)
    table = sat(f)
    return frozenset(i for i in w.positions() if (i, start_env) in table)
