"""Reference evaluators: direct recursive transcriptions of the pointwise strict semantics."""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Mapping

from ..logic import ast
from ..logic.guards import eval_guard
from ..words import TimedWord

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class NotAnchoredError(ValueError):
    """Language membership for a freeze logic needs a word starting at time 0."""


class UnsupportedNode(TypeError):
    pass


def _freeze_nu(nu: Mapping[str, Fraction]) -> tuple:
    # 0-valued entries are dropped so that nu0 == {} == {x: 0}
    return tuple(sorted((k, v) for k, v in nu.items() if v != 0))


def _require_anchor(w: TimedWord) -> None:
    if not w.anchored_zero:
        raise NotAnchoredError(
            f"word starts at time {w.time(1)}; membership with the initial valuation needs time 0"
        )


class MTLEvaluator:
    """Memoizing evaluator for one word; reuse it across positions and formulas."""

    def __init__(self, w: TimedWord):
        self.w = w
        self.memo: dict[tuple[int, int], bool] = {}
        # memo keys use object identity; keep the objects alive so ids stay unique
        self._alive: dict[int, ast.Formula] = {}

    def holds(self, i: int, f: ast.Formula) -> bool:
        key = (id(f), i)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._holds(i, f)
            self.memo[key] = hit
            self._alive[id(f)] = f
        return hit

    def _holds(self, i: int, f: ast.Formula) -> bool:
        w = self.w
        if isinstance(f, ast.Top):
            return True
        if isinstance(f, ast.Atom):
            return w.letter(i) == f.name
        if isinstance(f, ast.Not):
            return not self.holds(i, f.arg)
        if isinstance(f, ast.And):
            return self.holds(i, f.left) and self.holds(i, f.right)
        if isinstance(f, ast.Or):
            return self.holds(i, f.left) or self.holds(i, f.right)
        if isinstance(f, ast.TIMED_MODAL):
            if f.interval is None:
                raise UnsupportedNode("untimed modality in an MTL formula")
            if isinstance(f, ast.Until):
                return self._until(i, f.interval, f.left, f.right, +1)
            if isinstance(f, ast.Since):
                return self._until(i, f.interval, f.left, f.right, -1)
            if isinstance(f, ast.Future):
                return self._until(i, f.interval, None, f.arg, +1)
            return self._until(i, f.interval, None, f.arg, -1)
        raise UnsupportedNode(f"{type(f).__name__} is not an MTL node")

    def _until(self, i, interval, left, right, step) -> bool:
        """U_I (step=+1) or S_I (step=-1); left=None means top."""
        w = self.w
        ti = w.time(i)
        j = i + step
        while 1 <= j <= len(w):
            d = w.time(j) - ti if step > 0 else ti - w.time(j)
            if interval.contains(d) and self.holds(j, right):
                return True
            if left is not None and not self.holds(j, left):
                return False
            j += step
        return False


def eval_mtl(w: TimedWord, i: int, f: ast.Formula) -> bool:
    w.check_position(i)
    return MTLEvaluator(w).holds(i, f)


def lang_member_mtl(w: TimedWord, f: ast.Formula) -> bool:
    return eval_mtl(w, 1, f)


def satisfying_positions_mtl(w: TimedWord, f: ast.Formula) -> frozenset[int]:
    ev = MTLEvaluator(w)
    return frozenset(i for i in w.positions() if ev.holds(i, f))


class FreezeEvaluator:
    """Evaluator for TPTL and TTL formulas (they share booleans and freeze)."""

    def __init__(self, w: TimedWord):
        self.w = w
        self.memo: dict[tuple, bool] = {}
        self._alive: dict[int, ast.Formula] = {}

    def holds(self, i: int, nu: Mapping[str, Fraction], f: ast.Formula) -> bool:
        key = (id(f), i, _freeze_nu(nu))
        hit = self.memo.get(key)
        if hit is None:
            hit = self._holds(i, nu, f)
            self.memo[key] = hit
            self._alive[id(f)] = f
        return hit

    def event_holds(self, j: int, nu, ev: ast.Event) -> bool:
        return self.w.letter(j) == ev.letter and eval_guard(nu, self.w.time(j), ev.guard)

    def _holds(self, i, nu, f) -> bool:
        w = self.w
        if isinstance(f, ast.Top):
            return True
        if isinstance(f, ast.Atom):
            return w.letter(i) == f.name
        if isinstance(f, ast.Constraint):
            return f.cmp.holds(nu, w.time(i))
        if isinstance(f, ast.Event):
            return self.event_holds(i, nu, f)
        if isinstance(f, ast.Not):
            return not self.holds(i, nu, f.arg)
        if isinstance(f, ast.And):
            return self.holds(i, nu, f.left) and self.holds(i, nu, f.right)
        if isinstance(f, ast.Or):
            return self.holds(i, nu, f.left) or self.holds(i, nu, f.right)
        if isinstance(f, ast.Freeze):
            inner = dict(nu)
            inner[f.var] = w.time(i)
            return self.holds(i, inner, f.arg)
        if isinstance(f, ast.TIMED_MODAL):
            step = 1 if isinstance(f, (ast.Until, ast.Future)) else -1
            left = f.left if isinstance(f, (ast.Until, ast.Since)) else None
            right = f.right if isinstance(f, (ast.Until, ast.Since)) else f.arg
            j = i + step
            while 1 <= j <= len(w):
                d = w.time(j) - w.time(i) if step > 0 else w.time(i) - w.time(j)
                in_iv = f.interval is None or f.interval.contains(d)
                if in_iv and self.holds(j, nu, right):
                    return True
                if left is not None and not self.holds(j, nu, left):
                    return False
                j += step
            return False
        if isinstance(f, ast.Start):
            return self.holds(1, nu, f.arg)
        if isinstance(f, ast.End):
            return self.holds(len(w), nu, f.arg)
        if isinstance(f, (ast.Next, ast.Prev)):
            j = self.jump(i, nu, f)
            return j is not None and self.holds(j, nu, f.arg)
        raise UnsupportedNode(f"cannot evaluate {type(f).__name__}")

    def jump(self, i: int, nu, f: ast.Next | ast.Prev) -> int | None:
        """Landing position of X_theta / Y_theta from i, or None."""
        w = self.w
        step = 1 if isinstance(f, ast.Next) else -1
        j = i + step
        while 1 <= j <= len(w):
            if self.event_holds(j, nu, f.event):
                return j
            j += step
        return None


def eval_tptl(w: TimedWord, i: int, nu: Mapping[str, Fraction] | None, f: ast.Formula) -> bool:
    w.check_position(i)
    for g in ast.walk(f):
        if isinstance(g, (ast.Event, ast.Start, ast.End, ast.Next, ast.Prev)):
            raise UnsupportedNode(f"{type(g).__name__} is not a TPTL node")
    return FreezeEvaluator(w).holds(i, nu or {}, f)


def eval_ttl(w: TimedWord, i: int, nu: Mapping[str, Fraction] | None, f: ast.Formula) -> bool:
    w.check_position(i)
    for g in ast.walk(f):
        if isinstance(g, ast.TIMED_MODAL) or isinstance(g, ast.Constraint):
            raise UnsupportedNode(f"{type(g).__name__} is not a TTL node")
    return FreezeEvaluator(w).holds(i, nu or {}, f)


def lang_member_tptl(w: TimedWord, f: ast.Formula) -> bool:
    _require_anchor(w)
    return eval_tptl(w, 1, {}, f)


def lang_member_ttl(w: TimedWord, f: ast.Formula) -> bool:
    _require_anchor(w)
    return eval_ttl(w, 1, {}, f)
