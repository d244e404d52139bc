"""Syntactic measurements: fragment classification, modal depth/count, truncation."""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .intervals import Interval, make_interval


@dataclass(frozen=True)
class Fragment:
    unary: bool
    bounded: bool
    non_punctual: bool
    max_constant: int

    def name(self) -> str:
        """Smallest named MTL family containing the formula."""
        base = "MITL" if self.non_punctual else "MTL"
        if self.bounded:
            base = "B" + base
        return base + ("[F,P]" if self.unary else "[U,S]")

    def __str__(self) -> str:
        return (
            f"unary={str(self.unary).lower()} bounded={str(self.bounded).lower()} "
            f"non_punctual={str(self.non_punctual).lower()} max_constant={self.max_constant}"
        )


def _intervals(f: ast.Formula):
    for g in ast.walk_unique(f):
        if isinstance(g, ast.TIMED_MODAL) and g.interval is not None:
            yield g.interval


def classify_formula(f: ast.Formula) -> Fragment:
    unary = True
    for g in ast.walk_unique(f):
        if isinstance(g, (ast.Until, ast.Since)):
            unary = False
    ivs = list(_intervals(f))
    return Fragment(
        unary=unary,
        bounded=all(iv.bounded for iv in ivs),
        non_punctual=not any(iv.singular for iv in ivs),
        max_constant=max((c for iv in ivs for c in iv.constants()), default=0),
    )


def modal_depth(f: ast.Formula) -> int:
    """Maximum nesting of modal operators; booleans and freeze are free."""
    memo: dict[int, int] = {}

    def go(g: ast.Formula) -> int:
        key = id(g)
        if key in memo:
            return memo[key]
        inner = max((go(c) for c in g.children()), default=0)
        memo[key] = inner + (1 if isinstance(g, ast.MODAL) else 0)
        return memo[key]

    return go(f)


def modal_count(f: ast.Formula) -> int:
    return sum(1 for g in ast.walk(f) if isinstance(g, ast.MODAL))


def freeze_variables(f: ast.Formula) -> frozenset[str]:
    return frozenset(g.var for g in ast.walk(f) if isinstance(g, ast.Freeze))


def reuses_freeze_variable(f: ast.Formula) -> bool:
    """True when some variable is frozen more than once anywhere in f."""
    seen: set[str] = set()
    for g in ast.walk(f):
        if isinstance(g, ast.Freeze):
            if g.var in seen:
                return True
            seen.add(g.var)
    return False


def guard_constants(f: ast.Formula) -> list[int]:
    out = []
    for g in ast.walk(f):
        if isinstance(g, ast.Constraint):
            out.append(g.cmp.c)
        elif isinstance(g, ast.Event):
            out.extend(a.c for a in g.guard.atoms)
        elif isinstance(g, (ast.Next, ast.Prev)):
            out.extend(a.c for a in g.event.guard.atoms)
    return out


def tptl_fragment(f: ast.Formula) -> dict:
    """Operators and variables used by a TPTL formula."""
    ops = sorted({type(g).__name__ for g in ast.walk(f) if isinstance(g, ast.TIMED_MODAL)})
    return {
        "modalities": ops,
        "future_only": set(ops) <= {"Future"},
        "freeze_variables": sorted(freeze_variables(f)),
    }


def _truncate_interval(iv: Interval, n: int) -> Interval | None:
    low = min(iv.low, n)
    high = n if iv.high is None or iv.high > n else iv.high
    return make_interval(low, high, iv.low_open, iv.high_open)


def truncate_constants(f: ast.Formula, n: int) -> ast.Formula:
    """Cap every interval constant (and inf) at n; emptied modalities become false."""
    if n < 0:
        raise ValueError("truncation bound must be non-negative")
    if isinstance(f, ast.TIMED_MODAL) and f.interval is not None:
        iv = _truncate_interval(f.interval, n)
        if iv is None:
            return ast.false()
        kids = [truncate_constants(c, n) for c in f.children()]
        if isinstance(f, (ast.Until, ast.Since)):
            return type(f)(iv, kids[0], kids[1])
        return type(f)(iv, kids[0])
    return map_children(f, lambda c: truncate_constants(c, n))


def map_children(f: ast.Formula, fn) -> ast.Formula:
    """Rebuild f with fn applied to each child; leaves are returned as-is."""
    kids = f.children()
    if not kids:
        return f
    if isinstance(f, (ast.And, ast.Or, ast.Until, ast.Since)):
        return ast._rebuild(f, left=fn(kids[0]), right=fn(kids[1]))
    return ast._rebuild(f, arg=fn(kids[0]))
