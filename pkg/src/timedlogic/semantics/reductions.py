"""Rewrites that are sound on instantaneous (all times 0) or unitary (distinct times in (0,1)) words.

A modality whose interval can never be met collapses to false. With
``preserve_depth`` (the default) the false is written as
``(and (not (top)) <modality with the reduced interval>)`` so the modal depth
of the input survives; with ``preserve_depth=False`` it is the bare
``(not (top))``.
"""

from __future__ import annotations

from ..logic import ast
from ..logic.analysis import map_children
from ..logic.intervals import UNIT_OPEN, ZERO_ZERO, Interval


def _rebuild_modal(f, interval, kids):
    if isinstance(f, (ast.Until, ast.Since)):
        return type(f)(interval, kids[0], kids[1])
    return type(f)(interval, kids[0])


def _collapse(f, interval, kids, preserve_depth: bool) -> ast.Formula:
    if preserve_depth:
        return ast.And(ast.false(), _rebuild_modal(f, interval, kids))
    return ast.false()


def reduce_instantaneous(f: ast.Formula, preserve_depth: bool = True) -> ast.Formula:
    """MTL or TPTL input; output is MTL using only the interval [0,0]."""

    def go(g: ast.Formula) -> ast.Formula:
        if isinstance(g, ast.Constraint):
            return ast.Top() if g.cmp.holds({}, 0) else ast.false()
        if isinstance(g, ast.Freeze):
            return go(g.arg)
        if isinstance(g, ast.TIMED_MODAL):
            kids = [go(c) for c in g.children()]
            if g.interval is None or g.interval.contains(0):
                return _rebuild_modal(g, ZERO_ZERO, kids)
            return _collapse(g, ZERO_ZERO, kids, preserve_depth)
        if isinstance(g, (ast.Event, ast.Start, ast.End, ast.Next, ast.Prev)):
            raise TypeError("TTL formulas are not reduced")
        return map_children(g, go)

    return go(f)


def unit_interval_inside(interval: Interval) -> bool:
    """(0,1) is a subset of the interval."""
    return interval.low == 0 and (interval.high is None or interval.high >= 1)


def reduce_unitary(f: ast.Formula, preserve_depth: bool = True) -> ast.Formula:
    """MTL input; output uses only the interval (0,1)."""

    def go(g: ast.Formula) -> ast.Formula:
        if isinstance(g, ast.TIMED_MODAL):
            if g.interval is None:
                raise TypeError("untimed modality in an MTL formula")
            kids = [go(c) for c in g.children()]
            if unit_interval_inside(g.interval):
                return _rebuild_modal(g, UNIT_OPEN, kids)
            return _collapse(g, UNIT_OPEN, kids, preserve_depth)
        if isinstance(g, (ast.Freeze, ast.Constraint)):
            raise TypeError("reduce_unitary takes MTL formulas only")
        return map_children(g, go)

    return go(f)
