"""Syntax trees for MTL[U,S], TPTL[U,S] and TTL[X,Y].

Boolean nodes are shared by the three logics. Timed Until/Since/F/P carry an
Interval; the TPTL (untimed) versions carry ``interval=None``. Every node gets
a fresh ``node_id`` at construction; it is ignored by ``==`` and preserved by
``dataclasses.replace``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, fields
from typing import Iterator, Optional

from .guards import Comparison, Guard, TT
from .intervals import Interval

_ids = itertools.count(1)


def fresh_id() -> int:
    return next(_ids)


@dataclass(frozen=True)
class Formula:
    node_id: int = field(default_factory=fresh_id, compare=False, repr=False, kw_only=True)

    def children(self) -> tuple["Formula", ...]:
        return ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Until(Formula):
    interval: Optional[Interval]
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Since(Formula):
    interval: Optional[Interval]
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Future(Formula):
    interval: Optional[Interval]
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Past(Formula):
    interval: Optional[Interval]
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Freeze(Formula):
    var: str
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Constraint(Formula):
    """TPTL guard atom, a single comparison."""

    cmp: Comparison


@dataclass(frozen=True)
class Event(Formula):
    """TTL guarded event (a, g), usable on its own or as the label of X/Y."""

    letter: str
    guard: Guard = TT


@dataclass(frozen=True)
class Start(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class End(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Next(Formula):
    event: Event
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Prev(Formula):
    event: Event
    arg: Formula

    def children(self):
        return (self.arg,)


TIMED_MODAL = (Until, Since, Future, Past)
TTL_MODAL = (Start, End, Next, Prev)
MODAL = TIMED_MODAL + TTL_MODAL


def false() -> Formula:
    """The canonical false subformula, (not (top))."""
    return Not(Top())


def is_false(f: Formula) -> bool:
    return isinstance(f, Not) and isinstance(f.arg, Top)


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction; Top for no parts."""
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(*parts: Formula) -> Formula:
    if not parts:
        return false()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal; shared subtrees are visited once per occurrence."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def walk_unique(f: Formula) -> Iterator[Formula]:
    """Each distinct node object once, even when subtrees are shared."""
    seen: set[int] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(reversed(node.children()))


def walk_with_parents(f: Formula) -> Iterator[tuple[Formula, tuple[Formula, ...]]]:
    """Pre-order traversal yielding (node, strict ancestors root-first)."""
    stack = [(f, ())]
    while stack:
        node, anc = stack.pop()
        yield node, anc
        below = anc + (node,)
        for child in reversed(node.children()):
            stack.append((child, below))


def renumber(f: Formula) -> Formula:
    """Rebuild as a tree with fresh node ids (un-shares a DAG)."""
    kids = f.children()
    if isinstance(f, (Not, Freeze, Start, End, Future, Past, Next, Prev)):
        return _rebuild(f, arg=renumber(kids[0]))
    if isinstance(f, (And, Or, Until, Since)):
        return _rebuild(f, left=renumber(kids[0]), right=renumber(kids[1]))
    return _rebuild(f)


def _rebuild(f: Formula, **changes) -> Formula:
    values = {fl.name: getattr(f, fl.name) for fl in fields(f) if fl.name != "node_id"}
    values.update(changes)
    return type(f)(**values)


def size(f: Formula) -> int:
    """Tree size (shared subtrees counted per occurrence)."""
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        key = id(g)
        if key not in memo:
            memo[key] = 1 + sum(go(c) for c in g.children())
        return memo[key]

    return go(f)


def dag_size(f: Formula) -> int:
    seen: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        stack.extend(g.children())
    return len(seen)
