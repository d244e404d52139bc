"""Deterministic positions and valuations of TTL subformulas on a given word."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..logic import ast
from ..logic.guards import eval_guard
from ..semantics.evaluate import NotAnchoredError
from ..words import TimedWord


class SharedSubtreeError(ValueError):
    """Subformula occurrences must be distinct objects with distinct node ids."""


@dataclass(frozen=True)
class Ancestry:
    """Strict ancestors of every node plus the root, for anc_x lookups."""

    root: ast.Formula
    nodes: dict[int, ast.Formula]
    parents: dict[int, Optional[ast.Formula]]
    ancestors: dict[int, tuple[ast.Formula, ...]]

    @classmethod
    def of(cls, f: ast.Formula) -> "Ancestry":
        nodes, parents, ancestors = {}, {}, {}
        for node, anc in ast.walk_with_parents(f):
            if node.node_id in nodes:
                raise SharedSubtreeError(
                    "formula shares a subtree; rebuild it with ast.renumber first"
                )
            nodes[node.node_id] = node
            parents[node.node_id] = anc[-1] if anc else None
            ancestors[node.node_id] = anc
        return cls(f, nodes, parents, ancestors)

    def anc(self, node: ast.Formula, var: str) -> ast.Formula:
        """Nearest strict ancestor freezing var, else the root."""
        for a in reversed(self.ancestors[node.node_id]):
            if isinstance(a, ast.Freeze) and a.var == var:
                return a
        return self.root


@dataclass
class ParseInfo:
    word: TimedWord
    ancestry: Ancestry
    pos: dict[int, Optional[int]]
    val: dict[int, dict[str, Fraction]]

    def position(self, node: ast.Formula) -> Optional[int]:
        return self.pos[node.node_id]

    def valuation(self, node: ast.Formula) -> Optional[dict[str, Fraction]]:
        return self.val.get(node.node_id)


def _event_at(w: TimedWord, j: int, nu, ev: ast.Event) -> bool:
    return w.letter(j) == ev.letter and eval_guard(nu, w.time(j), ev.guard)


def landing(w: TimedWord, i: int, nu, node: ast.Next | ast.Prev) -> Optional[int]:
    step = 1 if isinstance(node, ast.Next) else -1
    j = i + step
    while 1 <= j <= len(w):
        if _event_at(w, j, nu, node.event):
            return j
        j += step
    return None


def compute_pos_val(w: TimedWord, f: ast.Formula, require_anchor: bool = True) -> ParseInfo:
    """pos and val for every node; pos is None for an unreachable node."""
    if require_anchor and not w.anchored_zero:
        raise NotAnchoredError("unique parsing uses the initial valuation and needs time 0 first")
    anc = Ancestry.of(f)
    pos: dict[int, Optional[int]] = {}
    val: dict[int, dict[str, Fraction]] = {}
    stack: list[tuple[ast.Formula, Optional[int], Optional[dict]]] = [(f, 1, {})]
    while stack:
        node, i, nu = stack.pop()
        pos[node.node_id] = i
        if i is not None:
            val[node.node_id] = nu
        for child in node.children():
            if i is None:
                stack.append((child, None, None))
            elif isinstance(node, ast.Start):
                stack.append((child, 1, nu))
            elif isinstance(node, ast.End):
                stack.append((child, len(w), nu))
            elif isinstance(node, ast.Freeze):
                inner = dict(nu)
                inner[node.var] = w.time(i)
                stack.append((child, i, inner))
            elif isinstance(node, (ast.Next, ast.Prev)):
                j = landing(w, i, nu, node)
                stack.append((child, j, nu if j is not None else None))
            elif isinstance(node, (ast.Not, ast.And, ast.Or)):
                stack.append((child, i, nu))
            else:
                raise TypeError(f"{type(node).__name__} is not a TTL node")
    return ParseInfo(w, anc, pos, val)


def reach_set(w: TimedWord, f: ast.Formula, require_anchor: bool = True) -> frozenset[int]:
    """Positions some subformula is evaluated at."""
    info = compute_pos_val(w, f, require_anchor)
    return frozenset(p for p in info.pos.values() if p is not None)
