"""Differential and node-level validation of the TTL compiler."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..logic import ast
from ..logic.analysis import classify_formula
from ..logic.guards import eval_guard
from ..logic.syntax import print_formula
from ..semantics.evaluate import FreezeEvaluator, MTLEvaluator
from ..words import TimedWord
from .parsing import compute_pos_val
from .translate import DEFAULT, LITERAL, Translator


@dataclass
class Counterexample:
    word: TimedWord
    formula: ast.Formula
    ttl_value: bool
    beta_value: bool
    node: str = ""

    def __str__(self) -> str:
        return (
            f"word {self.word}: ttl={self.ttl_value} beta={self.beta_value} "
            f"formula {print_formula(self.formula)}{' at ' + self.node if self.node else ''}"
        )


@dataclass
class DifferentialReport:
    checked: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    non_unary: int = 0
    leaks: int = 0
    leaks_without_zero_guard: int = 0

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.non_unary == 0 and self.leaks_without_zero_guard == 0


def _has_zero_nonstrict_guard(f: ast.Formula) -> bool:
    for g in ast.walk(f):
        ev = g.event if isinstance(g, (ast.Next, ast.Prev)) else g if isinstance(g, ast.Event) else None
        if ev is None:
            continue
        if any(a.c == 0 and a.op in ("<=", ">=", "=") for a in ev.guard.atoms):
            return True
    return False


def _first_bad_node(w, f, tr: Translator) -> str:
    """Deepest-first search for a node whose beta disagrees with its TTL value."""
    info = compute_pos_val(w, f)
    fe = FreezeEvaluator(w)
    me = MTLEvaluator(w)
    for node in reversed(list(ast.walk(f))):
        p = info.position(node)
        truth = p is not None and fe.holds(p, info.valuation(node), node)
        got = p is not None and me.holds(p, tr.beta(node))
        if truth != got:
            return f"{type(node).__name__} #{node.node_id} at position {p}"
    return ""


def differential_check(
    f: ast.Formula,
    words: Iterable[TimedWord],
    mode: str = DEFAULT,
    report: DifferentialReport | None = None,
) -> DifferentialReport:
    """eval_ttl at (1, nu0) against eval_mtl of beta at 1, word by word."""
    report = report or DifferentialReport()
    tr = Translator(f, mode)
    b = tr.beta()
    if not classify_formula(b).unary:
        report.non_unary += 1
    if tr.report.punctuality_leak:
        report.leaks += 1
        if not _has_zero_nonstrict_guard(f):
            report.leaks_without_zero_guard += 1
    for w in words:
        if not w.anchored_zero:
            raise ValueError("differential_check needs zero-anchored words")
        report.checked += 1
        lhs = FreezeEvaluator(w).holds(1, {}, f)
        rhs = MTLEvaluator(w).holds(1, b)
        if lhs != rhs:
            report.counterexamples.append(Counterexample(w, f, lhs, rhs, _first_bad_node(w, f, tr)))
    return report


@dataclass
class Item:
    check: str           # valuation, guard or alpha
    word: TimedWord
    node: str
    detail: str
    reverified: bool = False

    def __str__(self) -> str:
        tag = "re-verified" if self.reverified else "NOT re-verified"
        return f"{self.check} {self.node} on {self.word}: {self.detail} [{tag} under default mode]"


@dataclass
class NodeCheckReport:
    valuation: int = 0
    guard: int = 0
    alpha: int = 0
    failures: list[Item] = field(default_factory=list)   # default-mode failures
    patched: list[Item] = field(default_factory=list)    # literal mismatches fixed by the patches

    @property
    def ok(self) -> bool:
        return not self.failures and all(i.reverified for i in self.patched)


def _guarded_nodes(f):
    for node in ast.walk(f):
        if isinstance(node, (ast.Next, ast.Prev)):
            yield node, node.event
        elif isinstance(node, ast.Event):
            yield node, node


def node_checks(
    f: ast.Formula, words: Iterable[TimedWord], report: NodeCheckReport | None = None
) -> NodeCheckReport:
    """val/anc identity, CF agreement at every position, alpha = {pos}."""
    report = report or NodeCheckReport()
    default = Translator(f, DEFAULT)
    literal = Translator(f, LITERAL)
    variables = sorted({a.var for _, ev in _guarded_nodes(f) for a in ev.guard.atoms}
                       | {g.var for g in ast.walk(f) if isinstance(g, ast.Freeze)})
    for w in words:
        info = compute_pos_val(w, f)
        anc = info.ancestry
        dm, lm = MTLEvaluator(w), MTLEvaluator(w)
        for node in ast.walk(f):
            label = f"{type(node).__name__} #{node.node_id}"
            p = info.position(node)
            # val(eta)(x) is the timestamp at pos(anc_x(eta))
            if p is not None:
                nu = info.valuation(node)
                for x in variables:
                    report.valuation += 1
                    expected = w.time(info.position(anc.anc(node, x)))
                    if nu.get(x, 0) != expected:
                        report.failures.append(Item("valuation", w, label, f"val({x})={nu.get(x, 0)} expected {expected}"))
            # alpha characterizes exactly {pos}
            want = set() if p is None else {p}
            report.alpha += 1
            got = {i for i in w.positions() if dm.holds(i, default.alpha(node))}
            if got != want:
                report.failures.append(Item("alpha", w, label, f"alpha holds at {sorted(got)}, pos is {p}"))
            lit = {i for i in w.positions() if lm.holds(i, literal.alpha(node))}
            if lit != want:
                report.patched.append(
                    Item("alpha", w, label, f"literal alpha holds at {sorted(lit)}, pos is {p}", got == want)
                )
        for node, ev in _guarded_nodes(f):
            if info.position(node) is None:
                continue
            nu = info.valuation(node)
            label = f"{type(node).__name__} #{node.node_id}"
            cf_d = default.cf(ev, node)
            cf_l = literal.cf(ev, node)
            for i in w.positions():
                report.guard += 1
                truth = w.letter(i) == ev.letter and eval_guard(nu, w.time(i), ev.guard)
                d_val = dm.holds(i, cf_d)
                if d_val != truth:
                    report.failures.append(Item("guard", w, label, f"CF={d_val} theta={truth} at {i}"))
                if lm.holds(i, cf_l) != truth:
                    report.patched.append(
                        Item("guard", w, label, f"literal CF={not truth} theta={truth} at {i}", d_val == truth)
                    )
    return report
