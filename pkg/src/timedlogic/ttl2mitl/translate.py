"""Compile TTL[X,Y] formulas into unary MTL (F/P only) formulas.

alpha(eta) holds exactly at the deterministic position of eta, CF(theta, eta)
holds exactly where theta would hold under eta's valuation, and beta(eta)
holds at pos(eta) exactly when eta is true there.

Modes
  default   position-strict, time-unconstrained F/P ([0,inf)) everywhere;
            guard atoms are translated for anchors on either side of the
            current position, including the current position itself.
  literal   the textbook forms: first/last position via (0,inf), the
            one-sided guard table only.

Guard translation, for a normalized atom on variable x with anchor
A = anc_x(eta) and e = |tau_A - tau_i| >= 0:
  - same side    (anchor later for x-T atoms, earlier for T-x atoms):
                 F or P over {e : e ~ c}
  - here         anchor at the current position, when 0 ~ c: alpha(A)
  - other side   the opposite modality over {e : -e ~ c}
Only the first part exists in literal mode.

Also in default mode only, the child of an SP/EP node that sits below some
X/Y gets the extra conjunct "the SP/EP node has a position somewhere", so
that alpha is empty when the jump never happens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..logic import ast
from ..logic.analysis import classify_formula
from ..logic.guards import Comparison, Guard, X_MINUS_T, expand_equalities, normalize_guard
from ..logic.intervals import Interval, ZERO_INF, POS_INF, make_interval
from .parsing import Ancestry

DEFAULT = "default"
LITERAL = "literal"


class PunctualityError(ValueError):
    """Raised in strict-punctuality mode for guards that need a singular interval."""


@dataclass
class TranslationReport:
    mode: str
    strict_punctuality: bool = False
    here_patch: int = 0
    counter_patch: int = 0
    bottom_patch: int = 0
    punctuality_leak: int = 0
    leak_atoms: list[str] = field(default_factory=list)

    def lines(self, beta: Optional[ast.Formula] = None, source: Optional[ast.Formula] = None) -> list[str]:
        out = [f"mode: {self.mode}"]
        if self.mode == LITERAL:
            out.append("alpha(root): (not (P (0,inf) (top))) as written in the textbook construction")
        else:
            out.append("alpha(root): (not (P [0,inf) (top)))")
        if beta is not None:
            frag = classify_formula(beta)
            out.append(f"fragment: {frag.name()} {frag}")
            out.append(f"beta size: tree={ast.size(beta)} dag={ast.dag_size(beta)}")
        if source is not None:
            out.append(f"source size: {ast.size(source)}")
        out.append(f"here_patch: {self.here_patch}")
        out.append(f"counter_patch: {self.counter_patch}")
        out.append(f"bottom_patch: {self.bottom_patch}")
        out.append(f"punctuality_leak: {self.punctuality_leak}")
        for a in self.leak_atoms:
            out.append(f"leak_atom: {a}")
        return out


def _same_side(op: str, c: int) -> Optional[Interval]:
    """{e >= 0 : e op c} for c >= 0."""
    if op == "<":
        return make_interval(0, c, False, True)
    if op == "<=":
        return Interval(0, c)
    if op == ">":
        return Interval(c, None, True, True)
    if op == ">=":
        return Interval(c, None, False, True)
    raise ValueError(f"operator {op!r} must be expanded first")


def _other_side(op: str, c: int) -> Optional[Interval]:
    """{e >= 0 : -e op c} for c >= 0."""
    if op == "<":
        return ZERO_INF if c > 0 else POS_INF
    if op == "<=":
        return ZERO_INF
    if op == ">":
        return None
    if op == ">=":
        return Interval(0, 0) if c == 0 else None
    raise ValueError(f"operator {op!r} must be expanded first")


def _holds_at_zero(op: str, c: int) -> bool:
    return {"<": 0 < c, "<=": 0 <= c, ">": 0 > c, ">=": 0 >= c}[op]


class Translator:
    def __init__(self, f: ast.Formula, mode: str = DEFAULT, strict_punctuality: bool = False):
        if mode not in (DEFAULT, LITERAL):
            raise ValueError(f"unknown mode {mode!r}")
        self.root = f
        self.mode = mode
        self.ancestry = Ancestry.of(f)
        self.report = TranslationReport(mode, strict_punctuality)
        self._alpha: dict[int, ast.Formula] = {}
        self._cf: dict[int, ast.Formula] = {}
        self._c: dict[tuple, ast.Formula] = {}
        self._beta: dict[int, ast.Formula] = {}
        if strict_punctuality:
            self._reject_punctual_guards()

    # F/P used for "somewhere later/earlier" in alpha
    @property
    def _step(self) -> Interval:
        return POS_INF if self.mode == LITERAL else ZERO_INF

    def first_position(self) -> ast.Formula:
        return ast.Not(ast.Past(self._step, ast.Top()))

    def last_position(self) -> ast.Formula:
        return ast.Not(ast.Future(self._step, ast.Top()))

    def _reject_punctual_guards(self) -> None:
        for g in ast.walk(self.root):
            ev = g.event if isinstance(g, (ast.Next, ast.Prev)) else g if isinstance(g, ast.Event) else None
            if ev is None:
                continue
            for atom in normalize_guard(ev.guard).atoms:
                if atom.c == 0 and atom.op in ("<=", ">=", "="):
                    raise PunctualityError(f"guard {atom} forces a singular interval [0,0]")

    # -- alpha ------------------------------------------------------------
    def alpha(self, node: ast.Formula) -> ast.Formula:
        key = node.node_id
        if key in self._alpha:
            return self._alpha[key]
        parent = self.ancestry.parents[key]
        if parent is None:
            res = self.first_position()
        elif isinstance(parent, (ast.Start, ast.End)):
            res = self.first_position() if isinstance(parent, ast.Start) else self.last_position()
            if self.mode == DEFAULT and self._may_be_bottom(parent):
                # the jump target exists only if the jumping node has a position
                pa = self.alpha(parent)
                res = ast.And(res, ast.Or(pa, ast.Or(ast.Past(ZERO_INF, pa), ast.Future(ZERO_INF, pa))))
                self.report.bottom_patch += 1
        elif isinstance(parent, (ast.Not, ast.And, ast.Or, ast.Freeze)):
            res = self.alpha(parent)
        elif isinstance(parent, (ast.Next, ast.Prev)):
            cf = self.cf(parent.event, parent)
            back = ast.Past if isinstance(parent, ast.Next) else ast.Future
            seen = back(self._step, self.alpha(parent))
            res = ast.conj(cf, seen, ast.Not(back(self._step, ast.And(cf, seen))))
        else:
            raise TypeError(f"{type(parent).__name__} cannot have children in TTL")
        self._alpha[key] = res
        return res

    def _may_be_bottom(self, node: ast.Formula) -> bool:
        return any(isinstance(a, (ast.Next, ast.Prev)) for a in self.ancestry.ancestors[node.node_id])

    # -- guards -------------------------------------------------------------
    def cf(self, ev: ast.Event, node: ast.Formula) -> ast.Formula:
        """CF(theta, eta): letter test and guard translation relative to eta."""
        key = node.node_id
        if key not in self._cf:
            self._cf[key] = ast.conj(ast.Atom(ev.letter), *self._guard_parts(ev.guard, node))
        return self._cf[key]

    def translate_guard(self, g: Guard, node: ast.Formula) -> ast.Formula:
        """C(g, eta) for a normalized guard."""
        if any(a.c < 0 for a in g.atoms):
            raise ValueError("translate_guard expects a normalized guard (non-negative constants)")
        return ast.conj(*self._guard_parts(g, node))

    def _guard_parts(self, g: Guard, node: ast.Formula) -> list[ast.Formula]:
        g = expand_equalities(normalize_guard(g))
        return [self._atom(a, node) for a in g.atoms]

    def _atom(self, atom: Comparison, node: ast.Formula) -> ast.Formula:
        anchor = self.ancestry.anc(node, atom.var)
        key = (anchor.node_id, atom)
        if key in self._c:
            return self._c[key]
        target = self.alpha(anchor)
        same_mod = ast.Future if atom.orientation == X_MINUS_T else ast.Past
        other_mod = ast.Past if atom.orientation == X_MINUS_T else ast.Future
        parts = []
        leak = False
        iv = _same_side(atom.op, atom.c)
        if iv is not None:
            parts.append(same_mod(iv, target))
            leak |= iv.singular
        if self.mode == DEFAULT:
            if _holds_at_zero(atom.op, atom.c):
                parts.append(target)
                self.report.here_patch += 1
            iv = _other_side(atom.op, atom.c)
            if iv is not None:
                parts.append(other_mod(iv, target))
                self.report.counter_patch += 1
                leak |= iv.singular
        if leak:
            self.report.punctuality_leak += 1
            self.report.leak_atoms.append(str(atom))
        res = ast.disj(*parts)
        self._c[key] = res
        return res

    # -- beta ---------------------------------------------------------------
    def beta(self, node: Optional[ast.Formula] = None) -> ast.Formula:
        node = self.root if node is None else node
        key = node.node_id
        if key in self._beta:
            return self._beta[key]
        a = self.alpha(node)
        if isinstance(node, ast.Top):
            res = a
        elif isinstance(node, ast.Event):
            res = ast.And(a, self.cf(node, node))
        elif isinstance(node, ast.Atom):
            res = ast.And(a, ast.Atom(node.name))
        elif isinstance(node, ast.Or):
            res = ast.And(a, ast.Or(self.beta(node.left), self.beta(node.right)))
        elif isinstance(node, ast.And):
            res = ast.And(a, ast.And(self.beta(node.left), self.beta(node.right)))
        elif isinstance(node, ast.Not):
            res = ast.And(a, ast.Not(self.beta(node.arg)))
        elif isinstance(node, ast.Freeze):
            res = self.beta(node.arg)
        elif isinstance(node, (ast.Next, ast.Prev)):
            mod = ast.Future if isinstance(node, ast.Next) else ast.Past
            child = node.arg
            res = ast.And(a, mod(ZERO_INF, ast.And(self.alpha(child), self.beta(child))))
        elif isinstance(node, (ast.Start, ast.End)):
            b = self.beta(node.arg)
            somewhere = ast.Or(b, ast.Or(ast.Past(ZERO_INF, b), ast.Future(ZERO_INF, b)))
            res = ast.And(a, somewhere)
        else:
            raise TypeError(f"{type(node).__name__} is not a TTL node")
        self._beta[key] = res
        return res


def alpha(f: ast.Formula, node: ast.Formula, mode: str = DEFAULT) -> ast.Formula:
    return Translator(f, mode).alpha(node)


def cf(f: ast.Formula, ev: ast.Event, node: ast.Formula, mode: str = DEFAULT) -> ast.Formula:
    return Translator(f, mode).cf(ev, node)


def translate_guard(f: ast.Formula, g: Guard, node: ast.Formula, mode: str = DEFAULT) -> ast.Formula:
    return Translator(f, mode).translate_guard(g, node)


def beta(f: ast.Formula, mode: str = DEFAULT, strict_punctuality: bool = False) -> ast.Formula:
    return Translator(f, mode, strict_punctuality).beta()


def compile_ttl(f: ast.Formula, mode: str = DEFAULT, strict_punctuality: bool = False):
    """Return (beta formula, TranslationReport)."""
    tr = Translator(f, mode, strict_punctuality)
    out = tr.beta()
    return out, tr.report
