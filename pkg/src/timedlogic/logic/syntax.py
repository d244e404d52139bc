"""Prefix (s-expression) grammar shared by the three logics.

    atom            a  b1  req_x
    boolean         (top) (not f) (and f g) (or f g)
    MTL             (U I f g) (S I f g) (F I f) (P I f)      I like [0,2) or (1,inf)
    TPTL            (U f g) (S f g) (F f) (P f) (freeze x f) (cmp x-T < 2) (cmp T-x >= 1)
    TTL             (sp f) (ep f) (X (ev a g) f) (Y (ev a g) f) (ev a g) (freeze x f)
    TTL guard g     (tt) | (cmp ...) | (and (cmp ...) (cmp ...) ...)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ast
from .guards import Comparison, Guard, OPS, TT, T_MINUS_X, X_MINUS_T
from .intervals import Interval, IntervalError

MTL = "mtl"
TPTL = "tptl"
TTL = "ttl"
LOGICS = (MTL, TPTL, TTL)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at offset {pos})")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<interval>[\[(]\s*\d+\s*,\s*(?:\d+|inf)\s*[\])])
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<cmpvar>[a-z][a-z0-9_]*-T\b|T-[a-z][a-z0-9_]*)
  | (?P<op><=|>=|<|>|=)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


_VAR_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class _Parser:
    def __init__(self, text: str, logic: str):
        if logic not in LOGICS:
            raise ValueError(f"unknown logic {logic!r}")
        self.text = text
        self.logic = logic
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", len(self.text))
        if expected is not None and tok.kind != expected:
            raise FormulaSyntaxError(f"expected {expected}, found {tok.text!r}", tok.pos)
        self.i += 1
        return tok

    def close(self) -> None:
        self.next("rparen")

    def parse(self) -> ast.Formula:
        f = self.formula()
        tok = self.peek()
        if tok is not None:
            raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return f

    def interval(self) -> Interval:
        tok = self.next()
        if tok.kind != "interval":
            raise FormulaSyntaxError(f"expected an interval, found {tok.text!r}", tok.pos)
        try:
            return parse_interval_token(tok.text)
        except IntervalError as exc:
            raise FormulaSyntaxError(str(exc), tok.pos) from None

    def formula(self) -> ast.Formula:
        tok = self.next()
        if tok.kind == "name":
            if not _VAR_RE.match(tok.text):
                raise FormulaSyntaxError(f"bad atom {tok.text!r}", tok.pos)
            if self.logic == TTL:
                return ast.Event(tok.text, TT)
            return ast.Atom(tok.text)
        if tok.kind != "lparen":
            raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        head = self.next()
        if head.kind != "name":
            raise FormulaSyntaxError(f"expected an operator, found {head.text!r}", head.pos)
        op = head.text
        handler = self._handlers().get(op)
        if handler is None:
            raise FormulaSyntaxError(f"unknown operator {op!r} for {self.logic}", head.pos)
        node = handler()
        self.close()
        return node

    def _handlers(self):
        common = {
            "top": lambda: ast.Top(),
            "not": lambda: ast.Not(self.formula()),
            "and": lambda: ast.And(self.formula(), self.formula()),
            "or": lambda: ast.Or(self.formula(), self.formula()),
        }
        if self.logic == MTL:
            common.update(
                U=lambda: ast.Until(self.interval(), self.formula(), self.formula()),
                S=lambda: ast.Since(self.interval(), self.formula(), self.formula()),
                F=lambda: ast.Future(self.interval(), self.formula()),
                P=lambda: ast.Past(self.interval(), self.formula()),
            )
        elif self.logic == TPTL:
            common.update(
                U=lambda: ast.Until(None, self.formula(), self.formula()),
                S=lambda: ast.Since(None, self.formula(), self.formula()),
                F=lambda: ast.Future(None, self.formula()),
                P=lambda: ast.Past(None, self.formula()),
                freeze=self._freeze,
                cmp=lambda: ast.Constraint(self._comparison_body()),
            )
        else:
            common.update(
                sp=lambda: ast.Start(self.formula()),
                ep=lambda: ast.End(self.formula()),
                X=lambda: ast.Next(self._event(), self.formula()),
                Y=lambda: ast.Prev(self._event(), self.formula()),
                ev=self._event_body,
                freeze=self._freeze,
            )
        return common

    def _freeze(self) -> ast.Formula:
        var = self.next("name")
        if not _VAR_RE.match(var.text):
            raise FormulaSyntaxError(f"bad freeze variable {var.text!r}", var.pos)
        return ast.Freeze(var.text, self.formula())

    def _comparison_body(self) -> Comparison:
        lhs = self.next("cmpvar")
        op = self.next("op")
        const = self.next("int")
        if lhs.text.startswith("T-"):
            return Comparison(T_MINUS_X, lhs.text[2:], op.text, int(const.text))
        return Comparison(X_MINUS_T, lhs.text[:-2], op.text, int(const.text))

    def _event(self) -> ast.Event:
        tok = self.next("lparen")
        head = self.next("name")
        if head.text != "ev":
            raise FormulaSyntaxError(f"expected (ev a g), found {head.text!r}", tok.pos)
        ev = self._event_body()
        self.close()
        return ev

    def _event_body(self) -> ast.Event:
        letter = self.next("name")
        if not _VAR_RE.match(letter.text):
            raise FormulaSyntaxError(f"bad letter {letter.text!r}", letter.pos)
        return ast.Event(letter.text, self._guard())

    def _guard(self) -> Guard:
        start = self.next("lparen")
        head = self.next("name")
        if head.text == "tt":
            self.close()
            return TT
        if head.text == "cmp":
            atom = self._comparison_body()
            self.close()
            return Guard((atom,))
        if head.text == "and":
            atoms = []
            while self.peek() is not None and self.peek().kind == "lparen":
                self.next("lparen")
                kw = self.next("name")
                if kw.text != "cmp":
                    raise FormulaSyntaxError("guard conjunctions hold only cmp atoms", kw.pos)
                atoms.append(self._comparison_body())
                self.close()
            self.close()
            if not atoms:
                raise FormulaSyntaxError("empty guard conjunction", start.pos)
            return Guard(tuple(atoms))
        raise FormulaSyntaxError(f"bad guard head {head.text!r}", head.pos)


def parse_interval_token(text: str) -> Interval:
    body = text[1:-1]
    lo, hi = (p.strip() for p in body.split(","))
    return Interval(int(lo), None if hi == "inf" else int(hi), text[0] == "(", text[-1] == ")")


def parse_formula(text: str, logic: str = MTL) -> ast.Formula:
    return _Parser(text, logic).parse()


def print_formula(f: ast.Formula) -> str:
    parts: list[str] = []
    _emit(f, parts)
    return "".join(parts)


def _emit(f: ast.Formula, out: list[str]) -> None:
    # iterative on purpose: beta outputs can nest deeply
    stack: list[object] = [f]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        g = item
        if isinstance(g, ast.Atom):
            out.append(g.name)
        elif isinstance(g, ast.Top):
            out.append("(top)")
        elif isinstance(g, ast.Event):
            out.append(f"(ev {g.letter} {g.guard})")
        elif isinstance(g, ast.Constraint):
            out.append(str(g.cmp))
        else:
            head, args = _head(g)
            out.append("(" + head)
            stack.append(")")
            for child in reversed(args):
                stack.append(child)
                stack.append(" ")


def _head(g: ast.Formula) -> tuple[str, tuple]:
    if isinstance(g, ast.Not):
        return "not", (g.arg,)
    if isinstance(g, ast.And):
        return "and", (g.left, g.right)
    if isinstance(g, ast.Or):
        return "or", (g.left, g.right)
    if isinstance(g, (ast.Until, ast.Since)):
        name = "U" if isinstance(g, ast.Until) else "S"
        if g.interval is None:
            return name, (g.left, g.right)
        return f"{name} {g.interval}", (g.left, g.right)
    if isinstance(g, (ast.Future, ast.Past)):
        name = "F" if isinstance(g, ast.Future) else "P"
        if g.interval is None:
            return name, (g.arg,)
        return f"{name} {g.interval}", (g.arg,)
    if isinstance(g, ast.Freeze):
        return f"freeze {g.var}", (g.arg,)
    if isinstance(g, ast.Start):
        return "sp", (g.arg,)
    if isinstance(g, ast.End):
        return "ep", (g.arg,)
    if isinstance(g, ast.Next):
        return f"X (ev {g.event.letter} {g.event.guard})", (g.arg,)
    if isinstance(g, ast.Prev):
        return f"Y (ev {g.event.letter} {g.event.guard})", (g.arg,)
    raise TypeError(f"cannot print {type(g).__name__}")


def logic_of(f: ast.Formula) -> str:
    """Best-effort guess of which grammar a tree belongs to."""
    for g in ast.walk(f):
        if isinstance(g, (ast.Event, ast.Start, ast.End, ast.Next, ast.Prev)):
            return TTL
        if isinstance(g, ast.Constraint) or (
            isinstance(g, ast.TIMED_MODAL) and g.interval is None
        ):
            return TPTL
        if isinstance(g, ast.Freeze):
            return TPTL
    return MTL
