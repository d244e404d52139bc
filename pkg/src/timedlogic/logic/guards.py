"""Freeze-variable timing constraints `x-T ~ c` / `T-x ~ c` and valuations."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

X_MINUS_T = "x-T"
T_MINUS_X = "T-x"
OPS = ("<", "<=", ">", ">=", "=")

_COMPARE = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
}
# a ~ -c  <=>  -a ~' c
_MIRROR = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "="}

Valuation = Mapping[str, Fraction]


@dataclass(frozen=True)
class Comparison:
    orientation: str
    var: str
    op: str
    c: int

    def __post_init__(self):
        if self.orientation not in (X_MINUS_T, T_MINUS_X):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if self.op not in OPS:
            raise ValueError(f"bad comparison operator {self.op!r}")

    def holds(self, nu: Valuation, t: Fraction) -> bool:
        x = nu.get(self.var, 0)
        diff = x - t if self.orientation == X_MINUS_T else t - x
        return _COMPARE[self.op](diff, self.c)

    def holds_at_difference(self, d) -> bool:
        """Truth when x - T equals d."""
        diff = d if self.orientation == X_MINUS_T else -d
        return _COMPARE[self.op](diff, self.c)

    def normalized(self) -> "Comparison":
        if self.c >= 0:
            return self
        flipped = T_MINUS_X if self.orientation == X_MINUS_T else X_MINUS_T
        return Comparison(flipped, self.var, _MIRROR[self.op], -self.c)

    def __str__(self) -> str:
        lhs = f"{self.var}-T" if self.orientation == X_MINUS_T else f"T-{self.var}"
        return f"(cmp {lhs} {self.op} {self.c})"


@dataclass(frozen=True)
class Guard:
    atoms: tuple[Comparison, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def trivial(self) -> bool:
        return not self.atoms

    def variables(self) -> frozenset[str]:
        return frozenset(a.var for a in self.atoms)

    def __str__(self) -> str:
        if not self.atoms:
            return "(tt)"
        if len(self.atoms) == 1:
            return str(self.atoms[0])
        return "(and " + " ".join(str(a) for a in self.atoms) + ")"


TT = Guard(())


def eval_guard(nu: Valuation, t: Fraction, g: Guard | Comparison) -> bool:
    """nu, t |= g; variables missing from nu read as 0 (the initial valuation)."""
    if isinstance(g, Comparison):
        return g.holds(nu, t)
    return all(a.holds(nu, t) for a in g.atoms)


def normalize_guard(g: Guard) -> Guard:
    """Rewrite negative constants by flipping orientation and operator."""
    return Guard(tuple(a.normalized() for a in g.atoms))


def expand_equalities(g: Guard) -> Guard:
    out = []
    for a in g.atoms:
        if a.op == "=":
            out.append(Comparison(a.orientation, a.var, "<=", a.c))
            out.append(Comparison(a.orientation, a.var, ">=", a.c))
        else:
            out.append(a)
    return Guard(tuple(out))


def initial_valuation() -> dict[str, Fraction]:
    """nu_0; any variable not present reads as 0."""
    return {}
