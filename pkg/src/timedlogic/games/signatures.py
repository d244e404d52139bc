"""Semantic oracle for depth-k indistinguishability, independent of the game solver.

The positions of both words are laid side by side as joint coordinates. The
vectors definable with modal depth <= d form a boolean algebra; we track it by
its atoms, a partition P_d of the coordinates. Depth d+1 adds the vectors
U_I(A, C) and S_I(A, C) for unions A, C of P_d classes. Until distributes over
unions in its second argument, and U_I(A, c) is the union of U_I(B, c) over
the sets B of classes actually seen strictly between some i and some witness
j in c with B contained in A. So the "realized" pairs (B, c) generate the same
algebra, which keeps the refinement polynomial. ``exhaustive=True`` instead
applies every pair of unions, for cross-checking on tiny inputs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..logic import ast
from ..logic.analysis import modal_depth
from ..semantics.evaluate import MTLEvaluator
from ..words import TimedWord
from .menus import IntervalMenu
from .solver import DUPLICATOR, FP, US, GameOutcome, duplicator_wins


class OracleCapExceeded(RuntimeError):
    """The instance needs more generator vectors than the configured limit."""


@dataclass
class SignatureResult:
    equivalent: bool
    depth: int
    partition_sizes: list[int]
    distinguishing_signature: Optional[tuple[bool, ...]] = None
    witness: Optional[ast.Formula] = None
    witness_checked: Optional[bool] = None
    vectors: int = 0


@dataclass
class _Gen:
    vector: frozenset            # coordinate indices where it holds
    formula: object              # thunk building the formula on demand


class SignatureOracle:
    def __init__(
        self,
        rho0: TimedWord,
        rho1: TimedWord,
        menu: IntervalMenu,
        variant: str = US,
        exhaustive: bool = False,
        max_vectors: int = 500_000,
    ):
        self.words = (rho0, rho1)
        self.menu = menu
        self.variant = variant
        self.exhaustive = exhaustive
        self.max_vectors = max_vectors
        self.coords = [(0, i) for i in rho0.positions()] + [(1, i) for i in rho1.positions()]
        self.index = {c: n for n, c in enumerate(self.coords)}
        self.vectors = 0
        # per depth: class id of every coordinate, and a separating generator per class pair
        self.labels: list[list[int]] = []
        self.separators: list[dict[tuple[int, int], _Gen]] = []
        self._class_formula: dict[tuple[int, int], ast.Formula] = {}

    # -- partition bookkeeping -----------------------------------------
    def _classes(self, d: int) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for n, lab in enumerate(self.labels[d]):
            out.setdefault(lab, []).append(n)
        return out

    def _refine(self, base: list[int], gens: list[_Gen]) -> tuple[list[int], dict]:
        sig = [(base[n],) for n in range(len(self.coords))]
        sig = [
            (base[n], tuple(n in g.vector for g in gens)) for n in range(len(self.coords))
        ]
        ids: dict = {}
        labels = []
        for s in sig:
            labels.append(ids.setdefault(s, len(ids)))
        # one separating generator for every pair of classes sharing a parent class
        reps: dict[int, int] = {}
        for n, lab in enumerate(labels):
            reps.setdefault(lab, n)
        seps: dict[tuple[int, int], _Gen] = {}
        for x, y in itertools.permutations(reps, 2):
            nx, ny = reps[x], reps[y]
            if base[nx] != base[ny]:
                continue
            for g in gens:
                if (nx in g.vector) != (ny in g.vector):
                    seps[(x, y)] = g
                    break
        return labels, seps

    # -- generators ---------------------------------------------------------
    def _atoms(self) -> list[_Gen]:
        letters = sorted({w.letter(i) for w in self.words for i in w.positions()})
        gens = []
        for a in letters:
            vec = frozenset(n for n, (k, i) in enumerate(self.coords) if self.words[k].letter(i) == a)
            gens.append(_Gen(vec, lambda a=a: ast.Atom(a)))
        return gens

    def _walks(self, d: int):
        """Yield (coordinate, direction, distance, witness class, between-classes) for all pairs."""
        lab = self.labels[d]
        for n, (k, i) in enumerate(self.coords):
            w = self.words[k]
            for direction in (+1, -1):
                between: frozenset = frozenset()
                j = i + direction
                while 1 <= j <= len(w):
                    m = self.index[(k, j)]
                    yield n, direction, abs(w.time(j) - w.time(i)), lab[m], between
                    between = between | {lab[m]}
                    j += direction

    def _modal_gens(self, d: int) -> list[_Gen]:
        walks = list(self._walks(d))
        unary = self.variant == FP
        gens: list[_Gen] = []
        seen: set = set()
        for direction in (+1, -1):
            for iv in self.menu:
                hits = [
                    (n, c, b) for n, dr, dist, c, b in walks if dr == direction and iv.contains(dist)
                ]
                if unary:
                    keys = {(None, c) for _, c, _ in hits}
                else:
                    keys = {(b, c) for _, c, b in hits}
                for left, c in sorted(keys, key=lambda kc: (sorted(kc[0]) if kc[0] is not None else [], kc[1])):
                    vec = frozenset(
                        n for n, cc, b in hits if cc == c and (left is None or b <= left)
                    )
                    if vec in seen:
                        continue
                    seen.add(vec)
                    gens.append(_Gen(vec, self._modal_thunk(d, direction, iv, left, c)))
                    self._count()
        if self.exhaustive and not unary:
            gens.extend(self._exhaustive_gens(d, walks, seen))
        return gens

    def _exhaustive_gens(self, d, walks, seen) -> list[_Gen]:
        classes = sorted(set(self.labels[d]))
        if len(classes) > 7:
            raise OracleCapExceeded("exhaustive mode supports at most 7 classes per depth")
        unions = [
            frozenset(s)
            for r in range(len(classes) + 1)
            for s in itertools.combinations(classes, r)
        ]
        out = []
        for direction in (+1, -1):
            for iv in self.menu:
                hits = [(n, c, b) for n, dr, dist, c, b in walks if dr == direction and iv.contains(dist)]
                for left in unions:
                    for right in unions:
                        vec = frozenset(n for n, c, b in hits if c in right and b <= left)
                        self._count()
                        if vec in seen:
                            continue
                        seen.add(vec)
                        out.append(_Gen(vec, self._modal_thunk(d, direction, iv, left, right)))
        return out

    def _count(self):
        self.vectors += 1
        if self.vectors > self.max_vectors:
            raise OracleCapExceeded(f"more than {self.max_vectors} generator vectors")

    # -- formulas -------------------------------------------------------
    def _union_formula(self, d: int, classes) -> ast.Formula:
        return ast.disj(*(self.class_formula(d, c) for c in sorted(classes)))

    def _modal_thunk(self, d, direction, iv, left, right):
        def build():
            target = (
                self._union_formula(d, right)
                if isinstance(right, frozenset)
                else self.class_formula(d, right)
            )
            if left is None:
                node = ast.Future if direction > 0 else ast.Past
                return node(iv, target)
            node = ast.Until if direction > 0 else ast.Since
            return node(iv, self._union_formula(d, left), target)

        return build

    def class_formula(self, d: int, cls: int) -> ast.Formula:
        """A formula of modal depth <= d holding exactly on class cls of P_d."""
        key = (d, cls)
        if key in self._class_formula:
            return self._class_formula[key]
        lab = self.labels[d]
        member = lab.index(cls)
        if d == 0:
            k, i = self.coords[member]
            f = ast.Atom(self.words[k].letter(i))
        else:
            parent = self.labels[d - 1][member]
            parts = [self.class_formula(d - 1, parent)]
            others = sorted(
                {lab[n] for n in range(len(lab)) if self.labels[d - 1][n] == parent} - {cls}
            )
            for other in others:
                g = self.separators[d][(cls, other)]
                lit = g.formula()
                parts.append(lit if member in g.vector else ast.Not(lit))
            f = ast.conj(*parts)
        self._class_formula[key] = f
        return f

    # -- driver -----------------------------------------------------------
    def run(self, depth: int) -> SignatureResult:
        n_all = len(self.coords)
        atoms = self._atoms()
        labels, seps = self._refine([0] * n_all, atoms)
        self.labels = [labels]
        self.separators = [seps]
        for d in range(depth):
            gens = self._modal_gens(d)
            labels, seps = self._refine(self.labels[d], gens)
            self.labels.append(labels)
            self.separators.append(seps)
            if len(set(labels)) == len(set(self.labels[d])):
                # stable: no further depth can refine
                for _ in range(d + 1, depth):
                    self.labels.append(labels)
                    self.separators.append({})
                break
        sizes = [len(set(lab)) for lab in self.labels]
        a = self.index[(0, 1)]
        b = self.index[(1, 1)]
        final = self.labels[-1]
        if final[a] == final[b]:
            return SignatureResult(True, depth, sizes, vectors=self.vectors)
        d = next(x for x in range(len(self.labels)) if self.labels[x][a] != self.labels[x][b])
        witness = self.class_formula(d, self.labels[d][a])
        vec = tuple(self.labels[d][n] == self.labels[d][a] for n in range(n_all))
        checked = (
            modal_depth(witness) <= depth
            and MTLEvaluator(self.words[0]).holds(1, witness)
            and not MTLEvaluator(self.words[1]).holds(1, witness)
        )
        return SignatureResult(False, depth, sizes, vec, witness, checked, self.vectors)


def signature_equivalence(
    rho0: TimedWord,
    rho1: TimedWord,
    depth: int,
    menu: IntervalMenu,
    variant: str = US,
    exhaustive: bool = False,
    max_vectors: int = 500_000,
) -> SignatureResult:
    """Do the first positions agree on every formula of modal depth <= depth over the menu?"""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return SignatureOracle(rho0, rho1, menu, variant, exhaustive, max_vectors).run(depth)


@dataclass
class CrosscheckReport:
    agree: bool
    game: GameOutcome
    signature: SignatureResult
    notes: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        sig = "equivalent" if self.signature.equivalent else "distinguished"
        lines = [
            f"game: {self.game.winner}",
            f"signature: {sig} (classes per depth {self.signature.partition_sizes})",
            f"agree: {str(self.agree).lower()}",
        ]
        if self.signature.witness is not None:
            from ..logic.syntax import print_formula

            lines.append(f"witness: {print_formula(self.signature.witness)}")
        return "\n".join(lines + self.notes)


def ef_crosscheck(
    rho0: TimedWord,
    rho1: TimedWord,
    k: int,
    menu: IntervalMenu,
    variant: str = US,
    max_vectors: int = 500_000,
) -> CrosscheckReport:
    game = duplicator_wins(rho0, rho1, 1, 1, k, menu, variant, warn_cap=False)
    sig = signature_equivalence(rho0, rho1, k, menu, variant, max_vectors=max_vectors)
    agree = (game.winner == DUPLICATOR) == sig.equivalent
    notes = []
    if sig.witness_checked is False:
        agree = False
        notes.append("witness formula failed re-evaluation")
    return CrosscheckReport(agree, game, sig, notes)


@dataclass
class BatchReport:
    pairs: int = 0
    agreed: int = 0
    skipped: int = 0
    duplicator: int = 0
    by_variant: dict = field(default_factory=dict)
    disagreements: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pairs > 0 and self.agreed == self.pairs


def _perturb(rng, w: TimedWord) -> TimedWord:
    """A near copy of w, so that many pairs need deep play to tell apart."""
    events = list(w.events)
    roll = rng.random()
    i = rng.randrange(len(events))
    if roll < 0.35:
        events[i] = (rng.choice("ab"), events[i][1])
    elif roll < 0.7 and len(events) > 1:
        del events[i]
    else:
        lo = events[i - 1][1] if i else Fraction(0)
        hi = events[i + 1][1] if i + 1 < len(events) else lo + 2
        ticks = [lo + (hi - lo) * Fraction(q, 4) for q in range(5)]
        events[i] = (events[i][0], ticks[rng.randrange(5)] if i else Fraction(0))
    return TimedWord(tuple(events))


def random_crosscheck(
    count: int,
    seed: int = 0,
    max_length: int = 6,
    max_const: int = 2,
    max_rounds: int = 2,
) -> BatchReport:
    """Game solver vs signature oracle on seeded random pairs; pairs over the oracle cap are skipped."""
    from ..logic.intervals import FAMILY_KINDS
    from ..sampling import random_word
    from .menus import build_menu

    rng = random.Random(seed)
    report = BatchReport()
    while report.pairs < count:
        w0 = random_word(rng, (1, max_length), max_time=3, denominator=4)
        w1 = _perturb(rng, w0) if rng.random() < 0.6 else random_word(rng, (1, max_length), max_time=3, denominator=4)
        if len(w1) > max_length:
            continue
        menu = build_menu(rng.choice(FAMILY_KINDS), rng.randint(0, max_const))
        rounds = rng.randint(1, max_rounds)
        variant = US if report.pairs % 2 == 0 else FP
        try:
            res = ef_crosscheck(w0, w1, rounds, menu, variant)
        except OracleCapExceeded:
            report.skipped += 1
            continue
        report.pairs += 1
        report.by_variant[variant] = report.by_variant.get(variant, 0) + 1
        report.duplicator += res.game.duplicator_wins
        if res.agree:
            report.agreed += 1
        else:
            report.disagreements.append(f"{w0} vs {w1}, {rounds} rounds, {menu.describe()}, {variant}")
    return report
