"""Exhaustive solver for k-round EF games on pairs of finite timed words.

One round, spoiler moving in word d (the other word is e):

1. pick a direction (U/F future, S/P past), an interval I from the menu and a
   position p strictly ahead of the current position s in word d with |tau_p - tau_s| in I;
2. the duplicator answers q in word e the same way (same direction, same I);
3. the spoiler then either continues from (p, q) (the F/P part), or, in the
   U/S variant only, asks for the in-between part: p and q must be both
   adjacent or both non-adjacent to their origins, then the spoiler picks q''
   strictly between t and q in word e, the duplicator answers p'' strictly
   between s and p in word d, and play continues from (p'', q'').

With ``strict_adjacency=True`` the in-between part additionally fails for the
duplicator whenever exactly one of p, q is an immediate neighbour of its
origin. By default only the pick rule applies: a non-adjacent q against an
adjacent p still loses (the spoiler picks in between and nothing answers it),
but an adjacent q against a non-adjacent p does not, since then the spoiler
has nothing to pick. The default is what makes game and formula equivalence
coincide.

The duplicator commits to q before learning which part the spoiler takes, so
a reply is good only if it survives both. Letters must agree at every
configuration reached (isop). A menu interval with no legal spoiler position
is simply not a move.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..logic.intervals import Interval
from ..words import TimedWord
from .menus import IntervalMenu, check_cap

SPOILER = "spoiler"
DUPLICATOR = "duplicator"
US = "US"
FP = "FP"
VARIANTS = (US, FP)

FUTURE, PAST = +1, -1


@dataclass(frozen=True)
class Configuration:
    i0: int
    i1: int
    rounds_left: int


@dataclass(frozen=True)
class MoveRecord:
    round: int
    word: int                      # the word the spoiler moved in
    move: str                      # U, S, F or P
    interval: Interval
    spoiler_pos: int
    duplicator_pos: Optional[int]  # None: no legal reply
    part: Optional[str] = None     # F/P: continue at the new positions; U/S: in-between part
    between_spoiler: Optional[int] = None
    between_duplicator: Optional[int] = None
    config_after: Optional[tuple[int, int]] = None
    note: str = ""

    def __str__(self) -> str:
        parts = [
            f"round {self.round}: spoiler {self.move}{self.interval} in word {self.word} -> {self.spoiler_pos}",
        ]
        if self.duplicator_pos is None:
            parts.append("duplicator has no reply")
        else:
            parts.append(f"duplicator -> {self.duplicator_pos}")
        if self.part in ("U", "S"):
            parts.append(f"in-between part: spoiler {self.between_spoiler}")
            if self.between_duplicator is not None:
                parts.append(f"duplicator {self.between_duplicator}")
        elif self.part:
            parts.append(f"{self.part}-part")
        if self.config_after is not None:
            parts.append(f"now at {self.config_after}")
        if self.note:
            parts.append(self.note)
        return "; ".join(parts)


@dataclass
class GameOutcome:
    winner: str
    principal_variation: list[MoveRecord]
    start: Configuration
    menu: IntervalMenu
    variant: str
    final_note: str = ""
    warnings: list[str] = field(default_factory=list)
    states: int = 0
    strict_adjacency: bool = False

    @property
    def duplicator_wins(self) -> bool:
        return self.winner == DUPLICATOR

    def __bool__(self) -> bool:
        return self.duplicator_wins


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class EFGame:
    def __init__(
        self,
        rho0: TimedWord,
        rho1: TimedWord,
        menu: IntervalMenu,
        variant: str = US,
        strict_adjacency: bool = False,
    ):
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        self.words = (rho0, rho1)
        self.menu = menu
        self.variant = variant
        self.strict_adjacency = strict_adjacency
        self.memo: dict[tuple[int, int, int], bool] = {}
        self._iv_masks: dict[tuple, list[tuple[Interval, int]]] = {}

    # -- helpers ---------------------------------------------------------
    def isop(self, i0: int, i1: int) -> bool:
        return self.words[0].letter(i0) == self.words[1].letter(i1)

    def _ahead(self, word: int, pos: int, direction: int) -> list[int]:
        n = len(self.words[word])
        if direction == FUTURE:
            return list(range(pos + 1, n + 1))
        return list(range(pos - 1, 0, -1))

    def _distance(self, word: int, origin: int, target: int):
        w = self.words[word]
        return abs(w.time(target) - w.time(origin))

    def interval_masks(self, word: int, pos: int, direction: int) -> list[tuple[Interval, int]]:
        """For each menu interval, the bitmask of positions ahead of pos whose distance lies in it."""
        key = (word, pos, direction)
        hit = self._iv_masks.get(key)
        if hit is None:
            ahead = self._ahead(word, pos, direction)
            dists = [self._distance(word, pos, p) for p in ahead]
            hit = []
            for iv in self.menu:
                mask = 0
                for p, d in zip(ahead, dists):
                    if iv.contains(d):
                        mask |= 1 << p
                hit.append((iv, mask))
            self._iv_masks[key] = hit
        return hit

    @staticmethod
    def _cfg(d: int, p: int, q: int) -> tuple[int, int]:
        return (p, q) if d == 0 else (q, p)

    # -- game value ------------------------------------------------------
    def wins(self, i0: int, i1: int, k: int) -> bool:
        """True iff the duplicator wins the k-round game from (i0, i1)."""
        key = (i0, i1, k)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not self.isop(i0, i1):
            res = False
        elif k == 0:
            res = True
        else:
            res = all(
                self.spoiler_move(i0, i1, k, d, direction) is None
                for d in (0, 1)
                for direction in (FUTURE, PAST)
            )
        self.memo[key] = res
        return res

    def good_replies(self, i0: int, i1: int, k: int, d: int, direction: int) -> dict[int, int]:
        """Map spoiler position p to the bitmask of duplicator replies q that win."""
        e = 1 - d
        s, t = (i0, i1) if d == 0 else (i1, i0)
        ahead_s = self._ahead(d, s, direction)
        ahead_t = self._ahead(e, t, direction)
        cov = 0  # q'' answered by some p'' strictly between s and the current p
        out = {}
        for idx, p in enumerate(ahead_s):
            if idx > 0:
                prev = ahead_s[idx - 1]
                for q2 in ahead_t:
                    if not (cov >> q2) & 1 and self.wins(*self._cfg(d, prev, q2), k - 1):
                        cov |= 1 << q2
            first_gap = None
            for q2 in ahead_t:
                if not (cov >> q2) & 1:
                    first_gap = q2
                    break
            p_adj = idx == 0
            good = 0
            for jdx, q in enumerate(ahead_t):
                if not self.wins(*self._cfg(d, p, q), k - 1):
                    continue
                if self.variant == US:
                    if self.strict_adjacency and p_adj != (jdx == 0):
                        continue
                    # every q'' strictly between t and q must be covered
                    if first_gap is not None and direction * (q - first_gap) > 0:
                        continue
                good |= 1 << q
            out[p] = good
        return out

    def spoiler_move(self, i0, i1, k, d, direction):
        """First winning spoiler move (interval, p) for this word/direction, or None."""
        e = 1 - d
        s, t = (i0, i1) if d == 0 else (i1, i0)
        legal = self.interval_masks(d, s, direction)
        replies = self.interval_masks(e, t, direction)
        if not any(m for _, m in legal):
            return None
        good = self.good_replies(i0, i1, k, d, direction)
        for (iv, lmask), (_, rmask) in zip(legal, replies):
            for p in sorted(_bits(lmask), key=lambda x: direction * x):
                if good[p] & rmask == 0:
                    return iv, p
        return None

    # -- full strategy trees (debugging) -------------------------------
    def strategy_tree(self, i0: int, i1: int, k: int, node_cap: int = 2000) -> "StrategyNode":
        """Every spoiler move with the duplicator's answer (or the spoiler's refutations).

        Raises TreeCapExceeded after node_cap nodes.
        """
        count = [0]

        def build(a, b, r):
            count[0] += 1
            if count[0] > node_cap:
                raise TreeCapExceeded(f"strategy tree exceeds {node_cap} nodes")
            won = self.wins(a, b, r)
            node = StrategyNode(a, b, r, DUPLICATOR if won else SPOILER)
            if not self.isop(a, b) or r == 0:
                return node
            for d in (0, 1):
                for direction in (FUTURE, PAST):
                    s, t = (a, b) if d == 0 else (b, a)
                    name = self._move_name(direction)
                    legal = self.interval_masks(d, s, direction)
                    replies = self.interval_masks(1 - d, t, direction)
                    if not any(m for _, m in legal):
                        continue
                    good = self.good_replies(a, b, r, d, direction)
                    for (iv, lmask), (_, rmask) in zip(legal, replies):
                        for p in sorted(_bits(lmask), key=lambda x: direction * x):
                            ok = good[p] & rmask
                            if won:
                                q = min(_bits(ok), key=lambda x: direction * x)
                                label = f"spoiler {name}{iv} in word {d} -> {p}; duplicator -> {q}"
                                node.children.append((label, build(*self._cfg(d, p, q), r - 1)))
                            elif not ok:
                                for q in sorted(_bits(rmask), key=lambda x: direction * x):
                                    label = f"spoiler {name}{iv} in word {d} -> {p}; duplicator -> {q}"
                                    if self.wins(*self._cfg(d, p, q), r - 1):
                                        leaf = StrategyNode(*self._cfg(d, p, q), r - 1, SPOILER,
                                                            note="spoiler takes the in-between part")
                                        count[0] += 1
                                        node.children.append((label, leaf))
                                    else:
                                        node.children.append((label, build(*self._cfg(d, p, q), r - 1)))
                                if not rmask:
                                    node.children.append(
                                        (f"spoiler {name}{iv} in word {d} -> {p}; no reply",
                                         StrategyNode(a, b, r, SPOILER, note="duplicator has no legal reply")))
                                return node
            return node

        return build(i0, i1, k)

    # -- traces ----------------------------------------------------------
    def principal_variation(self, i0: int, i1: int, k: int):
        trace: list[MoveRecord] = []
        note = ""
        rnd = 1
        while True:
            if not self.isop(i0, i1):
                note = f"letters differ at {(i0, i1)}"
                break
            if k == 0:
                note = f"no rounds left at {(i0, i1)}"
                break
            if self.wins(i0, i1, k):
                rec = self._duplicator_step(i0, i1, k, rnd)
            else:
                rec = self._spoiler_step(i0, i1, k, rnd)
            if rec is None:
                note = f"spoiler has no legal move at {(i0, i1)}"
                break
            trace.append(rec)
            if rec.config_after is None:
                note = rec.note
                break
            i0, i1 = rec.config_after
            k -= 1
            rnd += 1
        return trace, note

    def _move_name(self, direction: int) -> str:
        if self.variant == US:
            return "U" if direction == FUTURE else "S"
        return "F" if direction == FUTURE else "P"

    def _duplicator_step(self, i0, i1, k, rnd):
        for d in (0, 1):
            for direction in (FUTURE, PAST):
                s, t = (i0, i1) if d == 0 else (i1, i0)
                legal = self.interval_masks(d, s, direction)
                replies = self.interval_masks(1 - d, t, direction)
                good = None
                for (iv, lmask), (_, rmask) in zip(legal, replies):
                    if not lmask:
                        continue
                    if good is None:
                        good = self.good_replies(i0, i1, k, d, direction)
                    p = min(_bits(lmask), key=lambda x: direction * x)
                    q = min(_bits(good[p] & rmask), key=lambda x: direction * x)
                    return MoveRecord(
                        rnd, d, self._move_name(direction), iv, p, q,
                        part="F" if direction == FUTURE else "P",
                        config_after=self._cfg(d, p, q),
                    )
        return None

    def _spoiler_step(self, i0, i1, k, rnd):
        for d in (0, 1):
            for direction in (FUTURE, PAST):
                found = self.spoiler_move(i0, i1, k, d, direction)
                if found is None:
                    continue
                iv, p = found
                e = 1 - d
                s, t = (i0, i1) if d == 0 else (i1, i0)
                name = self._move_name(direction)
                replies = [m for ivx, m in self.interval_masks(e, t, direction) if ivx == iv][0]
                qs = sorted(_bits(replies), key=lambda x: direction * x)
                if not qs:
                    return MoveRecord(rnd, d, name, iv, p, None, note="duplicator has no legal reply")
                q = qs[0]
                straight = "F" if direction == FUTURE else "P"
                between = "U" if direction == FUTURE else "S"
                if not self.wins(*self._cfg(d, p, q), k - 1):
                    return MoveRecord(rnd, d, name, iv, p, q, part=straight, config_after=self._cfg(d, p, q))
                # the continuation is fine, so the in-between part must fail
                p_adj = abs(p - s) == 1
                q_adj = abs(q - t) == 1
                if self.strict_adjacency and p_adj != q_adj:
                    return MoveRecord(
                        rnd, d, name, iv, p, q, part=between,
                        note="adjacency differs: one reply is an immediate neighbour, the other is not",
                    )
                between_t = list(range(t + direction, q, direction))
                between_s = list(range(s + direction, p, direction))
                for q2 in between_t:
                    answers = [p2 for p2 in between_s if self.wins(*self._cfg(d, p2, q2), k - 1)]
                    if answers:
                        continue
                    if not between_s:
                        return MoveRecord(
                            rnd, d, name, iv, p, q, part=between, between_spoiler=q2,
                            note="duplicator has no position strictly between",
                        )
                    p2 = between_s[0]
                    return MoveRecord(
                        rnd, d, name, iv, p, q, part=between, between_spoiler=q2,
                        between_duplicator=p2, config_after=self._cfg(d, p2, q2),
                    )
                raise AssertionError("spoiler move recorded as winning but no refutation found")
        raise AssertionError("spoiler wins but no winning move found")


def duplicator_wins(
    rho0: TimedWord,
    rho1: TimedWord,
    i0: int = 1,
    i1: int = 1,
    k: int = 1,
    menu: IntervalMenu | None = None,
    variant: str = US,
    warn_cap: bool = True,
    strict_adjacency: bool = False,
) -> GameOutcome:
    """Solve the k-round game from (i0, i1); the outcome carries a principal variation."""
    rho0.check_position(i0)
    rho1.check_position(i1)
    if k < 0:
        raise ValueError("rounds must be non-negative")
    if menu is None:
        raise ValueError("a menu is required")
    notes = []
    if warn_cap:
        msg = check_cap(menu, rho0, rho1, stacklevel=3)
        if msg:
            notes.append(msg)
    game = EFGame(rho0, rho1, menu, variant, strict_adjacency)
    won = game.wins(i0, i1, k)
    trace, final = game.principal_variation(i0, i1, k)
    return GameOutcome(
        DUPLICATOR if won else SPOILER,
        trace,
        Configuration(i0, i1, k),
        menu,
        variant,
        final_note=final,
        warnings=notes,
        states=len(game.memo),
        strict_adjacency=strict_adjacency,
    )


class TreeCapExceeded(RuntimeError):
    pass


@dataclass
class StrategyNode:
    i0: int
    i1: int
    rounds_left: int
    winner: str
    children: list = field(default_factory=list)   # (move label, StrategyNode)
    note: str = ""

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.children)

    def lines(self, depth: int = 0) -> list[str]:
        pad = "  " * depth
        extra = f" ({self.note})" if self.note else ""
        out = [f"{pad}({self.i0},{self.i1}) rounds={self.rounds_left} winner={self.winner}{extra}"]
        for label, child in self.children:
            out.append(f"{pad}  {label}")
            out.extend(child.lines(depth + 2))
        return out


class ReplayError(AssertionError):
    pass


def replay(outcome: GameOutcome, rho0: TimedWord, rho1: TimedWord) -> None:
    """Re-check a principal variation move by move; raises ReplayError on any illegal step."""
    words = (rho0, rho1)
    i0, i1, k = outcome.start.i0, outcome.start.i1, outcome.start.rounds_left
    menu = set(outcome.menu.intervals)

    def fail(msg):
        raise ReplayError(msg)

    def isop(a, b):
        return rho0.letter(a) == rho1.letter(b)

    for rec in outcome.principal_variation:
        if k <= 0:
            fail("trace longer than the number of rounds")
        if not isop(i0, i1):
            fail(f"play continued from a non-isomorphic configuration {(i0, i1)}")
        if rec.interval not in menu:
            fail(f"interval {rec.interval} is not on the menu")
        future = rec.move in ("U", "F")
        if outcome.variant == FP and rec.move in ("U", "S"):
            fail("until/since move in the unary variant")
        d = rec.word
        s, t = (i0, i1) if d == 0 else (i1, i0)
        ws, wt = words[d], words[1 - d]
        step = 1 if future else -1

        def legal(w, origin, target):
            if not 1 <= target <= len(w) or (target - origin) * step <= 0:
                return False
            return rec.interval.contains(abs(w.time(target) - w.time(origin)))

        if not legal(ws, s, rec.spoiler_pos):
            fail(f"illegal spoiler position {rec.spoiler_pos}")
        if rec.duplicator_pos is None:
            if any(legal(wt, t, q) for q in wt.positions()):
                fail("trace claims no reply but one exists")
            if outcome.winner != SPOILER:
                fail("duplicator lost a move in a duplicator-won trace")
            return
        if not legal(wt, t, rec.duplicator_pos):
            fail(f"illegal duplicator position {rec.duplicator_pos}")
        p, q = rec.spoiler_pos, rec.duplicator_pos
        if rec.part in ("U", "S"):
            if outcome.variant == FP:
                fail("in-between part in the unary variant")
            if outcome.strict_adjacency and (abs(p - s) == 1) != (abs(q - t) == 1):
                if rec.config_after is not None or outcome.winner != SPOILER:
                    fail("adjacency mismatch must end the game for the spoiler")
                return
            q2 = rec.between_spoiler
            if q2 is None or not (min(t, q) < q2 < max(t, q)):
                fail(f"in-between spoiler pick {q2} outside ({t},{q})")
            p2 = rec.between_duplicator
            if p2 is None:
                if any(min(s, p) < x < max(s, p) for x in ws.positions()):
                    fail("trace claims no in-between reply but one exists")
                if outcome.winner != SPOILER:
                    fail("duplicator lost the in-between part in a duplicator-won trace")
                return
            if not (min(s, p) < p2 < max(s, p)):
                fail(f"in-between duplicator pick {p2} outside ({s},{p})")
            nxt = (p2, q2) if d == 0 else (q2, p2)
        else:
            nxt = (p, q) if d == 0 else (q, p)
        if rec.config_after != nxt:
            fail(f"recorded configuration {rec.config_after} differs from {nxt}")
        i0, i1 = nxt
        k -= 1
    # terminal condition
    if outcome.winner == DUPLICATOR:
        if not isop(i0, i1):
            fail("duplicator-won trace ends in a non-isomorphic configuration")
    else:
        if isop(i0, i1):
            fail("spoiler-won trace does not end in a spoiler victory")
