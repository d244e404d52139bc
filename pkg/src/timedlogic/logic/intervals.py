"""Integer-bounded timing intervals and the interval families that define fragments."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

INF = None  # high end of an unbounded interval


class IntervalError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Interval:
    low: int
    high: Optional[int]
    low_open: bool = False
    high_open: bool = False

    def __post_init__(self):
        if self.low < 0 or (self.high is not None and self.high < 0):
            raise IntervalError(f"negative endpoint in {self}")
        if self.high is None:
            if not self.high_open:
                raise IntervalError("an infinite end is always open")
            return
        if self.low > self.high or (
            self.low == self.high and (self.low_open or self.high_open)
        ):
            raise IntervalError(f"empty interval {self}")

    @classmethod
    def closed(cls, low: int, high: int) -> "Interval":
        return cls(low, high, False, False)

    @classmethod
    def open(cls, low: int, high: Optional[int]) -> "Interval":
        return cls(low, high, True, True)

    @classmethod
    def point(cls, c: int) -> "Interval":
        return cls(c, c, False, False)

    @classmethod
    def from_(cls, low: int, low_open: bool = False) -> "Interval":
        """The unbounded interval [low,inf) or (low,inf)."""
        return cls(low, None, low_open, True)

    @property
    def bounded(self) -> bool:
        return self.high is not None

    @property
    def singular(self) -> bool:
        return self.high == self.low

    def contains(self, d: Fraction) -> bool:
        if d < self.low or (self.low_open and d == self.low):
            return False
        if self.high is None:
            return True
        return d < self.high or (not self.high_open and d == self.high)

    __contains__ = contains

    def max_constant(self) -> int:
        return self.low if self.high is None else self.high

    def constants(self) -> tuple[int, ...]:
        return (self.low,) if self.high is None else (self.low, self.high)

    def sort_key(self):
        high = float("inf") if self.high is None else self.high
        return (self.low, high, self.low_open, self.high_open)

    def __str__(self) -> str:
        left = "(" if self.low_open else "["
        right = ")" if self.high_open else "]"
        high = "inf" if self.high is None else str(self.high)
        return f"{left}{self.low},{high}{right}"


def make_interval(low: int, high: Optional[int], low_open: bool, high_open: bool) -> Optional[Interval]:
    """Like Interval(...) but returns None for an empty combination."""
    try:
        return Interval(low, high, low_open, high_open)
    except IntervalError:
        return None


def parse_interval(text: str) -> Interval:
    text = text.strip()
    if len(text) < 5 or text[0] not in "[(" or text[-1] not in "])" or "," not in text:
        raise IntervalError(f"malformed interval {text!r}")
    lo_txt, hi_txt = (p.strip() for p in text[1:-1].split(",", 1))
    try:
        low = int(lo_txt)
        high = None if hi_txt == "inf" else int(hi_txt)
    except ValueError:
        raise IntervalError(f"malformed interval {text!r}") from None
    return Interval(low, high, text[0] == "(", text[-1] == ")")


ZERO_INF = Interval(0, None, False, True)   # [0,inf)
POS_INF = Interval(0, None, True, True)     # (0,inf)
ZERO_ZERO = Interval(0, 0)                  # [0,0]
UNIT_OPEN = Interval(0, 1, True, True)      # (0,1)

# Interval families. Int^k and BInt^k carry their own bound; the others are
# unbounded-constant families that a game menu can only approximate up to a cap.
INT = "Int"
EXT_INT = "ExtInt"
B_INT = "BInt"
B_EXT_INT = "BExtInt"
INT_K = "Int^k"
B_INT_K = "BInt^k"
FAMILY_KINDS = (INT, EXT_INT, B_INT, B_EXT_INT, INT_K, B_INT_K)


def family_admits(kind: str, interval: Interval, k: Optional[int] = None) -> bool:
    """Membership of an interval in a family (k is the bound for the ^k kinds)."""
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown interval family {kind!r}")
    if kind in (EXT_INT, B_EXT_INT) and interval.singular:
        return False
    if kind in (B_INT, B_EXT_INT, B_INT_K) and not interval.bounded:
        return False
    if kind in (INT_K, B_INT_K):
        if k is None:
            raise ValueError(f"{kind} needs a bound k")
        return all(c <= k for c in interval.constants())
    return True


def family_is_capped(kind: str) -> bool:
    """True when a finite menu for this family is a truncation of an infinite one."""
    return kind in (INT, EXT_INT, B_INT, B_EXT_INT)
