"""Finite interval menus: the move vocabulary of a game."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..logic.intervals import (
    B_EXT_INT,
    B_INT,
    B_INT_K,
    EXT_INT,
    FAMILY_KINDS,
    INT,
    INT_K,
    Interval,
    family_admits,
    family_is_capped,
    make_interval,
)


class CapWarning(UserWarning):
    """A capped menu may be too small to stand in for its unbounded family."""


@dataclass(frozen=True)
class IntervalMenu:
    kind: str
    k: int
    intervals: tuple[Interval, ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def capped(self) -> bool:
        return family_is_capped(self.kind)

    def describe(self) -> str:
        label = f"{self.kind} capped at {self.k}" if self.capped else f"{self.kind} with k={self.k}"
        return f"{label} ({len(self.intervals)} intervals)"


def _all_intervals(k: int):
    for low in range(k + 1):
        for high in list(range(low, k + 1)) + [None]:
            for low_open in (False, True):
                for high_open in (False, True):
                    iv = make_interval(low, high, low_open, high_open)
                    if iv is not None:
                        yield iv


def build_menu(kind: str, k: int) -> IntervalMenu:
    """Every non-empty interval with integer ends in 0..k (and inf) admitted by kind."""
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
    if k < 0:
        raise ValueError("menu bound must be non-negative")
    ivs = sorted(
        (iv for iv in _all_intervals(k) if family_admits(kind, iv, k)),
        key=Interval.sort_key,
    )
    return IntervalMenu(kind, k, tuple(ivs))


def custom_menu(intervals, label: str = "custom") -> IntervalMenu:
    ivs = tuple(sorted(set(intervals), key=Interval.sort_key))
    k = max((c for iv in ivs for c in iv.constants()), default=0)
    return IntervalMenu(label, k, ivs)


def check_cap(menu: IntervalMenu, *words, stacklevel: int = 2) -> str | None:
    """Warn (and return the message) when a capped menu does not exceed every timestamp."""
    if not (menu.kind in FAMILY_KINDS and family_is_capped(menu.kind)):
        return None
    latest = max(w.last_time for w in words)
    if menu.k > latest:
        return None
    msg = (
        f"{menu.kind} menu capped at {menu.k} but a timestamp reaches {latest}; "
        "the finite game may differ from the unbounded one"
    )
    warnings.warn(msg, CapWarning, stacklevel=stacklevel)
    return msg


__all__ = [
    "IntervalMenu",
    "build_menu",
    "custom_menu",
    "check_cap",
    "CapWarning",
    "INT",
    "EXT_INT",
    "B_INT",
    "B_EXT_INT",
    "INT_K",
    "B_INT_K",
]
