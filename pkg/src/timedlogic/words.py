"""Finite timed words with exact rational timestamps."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

LETTER_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_NUMBER_RE = re.compile(r"\d+(/\d+|\.\d+)?\Z")

WEAK = "weak"
STRICT = "strict"


class WordError(ValueError):
    """Raised for malformed or non-monotonic timed words."""


def to_rational(value) -> Fraction:
    """Exact conversion; strings may be `p/q`, integers or decimals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _NUMBER_RE.match(text.lstrip("-")):
            raise WordError(f"not a rational timestamp: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact timestamp")


@dataclass(frozen=True)
class TimedWord:
    events: tuple[tuple[str, Fraction], ...]
    monotonicity: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        if self.monotonicity is None:
            object.__setattr__(self, "monotonicity", _infer(self.events))
        if not self.events:
            raise WordError("a timed word needs at least one event")
        prev = None
        for letter, t in self.events:
            if not LETTER_RE.match(letter):
                raise WordError(f"bad letter {letter!r}")
            if not isinstance(t, Fraction):
                raise TypeError("timestamps must be Fractions")
            if t < 0:
                raise WordError(f"negative timestamp {t}")
            if prev is not None:
                if t < prev:
                    raise WordError(f"decreasing timestamps: {prev} then {t}")
                if self.monotonicity == STRICT and t == prev:
                    raise WordError(f"repeated timestamp {t} in a strict word")
            prev = t
        if self.monotonicity not in (WEAK, STRICT):
            raise WordError(f"unknown monotonicity {self.monotonicity!r}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, object]], monotonicity: str | None = None) -> "TimedWord":
        """Build from (letter, timestamp) pairs; infers strictness when not given."""
        return cls(tuple((a, to_rational(t)) for a, t in pairs), monotonicity)

    def __len__(self) -> int:
        return len(self.events)

    def letter(self, i: int) -> str:
        """Letter at 1-based position i."""
        return self.events[i - 1][0]

    def time(self, i: int) -> Fraction:
        """Timestamp at 1-based position i."""
        return self.events[i - 1][1]

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.events)

    @property
    def times(self) -> tuple[Fraction, ...]:
        return tuple(t for _, t in self.events)

    @property
    def anchored_zero(self) -> bool:
        return self.events[0][1] == 0

    @property
    def last_time(self) -> Fraction:
        return self.events[-1][1]

    def positions(self) -> range:
        return range(1, len(self.events) + 1)

    def check_position(self, i: int) -> None:
        if not 1 <= i <= len(self.events):
            raise IndexError(f"position {i} outside 1..{len(self.events)}")

    def __str__(self) -> str:
        return "".join(f"({a},{t})" for a, t in self.events)


def _infer(events: Sequence[tuple[str, Fraction]]) -> str:
    times = [t for _, t in events]
    if all(a < b for a, b in zip(times, times[1:])):
        return STRICT
    return WEAK


def parse_word(text: str) -> TimedWord:
    """Parse the line format `<letter> <timestamp>`; `#` starts a comment line."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise WordError(f"line {lineno}: expected '<letter> <timestamp>', got {raw!r}")
        letter, stamp = parts
        if not LETTER_RE.match(letter):
            raise WordError(f"line {lineno}: bad letter {letter!r}")
        try:
            t = to_rational(stamp)
        except (WordError, ZeroDivisionError) as exc:
            raise WordError(f"line {lineno}: {exc}") from None
        if t < 0:
            raise WordError(f"line {lineno}: negative timestamp {stamp}")
        if events and t < events[-1][1]:
            raise WordError(f"line {lineno}: decreasing timestamps ({events[-1][1]} then {t})")
        events.append((letter, t))
    if not events:
        raise WordError("empty word")
    return TimedWord(tuple(events), _infer(events))


def serialize_word(w: TimedWord) -> str:
    return "\n".join(f"{a} {t.numerator}/{t.denominator}" for a, t in w.events)


def untime(w: TimedWord) -> str:
    """Letter projection, space-free when every letter is a single character."""
    if all(len(a) == 1 for a in w.letters):
        return "".join(w.letters)
    return " ".join(w.letters)
