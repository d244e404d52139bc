import random
from fractions import Fraction

import pytest

from timedlogic.logic.syntax import parse_formula
from timedlogic.words import TimedWord

ACCEPTANCE_LINES: list[str] = []


def W(*pairs, monotonicity=None) -> TimedWord:
    """W(("a", 0), ("b", "3/2")) with exact timestamps."""
    return TimedWord.of(pairs, monotonicity)


def mtl(text):
    return parse_formula(text, "mtl")


def tptl(text):
    return parse_formula(text, "tptl")


def ttl(text):
    return parse_formula(text, "ttl")


def q(text) -> Fraction:
    return Fraction(text)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def record_acceptance():
    def record(line: str) -> None:
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
