"""Pointwise timed temporal logics over finite timed words."""

from .words import TimedWord, WordError, parse_word, serialize_word, untime

__all__ = ["TimedWord", "WordError", "parse_word", "serialize_word", "untime"]
__version__ = "0.1.0"
