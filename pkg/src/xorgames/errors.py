"""Exception types shared across the toolkit."""

from __future__ import annotations


class XorGamesError(Exception):
    """Base class for toolkit errors."""


class GameFormatError(XorGamesError):
    """Malformed game file. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardExceededError(XorGamesError):
    """An exact enumeration would exceed its configured guard threshold."""


class NotSymmetricError(XorGamesError):
    """Operation requires a symmetric game (closed under query permutations)."""


class SearchCapExceededError(XorGamesError):
    """State cap hit before the bounded search was exhausted.

    Distinct from a completed search that found nothing.
    """

    def __init__(self, states_visited: int, max_len: int):
        self.states_visited = states_visited
        self.max_len = max_len
        super().__init__(
            f"state cap hit after {states_visited} reduced-word states "
            f"(search depth limit {max_len})"
        )
