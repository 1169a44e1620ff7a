"""Exception types raised by the patcount package."""


class PatcountError(Exception):
    """Base class for all patcount errors."""


class DuplicateValue(PatcountError):
    """Two entries of the raw input sequence are equal."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"duplicate value at positions {i} and {j} (1-based)")


class InvalidPattern(PatcountError):
    """The pattern is not a permutation of 1..k with 1 <= k <= 5."""


class PatternTooLong(PatcountError):
    """A k <= 3 routine was handed a longer pattern."""


class InvalidEpsilon(PatcountError):
    """epsilon is outside (0, 1)."""


class InvalidRange(PatcountError):
    """A rectangle query violates 1 <= i <= j <= n or 1 <= a <= b <= n."""


class RankOutOfRange(PatcountError):
    """A selection rank is outside 1..count."""


class NotDisjoint(PatcountError):
    """cross_rect_12 was called on overlapping rectangles."""


class NotSpecialCase(PatcountError):
    """The factorization fallback was invoked on a non-qualifying configuration."""


class InvalidRecipe(PatcountError):
    """A recipe failed the validity checker."""


class MissingRecipe(PatcountError):
    """The recipe table lacks an entry for a (pattern, configuration) pair."""


class CoverageGap(PatcountError):
    """Recipe search failed for a (pattern, configuration) pair; build-breaking."""

    def __init__(self, pattern, config):
        self.pattern = pattern
        self.config = config
        super().__init__(f"no valid recipe and no factorization for {pattern} at {config}")


class ParseError(PatcountError):
    """A recipe table file line could not be parsed."""

    def __init__(self, lineno: int, reason: str):
        self.lineno = lineno
        self.reason = reason
        super().__init__(f"line {lineno}: {reason}")


class ExactOverflow(PatcountError):
    """Exact mode would exceed the 64-bit integer accumulators."""
