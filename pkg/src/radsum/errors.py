"""Exception hierarchy.

The split mirrors the CLI exit codes: input problems (1), enumeration size
limits (2), and mathematical-soundness failures (3).  Soundness failures are
kept distinct so pipelines can tell "bug in the bound machinery" apart from
plain misuse.
"""


class RadsumError(Exception):
    """Base class for all package errors."""


class InputError(RadsumError, ValueError):
    """Invalid user input: bad values, malformed grammar, out-of-range args."""


class DegenerateVectorError(InputError):
    """All-zero weight input; no direction to normalize."""


class WrongCaseError(InputError):
    """An operation was applied to a weight vector of the other proof case."""


class SizeLimitError(RadsumError):
    """Instance exceeds the configured enumeration limit."""

    def __init__(self, n: int, limit: int, what: str = "enumeration"):
        self.n = n
        self.limit = limit
        super().__init__(f"instance too large: n={n} exceeds the {what} limit {limit}")


class SoundnessError(RadsumError):
    """A certified bound or verified lemma failed its mathematical guarantee."""
