"""Exception types shared across the package.

Every error raised on purpose by the library derives from SpacingLabError,
so callers (notably the CLI) can map library failures to a single exit
path while genuine bugs still surface as ordinary exceptions.
"""


class SpacingLabError(Exception):
    """Base class for all deliberate library errors."""


class DisjointWindowsError(SpacingLabError):
    """Binary set operation on windows with empty overlap."""


class EmptySetError(SpacingLabError):
    """Operation requires a nonempty set."""


class ArityCapError(SpacingLabError):
    """Generator list longer than the configured arity cap."""


class WindowLengthError(SpacingLabError):
    """Requested sliding-window length exceeds the window size."""


class WindowTooSmallError(SpacingLabError):
    """Window cannot absorb the requested shift budget."""


class TooFewMembersError(SpacingLabError):
    """Operation needs at least two members."""


class PrecisionLossError(SpacingLabError):
    """Arc membership could not be resolved at the working precision."""


class WindowExceededError(SpacingLabError):
    """A required distance falls outside the stored window."""


class WordNotInLanguageError(SpacingLabError):
    """Word is not in the language of the spacing shift."""


class BudgetExceededError(SpacingLabError):
    """Enumeration budget (word length / refinement depth) exceeded."""


class SolverCapError(SpacingLabError):
    """Exact set-cover instance larger than the configured cap."""


class ScheduleTooTightError(SpacingLabError):
    """Construction schedule produced overlapping or invalid chunks."""


class SetFileParseError(SpacingLabError):
    """Malformed set or cover file; carries a line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
