"""Exception types shared across the toolkit."""


class CellscopeError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CellscopeError):
    """A reference, formula, or log line failed to parse.

    ``offset`` is the byte offset into the parsed text where the problem
    was detected; ``line`` is set by line-oriented parsers.
    """

    def __init__(self, message, offset=None, line=None):
        super().__init__(message)
        self.offset = offset
        self.line = line

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            msg = f"line {self.line}: {msg}"
        if self.offset is not None:
            msg = f"{msg} (offset {self.offset})"
        return msg


class MissingContextError(ParseError):
    """A bare A1 reference was parsed without a default sheet."""


class LoadError(CellscopeError):
    """A workbook document failed validation.  Carries every problem found."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ClockSkewError(CellscopeError):
    """An event was appended with a timestamp earlier than the last one."""


class ReplayError(CellscopeError):
    """An edit in a session could not be applied to the workbook."""


class UsageError(CellscopeError):
    """An operation was called with arguments outside its contract."""


class DegenerateSampleError(CellscopeError):
    """A statistical routine received a sample with no variance."""


class DegenerateDesignError(CellscopeError):
    """Regression was attempted on a constant predictor."""


class UndefinedCoverageError(CellscopeError):
    """Coverage was requested for a workbook with no data or formula cells."""
