"""Exception hierarchy shared across the package."""


class SpecdimError(Exception):
    """Base class for all package-specific failures."""


class InputError(SpecdimError, ValueError):
    """Malformed or out-of-contract input data."""


class CsvFormatError(InputError):
    """A delimited input file failed validation.

    Carries the 1-based line number of the offending row so command-line
    callers can report it.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfiniteMeasureError(SpecdimError):
    """A distribution function is infinite at every level and has no
    representable tail."""


class IndeterminateError(SpecdimError):
    """A heuristic classifier could not reach a verdict on the available
    data and no override was supplied."""


class BranchContradictionError(SpecdimError):
    """Numerical evidence contradicts a structural assumption of the
    branch in use: a divergent integral inside the summable branch, or
    a growth classifier losing monotonicity across probes."""


class PositivityViolationError(SpecdimError):
    """A kernel flagged positive fails a positivity consequence
    (negative diagonal quadratic form, or an off-diagonal entry
    exceeding the diagonal supremum)."""


class ResourceLimitError(SpecdimError):
    """A request exceeds a hard resource guard (buffer sizes, element-wise
    stream lengths)."""


class OracleMismatchError(SpecdimError):
    """An independent oracle disagrees with the engine beyond tolerance."""
