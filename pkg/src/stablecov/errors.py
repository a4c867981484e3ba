"""Exception types shared across the library."""


class StableError(Exception):
    """Base class for all library-specific errors.

    ``code`` is a machine-readable slug for CLI error objects; subclasses
    carry a default and constructors may override it for finer cases
    (e.g. unreadable_file vs malformed_json).
    """

    code = "stable_error"

    def __init__(self, message, *, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ValidationError(StableError):
    """Input data violates a structural invariant (bad atom, bad spec file)."""

    code = "validation_error"


class DomainError(StableError):
    """Parameter lies outside the mathematical domain of an operation."""

    code = "domain_error"


class DimensionError(StableError):
    """Vector or measure dimension does not match the operation's contract."""

    code = "dimension_error"


class NumericalError(StableError):
    """A numeric evaluation failed or missed the requested accuracy.

    ``atom`` optionally carries the offending spectral atom, ``estimate`` the
    error estimate that tripped the failure.
    """

    code = "numerical_error"

    def __init__(self, message, *, atom=None, estimate=None, code=None):
        super().__init__(message, code=code)
        self.atom = atom
        self.estimate = estimate


class DegenerateError(StableError):
    """An operation hit a degenerate configuration (e.g. a zero norm)."""

    code = "degenerate_error"


class DegenerateMapError(DegenerateError):
    """A linear pushforward collapsed to the zero measure."""

    code = "degenerate_map_error"


class AxisSupportError(StableError):
    """Measure support violates an axis-support precondition."""

    code = "axis_support_error"


class TruncationError(StableError):
    """A series did not reach the requested tolerance within the term cap.

    ``expansion`` carries the partial expansion computed so far.
    """

    code = "truncation_error"

    def __init__(self, message, *, expansion=None, code=None):
        super().__init__(message, code=code)
        self.expansion = expansion
