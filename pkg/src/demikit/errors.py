"""Exception types with stable machine-readable codes.

Every error raised by the public API carries a ``code`` string so that
callers (and the CLI) can branch on the failure kind without parsing
messages.
"""


class DemikitError(Exception):
    """Base class; ``code`` identifies the failure kind."""

    code = "error"

    def __init__(self, message: str | None = None):
        super().__init__(message if message is not None else self.code)


class DimMismatchError(DemikitError):
    code = "dim-mismatch"


class StepOutOfRangeError(DemikitError):
    code = "step-out-of-range"


class UnboundedDomainError(DemikitError):
    code = "unbounded-domain"


class AlphaOutOfRangeError(DemikitError):
    code = "alpha-out-of-range"


class LambdaOutOfRangeError(DemikitError):
    code = "lambda-out-of-range"


class KOutOfRangeError(DemikitError):
    code = "k-out-of-range"


class FixUnknownError(DemikitError):
    code = "fix-unknown"


class ConstantOutOfRangeError(DemikitError):
    code = "constant-out-of-range"


class StartOutOfDomainError(DemikitError):
    code = "start-out-of-domain"


class UnknownMappingError(DemikitError):
    code = "unknown-mapping"
