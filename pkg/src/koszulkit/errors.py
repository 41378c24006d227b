"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class KoszulkitError(Exception):
    exit_code = 1


class UsageError(KoszulkitError):
    exit_code = 1


class ParseError(KoszulkitError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class NonHomogeneous(ParseError):
    pass


class DegreeBoundExceeded(KoszulkitError):
    exit_code = 3


class IncompleteBasis(DegreeBoundExceeded):
    pass


class IncompleteTable(DegreeBoundExceeded):
    pass


class InternalCheckError(KoszulkitError):
    """Two independent computations disagreed."""

    exit_code = 4


class ZeroPolynomial(UsageError):
    pass


class InvalidRange(UsageError):
    pass


class CodimZero(UsageError):
    pass


class NotQuadratic(UsageError):
    pass


class TooManyGenerators(UsageError):
    pass


class OverlappingVariables(UsageError):
    pass


class CapTooLow(UsageError):
    pass


class NonMinimalPresentation(UsageError):
    pass
