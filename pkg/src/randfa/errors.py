"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class RandfaError(Exception):
    exit_code = 1


class InvalidParameterError(RandfaError, ValueError):
    exit_code = 2


class InvalidStateError(InvalidParameterError):
    pass


class InvalidWordError(InvalidParameterError):
    pass


class ContractViolationError(RandfaError):
    """An operation was handed input outside its precondition (e.g. a non-accessible DFA)."""

    exit_code = 2


class OracleScaleError(InvalidParameterError):
    """Brute-force oracle refused an instance above its size bound."""


class NoPositiveRootError(RandfaError, ArithmeticError):
    exit_code = 4


class DfaParseError(RandfaError):
    exit_code = 3

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
