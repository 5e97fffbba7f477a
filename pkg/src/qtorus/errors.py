"""Exception hierarchy.

Every error carries the process exit code the CLI uses for it, so library
callers and shell scripts see the same classification.
"""

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_HYPOTHESIS = 3
EXIT_INEXACT = 4
EXIT_SELFTEST = 5


class QTorusError(Exception):
    exit_code = EXIT_INVALID

    @property
    def kind(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.kind}: {msg}" if msg else self.kind


# -- input and validation (exit 2) ------------------------------------------

class ParseError(QTorusError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)


class UnknownGenerator(QTorusError):
    pass


class NonUnitRational(QTorusError):
    pass


class TorsionScalar(QTorusError):
    pass


class NotAntisymmetric(QTorusError):
    pass


class NonUnitDiagonal(QTorusError):
    pass


class OverlappingGenerators(QTorusError):
    pass


class LengthMismatch(QTorusError):
    pass


# -- mathematical preconditions ---------------------------------------------

class HypothesisFailed(QTorusError):
    exit_code = EXIT_HYPOTHESIS


class MissingVSet(QTorusError):
    exit_code = EXIT_HYPOTHESIS


class InexactKdim(QTorusError):
    exit_code = EXIT_INEXACT


class BudgetExceeded(QTorusError):
    exit_code = EXIT_SELFTEST


class InternalConsistencyError(QTorusError, AssertionError):
    exit_code = EXIT_SELFTEST
