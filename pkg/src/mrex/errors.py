"""Exception hierarchy shared across the package."""


class MrexError(Exception):
    """Base class for all package-specific errors."""


class NetworkFormatError(MrexError):
    """Malformed network file or binding expression."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroProbabilityEvidence(MrexError):
    """The evidence has probability zero, so conditional queries are undefined."""


class DegenerateExplanation(MrexError):
    """A query hypothesis has prior 0 or 1 and cannot be weighed against alternatives."""


class BudgetExceeded(MrexError):
    """A joint-table or candidate-enumeration size limit was exceeded."""


class NoAdmissibleExplanation(MrexError):
    """Every candidate explanation was rejected as degenerate."""


class CaseGenerationExhausted(MrexError):
    """No test case satisfied the filters within the attempt budget."""
