"""Exception types shared across the package."""


class InputFormatError(ValueError):
    """Malformed textual input (word, morphism, equation or report files)."""


class TheoremCheckError(AssertionError):
    """A mathematically guaranteed identity failed to hold.

    Raised by the self-checking operations and the theorem-check reports.
    Seeing this exception means an implementation bug, not bad input.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
