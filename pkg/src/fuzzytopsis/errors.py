"""Exception types shared across the package."""

from __future__ import annotations

from typing import Iterable, Tuple


class DecisionError(ValueError):
    """A domain rule was violated.

    Carries a stable machine-readable ``code`` (e.g. ``ORDER_VIOLATION``,
    ``UNKNOWN_TERM``) so callers and tests can dispatch on the violated
    rule instead of matching message text.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class IngestError(DecisionError):
    """An input document failed validation.

    Collects every diagnostic found in the document, not just the first,
    as ``(code, message)`` pairs in document order. ``code`` is the code
    of the first diagnostic.
    """

    def __init__(self, diagnostics: Iterable[Tuple[str, str]]):
        diags = tuple(diagnostics)
        if not diags:
            raise ValueError("IngestError requires at least one diagnostic")
        first_code, first_message = diags[0]
        if len(diags) == 1:
            message = first_message
        else:
            message = f"{len(diags)} problems, first: {first_message}"
        super().__init__(first_code, message)
        self.diagnostics = diags

    @property
    def codes(self) -> set:
        return {code for code, _ in self.diagnostics}
