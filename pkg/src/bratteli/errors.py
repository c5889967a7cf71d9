"""Exception hierarchy shared by every module.

All validation failures raise a subclass of BratteliError so the CLI can map
them to exit status 2 uniformly.
"""

from __future__ import annotations


class BratteliError(Exception):
    pass


class ParseError(BratteliError):
    """Bad input text (substitution spec, path literal, L-polynomial)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class UnknownLetter(ParseError):
    pass


class EmptyRule(ParseError):
    pass


class NotPrimitive(BratteliError):
    pass


class PeriodicDetected(BratteliError):
    """Morse-Hedlund screen found p(n) <= n, so the subshift is periodic."""

    def __init__(self, n: int, complexity: int):
        super().__init__(f"periodic substitution: complexity p({n}) = {complexity} <= {n}")
        self.n = n
        self.complexity = complexity


class NoRootAboveOne(BratteliError):
    pass


class FieldMismatch(BratteliError):
    pass


class SingularSystem(BratteliError):
    pass


class IllegalCollarProduced(BratteliError):
    pass


class UnpairedExtreme(BratteliError):
    pass


class IncompatibleHorizontal(BratteliError):
    pass
