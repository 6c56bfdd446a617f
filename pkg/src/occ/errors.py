"""Exception types shared across the package."""

from __future__ import annotations


class OccError(Exception):
    """Base class for all errors raised by this package."""


class MalformedSpec(OccError):
    """A code specification is inconsistent (alphabet clash, stale symbol, ...)."""


class SchemaError(OccError):
    """A serialized specification violates the JSON schema."""

    def __init__(self, message: str, path: str = "") -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ParseError(OccError):
    """Input text could not be parsed at all."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InadmissibleWord(OccError):
    """An operation required an admissible word and got something else."""


class WordTooLong(OccError):
    """The brute-force oracle was asked about a word beyond its horizon."""


class NotStabilized(OccError):
    """A finite approximation did not settle within the configured bounds.

    ``trace`` carries whatever partial data was gathered so callers can
    inspect it instead of receiving a guess.
    """

    def __init__(self, message: str, trace: object = None) -> None:
        self.trace = trace
        super().__init__(message)


class NotFound(OccError):
    """A search came back empty; ``diagnostics`` explains each failed clause."""

    def __init__(self, message: str, diagnostics: dict | None = None) -> None:
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class NoPair(OccError):
    """A characteristic pair is required but none was supplied or found."""


class NoSynchronizingSymbols(OccError):
    """The shift has no certified synchronizing symbol."""


class StructureViolation(OccError):
    """A λ-graph system or matrix system fails one of its axioms."""

    def __init__(self, kind: str, level: int, detail: str = "") -> None:
        self.kind = kind
        self.level = level
        self.detail = detail
        super().__init__(f"{kind} violated at level {level}" + (f": {detail}" if detail else ""))


class NotWellDefined(OccError):
    """A lattice map does not carry relations into relations."""


class UnsupportedLevel(OccError):
    """Fixture matrices are only defined from level 2 on."""


class CrosscheckFailure(OccError):
    """Fixture matrices and the generic engine disagree."""

    def __init__(self, check: str, level: int, detail: str = "") -> None:
        self.check = check
        self.level = level
        super().__init__(f"{check} failed at level {level}" + (f": {detail}" if detail else ""))
