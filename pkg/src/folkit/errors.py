"""Exception hierarchy shared by every folkit module."""

from __future__ import annotations


class FolkitError(Exception):
    """Base class; the CLI maps these to exit code 3 unless noted otherwise."""

    operation: str | None = None


# -- arithmetic ---------------------------------------------------------------

class ExtensionDegreeExceeded(FolkitError):
    pass


class IncompatibleFields(FolkitError):
    """Two algebraic numbers live in towers that are not nested."""


class PrecisionExhausted(FolkitError):
    """A truncated series was asked for a coefficient it does not know."""


# -- parsing (CLI exit code 2) --------------------------------------------------

class ParseError(SyntaxError, FolkitError):
    def __init__(self, message: str, line: int = 1, column: int = 1, source: str | None = None):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.lineno = line
        self.offset = column
        self.text = source

    @property
    def line(self) -> int:
        return self.lineno

    @property
    def column(self) -> int:
        return self.offset


class UnknownVariable(ParseError):
    pass


class ValidationError(FolkitError):
    def __init__(self, problems: list[str], path: str | None = None):
        self.problems = list(problems)
        self.path = path
        where = f"{path}: " if path else ""
        super().__init__(where + "; ".join(self.problems))


# -- foliation germs ------------------------------------------------------------

class AllZero(FolkitError, ValueError):
    pass


class DimensionUnsupported(FolkitError):
    pass


class DepthExceeded(FolkitError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InvalidBranch(FolkitError):
    pass


class NotSquarefree(FolkitError):
    pass


class NotInvariant(FolkitError):
    pass


class DicriticalInfinitelyMany(FolkitError):
    def __init__(self, message: str, isolated=None):
        super().__init__(message)
        self.isolated = isolated


class NonGenericDirection(FolkitError):
    pass


class EmptyBranchList(FolkitError):
    pass


class NotSecondType(FolkitError):
    pass


class NotAnAutomorphism(FolkitError):
    pass
