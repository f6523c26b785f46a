"""Exception types and validation violations."""
from __future__ import annotations

from dataclasses import dataclass


class FincatError(Exception):
    pass


class SizeLimitExceeded(FincatError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds size cap {limit}")
        self.what = what
        self.limit = limit


class ParseError(FincatError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Violation:
    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class DuplicateId(Violation):
    ident: object

    def describe(self):
        return f"DuplicateId({self.ident})"


@dataclass(frozen=True)
class UnknownObject(Violation):
    morphism: object
    obj: object

    def describe(self):
        return f"UnknownObject({self.morphism}: {self.obj})"


@dataclass(frozen=True)
class MissingComposite(Violation):
    g: object
    f: object

    def describe(self):
        return f"MissingComposite({self.g}, {self.f})"


@dataclass(frozen=True)
class IllTypedComposite(Violation):
    g: object
    f: object
    h: object
    reason: str

    def describe(self):
        return f"IllTypedComposite({self.g} . {self.f} = {self.h}: {self.reason})"


@dataclass(frozen=True)
class UnitLawViolation(Violation):
    morphism: object
    side: str

    def describe(self):
        return f"UnitLawViolation({self.morphism}, {self.side})"


@dataclass(frozen=True)
class AssociativityViolation(Violation):
    h: object
    g: object
    f: object

    def describe(self):
        return f"AssociativityViolation({self.h}, {self.g}, {self.f})"


class CategoryValidationError(FincatError, ValueError):
    """Raised with the complete list of violations found in a description."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(v.describe() for v in self.violations[:10])
        more = len(self.violations) - 10
        if more > 0:
            lines += f"; ... ({more} more)"
        super().__init__(lines)
