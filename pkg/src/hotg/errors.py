"""Exception hierarchy shared by every layer of the checker.

Each class name doubles as the machine-readable error code used in reports.
"""

from __future__ import annotations


class HotgError(Exception):
    """Base class for all checker errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# -- core terms ---------------------------------------------------------------


class IndexUnderflow(HotgError):
    pass


class IllTyped(HotgError):
    """A term failed to type-check."""


class UnboundVar(IllTyped):
    pass


class ArityMismatch(IllTyped):
    pass


class IllTypedApp(IllTyped):
    pass


class NonPropConnective(IllTyped):
    pass


class TVarOutOfScope(IllTyped):
    pass


class UnknownRef(IllTyped):
    pass


class TypeMismatch(HotgError):
    pass


# -- kernel ---------------------------------------------------------------------


class CheckError(HotgError):
    """A proof or declaration was rejected by the kernel."""


class UnknownAxiom(CheckError):
    pass


class UnknownHyp(CheckError):
    pass


class NotAnImplication(CheckError):
    pass


class NotAForall(CheckError):
    pass


class PropMismatch(CheckError):
    pass


class IllTypedWitness(CheckError):
    pass


class ShadowedHyp(CheckError):
    pass


class DuplicateName(CheckError):
    pass


class InvalidName(CheckError):
    pass


class ArityTooLarge(CheckError):
    pass


class ProofDoesNotMatchStatement(CheckError):
    pass


class TrustDisabled(CheckError):
    pass


# -- syntax and scripts ------------------------------------------------------------


class SourceError(HotgError):
    """An error that points into source text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class LexError(SourceError):
    pass


class ParseError(SourceError):
    pass


class DuplicateDeclaration(SourceError):
    pass


class UnknownName(SourceError):
    pass


class GoalMismatch(SourceError):
    pass


class LeftoverGoals(SourceError):
    pass


class ElaborationError(SourceError):
    """Kernel or typing error raised while elaborating a script step."""

    def __init__(self, cause: HotgError, line: int | None = None, column: int | None = None):
        self.cause = cause
        super().__init__(f"{cause.code}: {cause}", line, column)

    @property
    def code(self) -> str:
        return self.cause.code


# -- driver ------------------------------------------------------------------------


class CycleDetected(HotgError):
    pass


class MissingImport(HotgError):
    pass


class BudgetExceeded(HotgError):
    pass
