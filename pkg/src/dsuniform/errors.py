"""Exception hierarchy and the check-result type shared across modules."""

from __future__ import annotations

from dataclasses import dataclass


class DsError(ValueError):
    """Base class for every input or precondition error raised by the package."""


class OrdinalSyntaxError(DsError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class SequenceError(DsError):
    """A sequence of ordinals is not strictly decreasing."""


class TreeError(DsError):
    def __init__(self, message: str, missing: tuple = ()):
        super().__init__(message)
        self.missing = missing


class GraftError(DsError):
    def __init__(self, message: str, node: tuple):
        super().__init__(message)
        self.node = node


class DomainError(DsError):
    pass


class PreconditionError(DsError):
    pass


class UnrealizableInvariant(DsError):
    pass


class FormatError(DsError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class BudgetExceeded(DsError):
    """A configured node or search budget ran out; the answer is unknown."""


class InfeasibleTarget(DsError):
    pass


class NotEndUniform(DsError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class AmbiguousClassValue(RuntimeError):
    """Two witnesses for one similarity class gave different colours.

    Unreachable when the end-uniformity precondition holds.
    """


class StageFailure(DsError):
    def __init__(self, stage: int, reason: str):
        super().__init__(f"stage {stage}: {reason}")
        self.stage = stage
        self.reason = reason


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate check; truthy iff the predicate holds.

    ``witness`` holds the violating objects on failure and ``checked`` counts
    the elementary comparisons that were made.
    """

    ok: bool
    reason: str = ""
    witness: tuple = ()
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok
