"""Exception types shared across the package.

Checks that *report* problems (graph validation, interpretation checks)
return report objects instead of raising; exceptions are reserved for
misuse of an operation or for refusing work that would be unsound or
unbounded.
"""
from __future__ import annotations


class ProtoAlgError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertex(ProtoAlgError):
    """A vertex id was not found in the graph."""


class InvalidGraph(ProtoAlgError):
    """A graph failed the algorithm-graph conditions where validity is required."""


class UnknownSymbol(ProtoAlgError):
    """A function or predicate symbol is not part of the alphabet."""


class ArityMismatch(ProtoAlgError):
    """An expression or value does not fit the declared arity."""


class DomainViolation(ProtoAlgError):
    """A value escaped the domain it was declared to stay in.

    Carries the offending value so reports can show a witness.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class EvalOverflow(ProtoAlgError):
    """An expression result left the signed 64-bit range."""


class ExtentTooLarge(ProtoAlgError):
    """A domain extent exceeds the exhaustive-check cap; the check is refused."""


class MalformedState(ProtoAlgError):
    """A state refers to an unknown vertex or carries an out-of-domain value."""


class InputNotInDomain(ProtoAlgError):
    """A run was started on a value outside the input domain."""


class BudgetExceeded(ProtoAlgError):
    """A search exhausted its node or candidate budget."""


class NonLinearSpec(ProtoAlgError):
    """A recursive specification has a right-hand side outside the linear fragment."""


class AmbiguousGuards(ProtoAlgError):
    """More than one distinct summand survived guard evaluation during unfolding."""


class OpenCondition(ProtoAlgError):
    """A flexible variable escaped the valuation while evaluating a term."""


class PredicateCycleError(ProtoAlgError):
    """The concealed step function revisited a predicate vertex (predicate-only cycle)."""


class NotAlgorithmProcess(ProtoAlgError):
    """A recursion constant failed the algorithm-process shape check."""

    def __init__(self, message: str, diagnosis: str | None = None):
        super().__init__(message)
        self.diagnosis = diagnosis or message


class MismatchedSignature(ProtoAlgError):
    """Two proto-algorithms do not share the alphabet/interpretation required here."""
