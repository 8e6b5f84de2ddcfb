"""Uniform result type for the semi-decidable checks.

Every checker answers with a Verdict: Proven carries a checkable witness,
Refuted carries a replayable counterexample, UnknownAtBound means the
budget ran out before either was established.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

PROVEN = "proven"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Any = None
    counterexample: Any = None
    bound: int | None = None

    @staticmethod
    def proven(witness: Any = None) -> "Verdict":
        return Verdict(PROVEN, witness=witness)

    @staticmethod
    def refuted(counterexample: Any = None) -> "Verdict":
        return Verdict(REFUTED, counterexample=counterexample)

    @staticmethod
    def unknown(bound: int) -> "Verdict":
        return Verdict(UNKNOWN, bound=bound)

    @property
    def is_proven(self) -> bool:
        return self.status == PROVEN

    @property
    def is_refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN
