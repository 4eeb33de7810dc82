"""Verdict record and the exceptions shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


class BudgetExceeded(RuntimeError):
    """A configured work budget ran out before a verdict was reached."""


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class NotResolvingError(ValueError):
    """An operation that requires a resolving set was given one that is not."""


@dataclass(frozen=True)
class ResolvabilityVerdict:
    """Outcome of a resolvability check.

    ``witness`` is either a pair of vertices with equal distance vectors, or a
    nonzero admissible vector in the kernel of the one-hot matrix; it is
    ``None`` when the set resolves or the checker does not produce witnesses.
    """

    resolving: bool
    method: str
    witness: Optional[Union[tuple, tuple[tuple, tuple]]] = None

    def __bool__(self) -> bool:
        return self.resolving

    @property
    def label(self) -> str:
        return "resolving" if self.resolving else "not resolving"
