"""Types shared by the game modules."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from owenset.core.errors import NotAnImputation

# Agent id -> exact share (profit for flow and matching games, cost for branching)
Imputation = dict[int, Fraction]


class GameKind(str, Enum):
    MAXFLOW = "maxflow"
    BRANCHING = "branching"
    MST = "mst"
    BMATCHING = "bmatching"


@dataclass(frozen=True)
class OwenVerdict:
    """Answer of an Owen-set membership check.

    ``certificate`` is the optimal dual witnessing membership when ``member`` is true;
    ``reason`` explains a refusal.
    """

    member: bool
    certificate: Any = None
    reason: str = ""

    @classmethod
    def yes(cls, certificate: Any) -> OwenVerdict:
        return cls(member=True, certificate=certificate)

    @classmethod
    def no(cls, reason: str) -> OwenVerdict:
        return cls(member=False, reason=reason)

    def __bool__(self) -> bool:
        return self.member


def as_fraction(value: Any) -> Fraction:
    """Convert ints, Fractions and "p/q" strings to Fraction. Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use 'p/q' strings")
    return Fraction(value)


def require_imputation(
    imputation: Mapping[int, Fraction], agents: tuple[int, ...], worth: Fraction
) -> Imputation:
    """Check that ``imputation`` covers exactly ``agents`` and sums to ``worth``."""
    unknown = set(imputation) - set(agents)
    if unknown:
        raise NotAnImputation(f"Unknown agents in imputation: {sorted(unknown)}")
    shares = {agent: Fraction(imputation.get(agent, 0)) for agent in agents}
    total = sum(shares.values(), Fraction(0))
    if total != worth:
        raise NotAnImputation(f"Shares sum to {total}, game worth is {worth}")
    return shares
