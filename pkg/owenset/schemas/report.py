"""Pydantic schema for command results."""

from __future__ import annotations

import logging
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from owenset.core.config import settings
from owenset.schemas.instance_file import Rational

logger = logging.getLogger(__name__)


def approximate(value: Fraction, places: int | None = None) -> str:
    """Decimal rendering of an exact value, rounded half-even to ``places`` digits."""
    places = settings.DECIMAL_PLACES if places is None else places
    return f"{value:.{places}f}"


class ResultReport(BaseModel):
    """Outcome of one command; rationals are kept as exact strings."""

    command: str = Field(..., description="Subcommand that produced the report")
    game: str = Field(..., description="Game kind of the instance")
    method: str | None = Field(None, description="Solution method, when one applies")
    worth: Rational | None = Field(None, description="Worth or cost of the grand coalition")
    shares: dict[str, Rational] = Field(default_factory=dict, description="Agent -> share")
    certificate: dict[str, str] = Field(
        default_factory=dict, description="Dual solution witnessing Owen membership"
    )
    verdicts: dict[str, bool] = Field(default_factory=dict, description="Check -> passed")
    reasons: list[str] = Field(default_factory=list, description="Why a check failed")
    agree: bool | None = Field(None, description="Cross-method agreement for method 'both'")
    elapsed_seconds: float = Field(0.0, exclude=True, description="Wall time of the command")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values()) and self.agree is not False

    def to_machine(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

    def to_human(self, places: int | None = None) -> str:
        lines = [f"{self.command} ({self.game}" + (f", {self.method})" if self.method else ")")]
        if self.worth is not None:
            lines.append(f"worth: {self.worth}  (~{approximate(self.worth, places)})")
        if self.shares:
            width = max(len(name) for name in self.shares)
            lines.append("shares (exact, ~approximate):")
            for name, value in self.shares.items():
                lines.append(f"  {name:<{width}}  {value}  (~{approximate(value, places)})")
        for check, passed in self.verdicts.items():
            lines.append(f"{check}: {'yes' if passed else 'no'}")
        for reason in self.reasons:
            lines.append(f"  reason: {reason}")
        if self.agree is not None:
            lines.append(f"methods agree: {'true' if self.agree else 'false'}")
        if self.certificate:
            lines.append("certificate:")
            lines.extend(f"  {key} = {value}" for key, value in self.certificate.items())
        lines.append(f"elapsed: {self.elapsed_seconds:.3f}s")
        return "\n".join(lines)
