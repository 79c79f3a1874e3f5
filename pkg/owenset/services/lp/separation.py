"""Constraint generation against a separation oracle."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from fractions import Fraction

from owenset.core.config import settings
from owenset.core.errors import OracleContractViolation, RoundLimitExceeded
from owenset.services.lp.model import Constraint, LinearProgram, LpSolution, Status
from owenset.services.lp.simplex import SimplexTableau, finish

logger = logging.getLogger(__name__)

# Candidate point -> None when feasible, else one or more violated constraints
SeparationOracle = Callable[[tuple[Fraction, ...]], Constraint | Sequence[Constraint] | None]


def feasible_oracle(point: tuple[Fraction, ...]) -> None:
    """Oracle that accepts every point."""
    return None


def default_round_limit(lp: LinearProgram) -> int:
    return settings.SEPARATION_ROUND_FACTOR * max(1, lp.num_variables + len(lp.constraints))


def _as_cuts(answer: Constraint | Sequence[Constraint] | None) -> list[Constraint]:
    if answer is None:
        return []
    if isinstance(answer, Constraint):
        return [answer]
    return list(answer)


def solve_with_separation(
    base: LinearProgram,
    oracle: SeparationOracle,
    max_rounds: int | None = None,
) -> LpSolution:
    """Solve ``base`` subject to every constraint the oracle can produce.

    Each round solves the current relaxation, asks the oracle about its optimum and
    appends the returned cuts to the live tableau; the dual simplex then restores
    optimality. The loop stops when the oracle reports the point feasible.

    Args:
        base: The starting relaxation; it is not modified.
        oracle: Maps a candidate point to None (feasible) or violated constraints.
        max_rounds: Round budget; defaults to the configured factor times the size of
            the base model.

    Returns:
        The solution of the final relaxation. Its duals cover the base rows followed by
        the generated cuts, which are listed in ``cuts``.

    Raises:
        OracleContractViolation: If a returned constraint holds at the candidate point.
        RoundLimitExceeded: If the oracle keeps returning cuts after ``max_rounds``.
    """
    limit = default_round_limit(base) if max_rounds is None else max_rounds
    lp = base.copy()
    tableau = SimplexTableau(lp)
    status = tableau.solve()
    cuts: list[Constraint] = []
    rounds = 0

    while status is Status.OPTIMAL:
        point = tableau.primal_values()
        found = _as_cuts(oracle(point))
        if not found:
            break
        rounds += 1
        if rounds > limit:
            logger.error(f"Constraint generation exceeded {limit} rounds")
            raise RoundLimitExceeded(f"No convergence within {limit} separation rounds")
        for cut in found:
            slack = cut.slack(point)
            if slack >= 0:
                raise OracleContractViolation(
                    f"Oracle returned '{cut.name}' which the candidate satisfies "
                    f"(slack {slack})"
                )
            owner = lp.add_constraint(cut)
            tableau.add_row(cut, owner)
            cuts.append(cut)
        logger.debug(f"Separation round {rounds}: added {len(found)} cut(s)")
        status = tableau.reoptimize()

    logger.debug(f"Constraint generation finished after {rounds} rounds: {status.value}")
    return finish(tableau, status, tuple(cuts))
