"""Randomized refutation of leximin / leximax candidates."""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from owenset.services.leximin.engine import Agent, LeximinProblem, LpRoundSolver
from owenset.services.lp import SeparationOracle, Sense, Status, solve, solve_with_separation

logger = logging.getLogger(__name__)

WEIGHT_RANGE = 5


@dataclass(frozen=True)
class NotDominated:
    samples: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Dominated:
    witness: dict[Agent, Fraction]

    def __bool__(self) -> bool:
        return False


def dominates(
    challenger: Mapping[Agent, Fraction], candidate: Mapping[Agent, Fraction], leximax: bool
) -> bool:
    """Whether ``challenger`` is strictly better than ``candidate`` in the chosen order."""
    if leximax:
        return sorted(challenger.values(), reverse=True) < sorted(
            candidate.values(), reverse=True
        )
    return sorted(challenger.values()) > sorted(candidate.values())


def verify_leximin(
    problem: LeximinProblem,
    candidate: Mapping[Agent, Fraction],
    sample_count: int,
    seed: int,
    separation: SeparationOracle | None = None,
    leximax: bool = False,
) -> NotDominated | Dominated:
    """Look for feasible share vectors on the optimal face that beat ``candidate``.

    Samples are optima of random integer objectives over the face, plus their midpoints
    with the candidate and with the previous sample (share maps are linear, so midpoints
    of feasible share vectors are feasible).
    """
    rng = random.Random(seed)
    face = LpRoundSolver(problem, separation).face()
    agents = problem.agents
    previous: dict[Agent, Fraction] | None = None

    for _ in range(sample_count):
        weights = {agent: rng.randint(-WEIGHT_RANGE, WEIGHT_RANGE) for agent in agents}
        objective: dict[int, Fraction] = {}
        for agent, weight in weights.items():
            for j, c in problem.shares[agent].items():
                objective[j] = objective.get(j, Fraction(0)) + weight * c
        lp = face.copy()
        lp.set_objective(objective, Sense.MAX)
        solution = solve(lp) if separation is None else solve_with_separation(lp, separation)
        if solution.status is not Status.OPTIMAL:
            continue

        vertex = problem.share_values(solution.values)
        challengers = [vertex, _midpoint(vertex, candidate)]
        if previous is not None:
            challengers.append(_midpoint(vertex, previous))
        for challenger in challengers:
            if dominates(challenger, candidate, leximax):
                logger.info(f"Candidate dominated by sampled shares {challenger}")
                return Dominated(witness=challenger)
        previous = vertex
    return NotDominated(samples=sample_count)


def _midpoint(
    a: Mapping[Agent, Fraction], b: Mapping[Agent, Fraction]
) -> dict[Agent, Fraction]:
    return {agent: (a[agent] + Fraction(b[agent])) / 2 for agent in a}
