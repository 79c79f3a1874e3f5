"""Iterative leximin and leximax over the optimal face of an LP.

Each round maximizes (or, for leximax, minimizes) a bound ``alpha`` on every share not
yet fixed while the fixed shares keep their values. Agents whose share row carries a
nonzero optimal dual sit at ``alpha`` in every optimum of that round, so they are fixed.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol

from owenset.core.errors import (
    InfeasibleBase,
    MalformedModel,
    NoPositiveDual,
    SolverError,
    UnboundedBase,
)
from owenset.services.lp import (
    Constraint,
    LinearExpression,
    LinearProgram,
    LpSolution,
    Relation,
    SeparationOracle,
    Sense,
    Status,
    solve,
    solve_with_separation,
)

logger = logging.getLogger(__name__)

Agent = Hashable


@dataclass(frozen=True)
class LeximinProblem:
    """A base LP and the share expression of every tracked agent."""

    base: LinearProgram
    shares: Mapping[Agent, LinearExpression]

    def __post_init__(self) -> None:
        if not self.shares:
            raise MalformedModel("A leximin problem needs at least one tracked agent")
        n = self.base.num_variables
        for agent, expression in self.shares.items():
            for j in expression:
                if not 0 <= j < n:
                    raise MalformedModel(f"Share of {agent!r} refers to unknown variable {j}")

    @classmethod
    def of_variables(cls, base: LinearProgram, variables: Sequence[int]) -> LeximinProblem:
        """Track the listed variables themselves, keyed by variable index."""
        return cls(base, {j: {j: Fraction(1)} for j in variables})

    @property
    def agents(self) -> tuple[Agent, ...]:
        return tuple(self.shares)

    def share_values(self, point: Sequence[Fraction]) -> dict[Agent, Fraction]:
        return {
            agent: sum((c * point[j] for j, c in expression.items()), Fraction(0))
            for agent, expression in self.shares.items()
        }


@dataclass(frozen=True)
class RoundOutcome:
    alpha: Fraction
    duals: Mapping[Agent, Fraction]
    point: tuple[Fraction, ...] | None = None


class RoundSolver(Protocol):
    def solve_round(
        self, fixed: Mapping[Agent, Fraction], unfixed: Sequence[Agent], maximize: bool
    ) -> RoundOutcome: ...


@dataclass(frozen=True)
class LeximinRound:
    alpha: Fraction
    fixed: tuple[Agent, ...]
    duals: Mapping[Agent, Fraction]


@dataclass(frozen=True)
class LeximinResult:
    shares: dict[Agent, Fraction]
    rounds: tuple[LeximinRound, ...] = field(default_factory=tuple)
    point: tuple[Fraction, ...] | None = None

    @property
    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(r.alpha for r in self.rounds)


def _solve(lp: LinearProgram, separation: SeparationOracle | None) -> LpSolution:
    return solve(lp) if separation is None else solve_with_separation(lp, separation)


class LpRoundSolver:
    """Round LPs built directly on the base model of a LeximinProblem."""

    def __init__(self, problem: LeximinProblem, separation: SeparationOracle | None = None):
        self.problem = problem
        self.separation = separation
        base = _solve(problem.base, separation)
        if base.status is Status.INFEASIBLE:
            raise InfeasibleBase("The base LP has no feasible point")
        if base.status is Status.UNBOUNDED:
            raise UnboundedBase("The base LP is unbounded")
        self.optimum: Fraction = base.objective  # type: ignore[assignment]
        # cuts found for the base stay valid for every round
        self.cuts: tuple[Constraint, ...] = base.cuts

    def face(self) -> LinearProgram:
        """Base model restricted to its optimal face."""
        lp = self.problem.base.copy()
        for cut in self.cuts:
            lp.add_constraint(cut)
        if lp.objective:
            lp.add_constraint(dict(lp.objective), Relation.EQ, self.optimum, name="objective-pin")
        return lp

    def solve_round(
        self, fixed: Mapping[Agent, Fraction], unfixed: Sequence[Agent], maximize: bool
    ) -> RoundOutcome:
        lp = self.face()
        alpha = lp.add_variable("alpha", free=True)
        rows: dict[Agent, int] = {}
        for agent in unfixed:
            coefficients = dict(self.problem.shares[agent])
            coefficients[alpha] = coefficients.get(alpha, Fraction(0)) - 1
            relation = Relation.GE if maximize else Relation.LE
            rows[agent] = lp.add_constraint(coefficients, relation, 0, name=f"share:{agent}")
        for agent, value in fixed.items():
            lp.add_constraint(self.problem.shares[agent], Relation.EQ, value, name=f"fix:{agent}")
        lp.set_objective({alpha: 1}, Sense.MAX if maximize else Sense.MIN)

        solution = _solve(lp, self.separation)
        if solution.status is Status.UNBOUNDED:
            raise UnboundedBase("Shares are unbounded over the optimal face")
        if solution.status is not Status.OPTIMAL:
            raise SolverError(f"Round LP became {solution.status.value}")
        return RoundOutcome(
            alpha=solution.values[alpha],
            duals={agent: solution.duals[row] for agent, row in rows.items()},
            point=solution.values[: self.problem.base.num_variables],
        )


def fix_iteratively(
    agents: Sequence[Agent], solver: RoundSolver, maximize: bool = True
) -> LeximinResult:
    """Run fixing rounds until every agent has a value.

    Raises:
        NoPositiveDual: If a round leaves every unfixed agent with a zero dual.
        SolverError: If the round values stop being monotone.
    """
    fixed: dict[Agent, Fraction] = {}
    unfixed = list(agents)
    rounds: list[LeximinRound] = []
    point = None
    while unfixed:
        outcome = solver.solve_round(dict(fixed), tuple(unfixed), maximize)
        newly = tuple(agent for agent in unfixed if outcome.duals.get(agent, 0) != 0)
        if not newly:
            logger.error(f"Round {len(rounds) + 1}: no unfixed agent has a nonzero dual")
            raise NoPositiveDual("No agent could be fixed in this round")
        if rounds:
            previous = rounds[-1].alpha
            if (maximize and outcome.alpha < previous) or (
                not maximize and outcome.alpha > previous
            ):
                raise SolverError(
                    f"Round value {outcome.alpha} breaks monotonicity after {previous}"
                )
        for agent in newly:
            fixed[agent] = outcome.alpha
        unfixed = [agent for agent in unfixed if agent not in fixed]
        rounds.append(LeximinRound(alpha=outcome.alpha, fixed=newly, duals=dict(outcome.duals)))
        point = outcome.point
        logger.info(
            f"{'Leximin' if maximize else 'Leximax'} round {len(rounds)}: "
            f"alpha={outcome.alpha}, fixed {list(newly)}"
        )
    return LeximinResult(
        shares={agent: fixed[agent] for agent in agents}, rounds=tuple(rounds), point=point
    )


def leximin(problem: LeximinProblem, separation: SeparationOracle | None = None) -> LeximinResult:
    """Leximin point of the tracked shares over the optimal face of ``problem.base``.

    Raises:
        InfeasibleBase: If the base LP is infeasible.
        UnboundedBase: If the base LP or a round LP is unbounded.
    """
    return fix_iteratively(problem.agents, LpRoundSolver(problem, separation), maximize=True)


def leximax(problem: LeximinProblem, separation: SeparationOracle | None = None) -> LeximinResult:
    """Mirror of :func:`leximin`: minimize the largest unfixed share each round."""
    return fix_iteratively(problem.agents, LpRoundSolver(problem, separation), maximize=False)
