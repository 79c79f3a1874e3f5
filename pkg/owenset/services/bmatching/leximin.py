"""Leximin and leximax Owen imputations of the b-matching game and the optimal dual face."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from owenset.core.errors import SolverError
from owenset.services.bmatching.instance import BMatchingInstance
from owenset.services.bmatching.programs import dual_program
from owenset.services.leximin import LeximinProblem, LeximinResult, LpRoundSolver, leximax, leximin
from owenset.services.lp import LinearExpression, LinearProgram, Sense, Status, solve

logger = logging.getLogger(__name__)


def owen_problem(instance: BMatchingInstance) -> LeximinProblem:
    """Dual LP with the profit ``b_x * dual_x`` of every vertex tracked."""
    shares: dict[int, LinearExpression] = {
        x: {x: Fraction(instance.b[x])} for x in instance.agents
    }
    return LeximinProblem(dual_program(instance), shares)


def leximin_owen(instance: BMatchingInstance) -> LeximinResult:
    """Leximin Owen imputation over the optimal face of the vertex dual."""
    return leximin(owen_problem(instance))


def leximax_owen(instance: BMatchingInstance) -> LeximinResult:
    """Leximax Owen imputation over the optimal face of the vertex dual."""
    return leximax(owen_problem(instance))


def _optimal_face(instance: BMatchingInstance) -> LinearProgram:
    return LpRoundSolver(owen_problem(instance)).face()


def _extreme(face: LinearProgram, objective: LinearExpression, sense: Sense) -> Fraction:
    lp = face.copy()
    lp.set_objective(objective, sense)
    solution = solve(lp)
    if solution.status is not Status.OPTIMAL or solution.objective is None:
        raise SolverError(f"Optimal face became {solution.status.value}")
    return solution.objective


def dual_ranges(instance: BMatchingInstance) -> dict[int, tuple[Fraction, Fraction]]:
    """Smallest and largest value of every vertex dual over all optimal duals."""
    face = _optimal_face(instance)
    return {
        x: (_extreme(face, {x: 1}, Sense.MIN), _extreme(face, {x: 1}, Sense.MAX))
        for x in instance.agents
    }


def has_unique_dual(instance: BMatchingInstance) -> bool:
    return all(low == high for low, high in dual_ranges(instance).values())


def always_tight_edges(instance: BMatchingInstance) -> tuple[int, ...]:
    """Edges with ``u_i + v_j = w_ij`` in every optimal dual."""
    face = _optimal_face(instance)
    return tuple(
        edge.id
        for edge in instance.graph.edges
        if _extreme(face, {edge.tail: 1, edge.head: 1}, Sense.MAX) == instance.weights[edge.id]
    )


@dataclass(frozen=True)
class TightComponent:
    """Connected component of the always-tight subgraph.

    ``fundamental`` marks components in which some vertex dual is not fixed over the
    optimal face; those components have equal capacity sums on both sides.
    """

    members: frozenset[int]
    left_b: int
    right_b: int
    fundamental: bool

    @property
    def balanced(self) -> bool:
        return self.left_b == self.right_b


def balanced_components(instance: BMatchingInstance) -> list[TightComponent]:
    """Components of the always-tight subgraph with their side capacity sums."""
    ranges = dual_ranges(instance)
    tight = nx.Graph()
    tight.add_nodes_from(instance.agents)
    for e in always_tight_edges(instance):
        edge = instance.graph.edges[e]
        tight.add_edge(edge.tail, edge.head)
    components = []
    for members in sorted(nx.connected_components(tight), key=min):
        components.append(
            TightComponent(
                members=frozenset(members),
                left_b=sum(instance.b[x] for x in members if instance.is_left(x)),
                right_b=sum(instance.b[x] for x in members if not instance.is_left(x)),
                fundamental=any(ranges[x][0] != ranges[x][1] for x in members),
            )
        )
    unbalanced = [c for c in components if c.fundamental and not c.balanced]
    if unbalanced:
        logger.warning(f"Fundamental components with unequal side capacities: {unbalanced}")
    return components
