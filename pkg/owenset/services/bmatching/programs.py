"""Max-weight b-matching LP and its vertex dual."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from owenset.core.errors import SolverError
from owenset.services.lp import LinearProgram, Relation, Sense, Status, solve

if TYPE_CHECKING:
    from owenset.services.bmatching.instance import BMatchingInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BMatchDual:
    """Vertex duals ``u`` (side U) and ``v`` (side V) keyed by vertex id."""

    values: dict[int, Fraction]

    def violations(self, instance: BMatchingInstance) -> list[str]:
        problems = []
        for x in instance.agents:
            if self.values.get(x, Fraction(0)) < 0:
                problems.append(f"negative dual at {instance.agent_name(x)}")
        for edge in instance.graph.edges:
            covered = self.values.get(edge.tail, Fraction(0)) + self.values.get(
                edge.head, Fraction(0)
            )
            if covered < instance.weights[edge.id]:
                problems.append(
                    f"{instance.edge_names[edge.id]} covered {covered} < weight "
                    f"{instance.weights[edge.id]}"
                )
        return problems

    def objective(self, instance: BMatchingInstance) -> Fraction:
        return sum(
            (instance.b[x] * self.values.get(x, Fraction(0)) for x in instance.agents),
            Fraction(0),
        )

    def is_optimal(self, instance: BMatchingInstance) -> bool:
        return not self.violations(instance) and self.objective(instance) == instance.worth


@dataclass(frozen=True)
class BMatchingResult:
    """Edge multiplicities of an optimal b-matching, its weight and a certifying dual."""

    multiplicity: dict[int, int]
    value: Fraction
    dual: BMatchDual


def primal_program(instance: BMatchingInstance) -> LinearProgram:
    """Edge multiplicities ``x_e``; each vertex is matched at most ``b`` times."""
    lp = LinearProgram()
    for e in range(instance.graph.m):
        lp.add_variable(f"x[{instance.edge_names[e]}]")
    for v in instance.agents:
        incident = instance.graph.out_edges(v) + instance.graph.in_edges(v)
        name = f"b:{instance.agent_name(v)}"
        lp.add_constraint({e: 1 for e in incident}, Relation.LE, instance.b[v], name=name)
    lp.set_objective({e: instance.weights[e] for e in range(instance.graph.m)}, Sense.MAX)
    return lp


def dual_program(instance: BMatchingInstance) -> LinearProgram:
    """Vertex duals: ``u_i + v_j >= w_ij`` on every edge, minimize ``sum b * dual``."""
    lp = LinearProgram()
    for v in instance.agents:
        lp.add_variable(f"y[{instance.agent_name(v)}]")
    for edge in instance.graph.edges:
        lp.add_constraint(
            {edge.tail: 1, edge.head: 1},
            Relation.GE,
            instance.weights[edge.id],
            name=f"edge:{instance.edge_names[edge.id]}",
        )
    lp.set_objective({v: instance.b[v] for v in instance.agents}, Sense.MIN)
    return lp


def max_weight_bmatching(instance: BMatchingInstance) -> BMatchingResult:
    """Integral maximum-weight b-matching with an optimal vertex dual.

    The constraint matrix is the vertex-edge incidence matrix of a bipartite graph,
    which is totally unimodular, and ``b`` is integral. Every basic optimum the simplex
    returns is therefore an integral b-matching and no rounding step is needed; a
    fractional multiplicity would mean a solver defect and is reported as one.

    Raises:
        SolverError: If the basic optimum is fractional or the dual fails to certify it.
    """
    solution = solve(primal_program(instance))
    if solution.status is not Status.OPTIMAL or solution.objective is None:
        raise SolverError(f"b-matching LP became {solution.status.value}")
    multiplicity = {}
    for e in range(instance.graph.m):
        x = solution.values[e]
        if x.denominator != 1:
            raise SolverError(f"Fractional multiplicity {x} on {instance.edge_names[e]}")
        multiplicity[e] = int(x)
    dual = BMatchDual(values={v: solution.duals[v] for v in instance.agents})
    if dual.violations(instance) or dual.objective(instance) != solution.objective:
        raise SolverError("Row duals of the b-matching LP do not certify optimality")
    logger.debug(f"b-matching of weight {solution.objective} using {sum(multiplicity.values())}")
    return BMatchingResult(multiplicity=multiplicity, value=solution.objective, dual=dual)
