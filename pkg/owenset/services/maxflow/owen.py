"""Owen-set imputations of the max-flow game: duals, membership and LP cross-checks."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from fractions import Fraction

import networkx as nx

from owenset.core.errors import NotOptimalDual
from owenset.services.common import Imputation, OwenVerdict, require_imputation
from owenset.services.graph import EdgeClass, min_vertex_cut_side
from owenset.services.leximin import LeximinProblem, LeximinResult, leximax, leximin
from owenset.services.lp import LinearExpression, LinearProgram, Relation, Sense
from owenset.services.maxflow.instance import FlowDual, MaxFlowInstance
from owenset.services.maxflow.structure import PQStructure, build_pq_structure

logger = logging.getLogger(__name__)

_ANCHOR = "anchor"


def owen_from_dual(instance: MaxFlowInstance, dual: FlowDual) -> Imputation:
    """``p_e = c_e * delta_e`` for an optimal dual.

    Raises:
        NotOptimalDual: If ``dual`` is infeasible or its objective differs from the worth.
    """
    problems = dual.violations(instance)
    if problems:
        raise NotOptimalDual(f"Dual is infeasible: {problems[0]}")
    if dual.objective(instance) != instance.worth:
        raise NotOptimalDual(
            f"Dual objective {dual.objective(instance)} differs from the worth {instance.worth}"
        )
    return {e: Fraction(instance.capacities[e]) * dual.lengths[e] for e in instance.agents}


def optimal_dual(instance: MaxFlowInstance) -> FlowDual:
    """Integral optimal dual read off the source side of a minimum cut."""
    side = min_vertex_cut_side(instance.graph, instance.capacities, instance.flow, instance.source)
    potentials = {v: Fraction(1 if v in side else 0) for v in range(instance.graph.n)}
    lengths = {
        e.id: Fraction(1 if e.tail in side and e.head not in side else 0)
        for e in instance.graph.edges
    }
    return FlowDual(potentials=potentials, lengths=lengths)


def _propagate(structure: PQStructure, lengths: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Component potentials forced by saturated edges, starting from ``pi(t') = 0``.

    Each pass takes the lowest-id saturated edge with exactly one assigned endpoint and
    assigns the other one; the DAG edge of a saturated edge ``(i, j)`` runs from ``j`` to
    ``i``, so its DAG head sits ``delta_ij`` above its DAG tail.
    """
    dag = structure.condensation.dag
    frontier = sorted(structure.full, key=lambda d: (structure.original_edge(d), d))
    potentials = {structure.sink: Fraction(0)}
    progress = True
    while progress:
        progress = False
        for dag_edge in frontier:
            edge = dag.edges[dag_edge]
            delta = lengths[structure.original_edge(dag_edge)]
            if edge.tail in potentials and edge.head not in potentials:
                potentials[edge.head] = potentials[edge.tail] + delta
            elif edge.head in potentials and edge.tail not in potentials:
                potentials[edge.tail] = potentials[edge.head] - delta
            else:
                continue
            progress = True
            break
    return potentials


def _extend(
    instance: MaxFlowInstance, anchored: Mapping[int, Fraction], lengths: Mapping[int, Fraction]
) -> dict[int, Fraction] | None:
    """Complete anchored vertex potentials to a nonnegative feasible assignment.

    The remaining constraints ``pi_i - pi_j <= delta_ij`` form a system of difference
    constraints; shortest distances from an anchor vertex solve it, and a negative cycle
    means no completion exists.
    """
    ceiling = max(anchored.values(), default=Fraction(0)) + sum(lengths.values(), Fraction(1))
    system = nx.DiGraph()
    system.add_node(_ANCHOR)

    def bound(u: object, v: object, weight: Fraction) -> None:
        # pi_v - pi_u <= weight
        if not system.has_edge(u, v) or system[u][v]["weight"] > weight:
            system.add_edge(u, v, weight=weight)

    for v in range(instance.graph.n):
        bound(v, _ANCHOR, Fraction(0))
        bound(_ANCHOR, v, anchored.get(v, ceiling))
        if v in anchored:
            bound(v, _ANCHOR, -anchored[v])
    for edge in instance.graph.edges:
        bound(edge.head, edge.tail, lengths[edge.id])
    bound(instance.source, instance.sink, Fraction(-1))

    try:
        distance = nx.single_source_bellman_ford_path_length(system, _ANCHOR)
    except nx.NetworkXUnbounded:
        return None
    return {v: Fraction(distance[v]) for v in range(instance.graph.n)}


def check_owen_membership(
    instance: MaxFlowInstance, imputation: Mapping[int, Fraction]
) -> OwenVerdict:
    """Decide whether ``imputation`` is induced by an optimal dual.

    Potentials are propagated across saturated edges from the sink component, shifted to
    be nonnegative, and completed on the components no saturated edge reaches. The
    imputation is in the Owen set exactly when the resulting dual is feasible.

    Raises:
        NotAnImputation: If the shares do not sum to the worth or name unknown edges.
    """
    profit = require_imputation(imputation, instance.agents, instance.worth)
    for e in instance.agents:
        if profit[e] < 0:
            return OwenVerdict.no(f"negative profit on {instance.agent_name(e)}")
    for e, kind in instance.classification.items():
        if kind is EdgeClass.INESSENTIAL and profit[e] > 0:
            return OwenVerdict.no(f"inessential edge paid: {instance.agent_name(e)}")

    lengths = {e: profit[e] / instance.capacities[e] for e in instance.agents}
    if instance.worth == 0:
        return OwenVerdict.yes(optimal_dual(instance))

    structure = build_pq_structure(instance)
    component_potentials = _propagate(structure, lengths)
    low = min(component_potentials.values())
    component_of = structure.condensation.component_of
    anchored = {
        v: component_potentials[component_of[v]] - low
        for v in range(instance.graph.n)
        if component_of[v] in component_potentials
    }
    potentials = _extend(instance, anchored, lengths)
    if potentials is None:
        return OwenVerdict.no("no potentials agree with the profits on saturated edges")

    dual = FlowDual(potentials=potentials, lengths=lengths)
    problems = dual.violations(instance)
    if problems:
        logger.debug(f"Membership rejected: {problems}")
        return OwenVerdict.no(problems[0])
    return OwenVerdict.yes(dual)


def flow_dual_program(
    instance: MaxFlowInstance,
) -> tuple[LinearProgram, dict[int, LinearExpression]]:
    """Fractional-cut LP and the profit expression of every edge.

    Variable ``v`` is the potential of vertex ``v``; variable ``n + e`` the length of
    edge ``e``.
    """
    n = instance.graph.n
    lp = LinearProgram()
    for v in range(n):
        lp.add_variable(f"pi[{instance.vertex_names[v]}]")
    for e in instance.agents:
        lp.add_variable(f"delta[{instance.agent_name(e)}]")
    for edge in instance.graph.edges:
        lp.add_constraint(
            {n + edge.id: 1, edge.tail: -1, edge.head: 1},
            Relation.GE,
            0,
            name=f"edge:{instance.agent_name(edge.id)}",
        )
    lp.add_constraint({instance.source: 1, instance.sink: -1}, Relation.GE, 1, name="source-sink")
    lp.set_objective({n + e: instance.capacities[e] for e in instance.agents}, Sense.MIN)
    shares = {e: {n + e: Fraction(instance.capacities[e])} for e in instance.agents}
    return lp, shares


def owen_problem(instance: MaxFlowInstance) -> LeximinProblem:
    """Fractional-cut LP tracking the profit of every edge."""
    lp, shares = flow_dual_program(instance)
    return LeximinProblem(lp, shares)


def leximin_owen_lp(instance: MaxFlowInstance) -> LeximinResult:
    """Leximin Owen imputation through the generic LP fixing engine."""
    return leximin(owen_problem(instance))


def leximax_owen(instance: MaxFlowInstance) -> LeximinResult:
    """Leximax Owen imputation through the generic LP fixing engine."""
    return leximax(owen_problem(instance))
