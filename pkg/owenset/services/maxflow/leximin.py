"""Combinatorial leximin Owen imputation of the max-flow game.

Potentials are fixed component by component on the Picard-Queyranne DAG: the sink
component gets 0 and the source component 1, then each iteration takes the free path
between two fixed components that forces the smallest equal profit on its saturated
edges and spreads the potential difference along it in proportion to ``1 / capacity``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from owenset.core.errors import SolverError
from owenset.services.common import Imputation
from owenset.services.graph import DiGraph, longest_path_dag, min_vertex_cut_side
from owenset.services.maxflow.instance import FlowDual, MaxFlowInstance
from owenset.services.maxflow.structure import PQStructure, build_pq_structure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlowLeximinRun:
    """Outcome of the combinatorial leximin with its trace.

    ``alphas`` holds the profit chosen in every iteration; ``component_potentials`` the
    potential of every DAG component (empty for zero-worth games).
    """

    imputation: Imputation
    dual: FlowDual
    alphas: tuple[Fraction, ...]
    structure: PQStructure | None
    component_potentials: dict[int, Fraction]


@dataclass(frozen=True)
class _FreePath:
    alpha: Fraction
    start: int
    end: int
    edges: list[int]

    @property
    def key(self) -> tuple[Fraction, int, int]:
        return (self.alpha, self.start, self.end)


def _best_free_path(structure: PQStructure, potentials: dict[int, Fraction]) -> _FreePath | None:
    """Free path between fixed components with the smallest profit ratio.

    Only paths with at least one free interior component and positive length count.
    Ties go to the smallest ratio, then the smallest start and end component ids; the
    path itself is the one recorded by the lowest-id predecessors.
    """
    dag = structure.condensation.dag
    lengths = structure.lengths

    def is_free(component: int) -> bool:
        return component not in potentials

    best: _FreePath | None = None
    fixed = sorted(potentials)
    for start in fixed:
        if not any(is_free(dag.edges[e].head) for e in dag.out_edges(start)):
            continue
        paths = longest_path_dag(dag, lengths, start, passable=is_free)
        for end in fixed:
            if end == start or potentials[end] < potentials[start]:
                continue
            entry: tuple[Fraction, int, int] | None = None
            for edge_id in dag.in_edges(end):
                tail = dag.edges[edge_id].tail
                if not is_free(tail) or not paths.reaches(tail):
                    continue
                total = paths.distance[tail] + lengths[edge_id]  # type: ignore[operator]
                if entry is None or total > entry[0] or (
                    total == entry[0] and (tail, edge_id) < (entry[1], entry[2])
                ):
                    entry = (total, tail, edge_id)
            if entry is None or entry[0] == 0:
                continue
            alpha = (potentials[end] - potentials[start]) / entry[0]
            if best is None or (alpha, start, end) < best.key:
                best = _FreePath(
                    alpha=alpha,
                    start=start,
                    end=end,
                    edges=paths.path_to(dag, entry[1]) + [entry[2]],
                )
    return best


def extend_monotone(dag: DiGraph, potentials: dict[int, Fraction]) -> None:
    """Give every unassigned component the largest potential among its predecessors."""
    for component in dag.topological_order:
        if component in potentials:
            continue
        potentials[component] = max(
            (potentials[dag.edges[e].tail] for e in dag.in_edges(component)),
            default=Fraction(0),
        )


def dual_from_potentials(instance: MaxFlowInstance, potentials: dict[int, Fraction]) -> FlowDual:
    """``delta = max(pi_tail - pi_head, 0)`` on every edge."""
    lengths = {
        e.id: max(potentials[e.tail] - potentials[e.head], Fraction(0))
        for e in instance.graph.edges
    }
    return FlowDual(potentials=dict(potentials), lengths=lengths)


def profits(instance: MaxFlowInstance, dual: FlowDual) -> Imputation:
    return {e: Fraction(instance.capacities[e]) * dual.lengths[e] for e in instance.agents}


def _zero_worth_run(instance: MaxFlowInstance) -> FlowLeximinRun:
    side = min_vertex_cut_side(instance.graph, instance.capacities, instance.flow, instance.source)
    potentials = {v: Fraction(1 if v in side else 0) for v in range(instance.graph.n)}
    dual = dual_from_potentials(instance, potentials)
    return FlowLeximinRun(
        imputation={e: Fraction(0) for e in instance.agents},
        dual=dual,
        alphas=(),
        structure=None,
        component_potentials={},
    )


def leximin_owen_run(instance: MaxFlowInstance) -> FlowLeximinRun:
    """Run the combinatorial leximin and keep its trace.

    Raises:
        SolverError: If the resulting dual fails its optimality check.
    """
    if instance.worth == 0:
        return _zero_worth_run(instance)

    structure = build_pq_structure(instance)
    dag = structure.condensation.dag
    component_potentials = {structure.source: Fraction(1), structure.sink: Fraction(0)}
    alphas: list[Fraction] = []

    while len(component_potentials) < dag.n:
        path = _best_free_path(structure, component_potentials)
        if path is None:
            break
        base = component_potentials[path.start]
        prefix = Fraction(0)
        for edge_id in path.edges[:-1]:
            prefix += structure.lengths[edge_id]
            component_potentials[dag.edges[edge_id].head] = base + path.alpha * prefix
        alphas.append(path.alpha)
        logger.debug(
            f"Fixed {len(path.edges) - 1} component(s) between {path.start} and {path.end} "
            f"at profit {path.alpha}"
        )
    extend_monotone(dag, component_potentials)

    component_of = structure.condensation.component_of
    potentials = {v: component_potentials[component_of[v]] for v in range(instance.graph.n)}
    dual = dual_from_potentials(instance, potentials)
    if not dual.is_optimal(instance):
        logger.error(f"Combinatorial leximin dual is not optimal: {dual.violations(instance)}")
        raise SolverError("Combinatorial leximin produced a non-optimal dual")
    logger.info(f"Max-flow leximin: {len(alphas)} iterations, profits {sorted(set(alphas))}")
    return FlowLeximinRun(
        imputation=profits(instance, dual),
        dual=dual,
        alphas=tuple(alphas),
        structure=structure,
        component_potentials=component_potentials,
    )


def leximin_owen(instance: MaxFlowInstance) -> tuple[Imputation, FlowDual]:
    """Leximin Owen-set imputation of a max-flow game and the dual that induces it."""
    run = leximin_owen_run(instance)
    return run.imputation, run.dual
