"""Picard-Queyranne structure of a max-flow instance."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from owenset.core.errors import SolverError
from owenset.services.graph import (
    CondensationDAG,
    FlowResult,
    Orientation,
    condense_scc,
    residual_graph,
)
from owenset.services.maxflow.instance import MaxFlowInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PQStructure:
    """Condensed residual graph of one maximum flow.

    Attributes:
        condensation: The acyclic component multigraph with edge provenance.
        source: Component holding the source vertex.
        sink: Component holding the sink vertex.
        full: DAG edges coming from saturated edges (reversed against the original).
        zero: DAG edges coming from flow-free edges (same direction as the original).
        lengths: ``1 / capacity`` on ``full`` edges, ``0`` on ``zero`` edges.
        flow: The maximum flow the structure was built from.
    """

    condensation: CondensationDAG
    source: int
    sink: int
    full: frozenset[int]
    zero: frozenset[int]
    lengths: dict[int, Fraction]
    flow: FlowResult

    def original_edge(self, dag_edge: int) -> int:
        return self.condensation.provenance[dag_edge]

    def component(self, vertex: int) -> int:
        return self.condensation.component_of[vertex]


def build_pq_structure(instance: MaxFlowInstance) -> PQStructure:
    """Condense the residual graph of a maximum flow into saturated and flow-free edges.

    Raises:
        SolverError: If a DAG edge comes from a partially used edge.
    """
    flow = instance.flow
    residual = residual_graph(instance.graph, instance.capacities, flow)
    condensation = condense_scc(residual.graph, residual.provenance)

    full: set[int] = set()
    zero: set[int] = set()
    lengths: dict[int, Fraction] = {}
    for dag_edge, original in enumerate(condensation.provenance):
        f = flow.flow[original]
        c = instance.capacities[original]
        if condensation.orientation[dag_edge] is Orientation.REVERSE and f == c:
            full.add(dag_edge)
            lengths[dag_edge] = 1 / Fraction(c)
        elif condensation.orientation[dag_edge] is Orientation.FORWARD and f == 0:
            zero.add(dag_edge)
            lengths[dag_edge] = Fraction(0)
        else:
            raise SolverError(
                f"Edge {instance.agent_name(original)} with flow {f}/{c} crosses components"
            )

    source = condensation.component_of[instance.source]
    sink = condensation.component_of[instance.sink]
    if source == sink:
        raise SolverError("Source and sink share a residual component")
    logger.debug(
        f"PQ structure: {condensation.size} components, {len(full)} full and "
        f"{len(zero)} zero edges"
    )
    return PQStructure(
        condensation=condensation,
        source=source,
        sink=sink,
        full=frozenset(full),
        zero=frozenset(zero),
        lengths=lengths,
        flow=flow,
    )
