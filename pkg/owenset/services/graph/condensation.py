"""Strongly connected component condensation into a multigraph DAG."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass

import networkx as nx

from owenset.services.graph.digraph import DiGraph, Edge, Orientation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CondensationDAG:
    """Components of a source graph and the edges running between them.

    Attributes:
        dag: Acyclic multigraph over component ids ``0..k-1``.
        members: Original vertices of each component.
        component_of: Component id of every original vertex.
        provenance: Originating edge id (in the caller's numbering) of each DAG edge.
        orientation: Whether the DAG edge runs along or against its originating edge.
    """

    dag: DiGraph
    members: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    provenance: tuple[int, ...]
    orientation: tuple[Orientation, ...]

    @property
    def size(self) -> int:
        return self.dag.n


def condense_scc(
    graph: DiGraph,
    provenance: Mapping[int, tuple[int, Orientation]] | None = None,
) -> CondensationDAG:
    """Shrink every strongly connected component of ``graph`` to one vertex.

    Components are numbered by their smallest member. Edges inside a component
    (self-loops included) disappear; edges between components are all kept, in edge-id
    order, so parallel edges survive.

    Args:
        graph: Any directed multigraph.
        provenance: Optional map from ``graph`` edge ids to the edge they were derived
            from and its orientation (a residual graph passes its own). Defaults to the
            identity with forward orientation.

    Returns:
        The condensation with its component map and edge provenance.
    """
    components = sorted(
        nx.strongly_connected_components(graph.to_networkx()), key=lambda comp: min(comp)
    )
    component_of = [0] * graph.n
    for index, comp in enumerate(components):
        for v in comp:
            component_of[v] = index

    dag_edges: list[Edge] = []
    origin: list[int] = []
    orientation: list[Orientation] = []
    for edge in graph.edges:
        tail, head = component_of[edge.tail], component_of[edge.head]
        if tail == head:
            continue
        dag_edges.append(Edge(len(dag_edges), tail, head))
        source_id, direction = (
            provenance[edge.id] if provenance is not None else (edge.id, Orientation.FORWARD)
        )
        origin.append(source_id)
        orientation.append(direction)

    logger.debug(
        f"Condensed {graph.n} vertices into {len(components)} components "
        f"with {len(dag_edges)} crossing edges"
    )
    return CondensationDAG(
        dag=DiGraph(len(components), tuple(dag_edges)),
        members=tuple(frozenset(comp) for comp in components),
        component_of=tuple(component_of),
        provenance=tuple(origin),
        orientation=tuple(orientation),
    )
