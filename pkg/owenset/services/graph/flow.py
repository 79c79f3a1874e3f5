"""Exact maximum flow, residual graphs, minimum cuts and essential edges."""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from owenset.core.errors import InvalidVertex
from owenset.services.graph.condensation import condense_scc
from owenset.services.graph.digraph import (
    CapacityMap,
    DiGraph,
    Edge,
    Orientation,
    check_capacities,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlowResult:
    flow: dict[int, Fraction]
    value: Fraction


@dataclass(frozen=True)
class ResidualGraph:
    """Residual graph with capacities and the original edge behind each residual edge."""

    graph: DiGraph
    capacities: dict[int, Fraction]
    provenance: dict[int, tuple[int, Orientation]]


class EdgeClass(str, Enum):
    ESSENTIAL = "essential"
    INESSENTIAL = "inessential"


EdgeClassification = dict[int, EdgeClass]


def _scale(values: list[Fraction]) -> int:
    return math.lcm(1, *(v.denominator for v in values))


class _Dinic:
    """Blocking-flow augmentation on integer capacities.

    Arc ``2e`` is edge ``e`` in its own direction and arc ``2e + 1`` its reverse.
    """

    def __init__(self, graph: DiGraph, capacities: list[int]):
        self.n = graph.n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(graph.n)]
        for edge in graph.edges:
            self.adj[edge.tail].append(len(self.head))
            self.head.append(edge.head)
            self.cap.append(capacities[edge.id])
            self.adj[edge.head].append(len(self.head))
            self.head.append(edge.tail)
            self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for arc in self.adj[v]:
                w = self.head[arc]
                if self.cap[arc] > 0 and level[w] < 0:
                    level[w] = level[v] + 1
                    queue.append(w)
        return level if level[t] >= 0 else None

    def _augment(self, s: int, t: int, level: list[int], pointer: list[int]) -> int:
        path: list[int] = []
        v = s
        while True:
            if v == t:
                pushed = min(self.cap[arc] for arc in path)
                for arc in path:
                    self.cap[arc] -= pushed
                    self.cap[arc ^ 1] += pushed
                return pushed
            arcs = self.adj[v]
            while pointer[v] < len(arcs):
                arc = arcs[pointer[v]]
                if self.cap[arc] > 0 and level[self.head[arc]] == level[v] + 1:
                    break
                pointer[v] += 1
            else:
                # dead end
                if not path:
                    return 0
                level[v] = -1
                arc = path.pop()
                v = self.head[arc ^ 1]
                pointer[v] += 1
                continue
            path.append(arc)
            v = self.head[arc]

    def run(self, s: int, t: int) -> int:
        total = 0
        while (level := self._levels(s, t)) is not None:
            pointer = [0] * self.n
            while pushed := self._augment(s, t, level, pointer):
                total += pushed
        return total


def max_flow(graph: DiGraph, capacities: CapacityMap, s: int, t: int) -> FlowResult:
    """Maximum s-t flow with exact rational capacities.

    Capacities are scaled by the lcm of their denominators, the integer problem is solved
    with Dinic's algorithm and the result is scaled back.

    Raises:
        InvalidVertex: If s or t is out of range or s == t.
    """
    graph.check_vertex(s)
    graph.check_vertex(t)
    if s == t:
        raise InvalidVertex("Source and sink must differ")
    check_capacities(graph, capacities)

    values = [Fraction(capacities[e.id]) for e in graph.edges]
    scale = _scale(values)
    integral = [int(value * scale) for value in values]
    solver = _Dinic(graph, integral)
    total = solver.run(s, t)

    flow = {e.id: Fraction(integral[e.id] - solver.cap[2 * e.id], scale) for e in graph.edges}
    value = Fraction(total, scale)
    logger.debug(f"Max flow {s}->{t} on {graph.m} edges: {value}")
    return FlowResult(flow=flow, value=value)


def residual_graph(graph: DiGraph, capacities: CapacityMap, flow: FlowResult) -> ResidualGraph:
    """Forward edge where ``f < c``, reverse edge where ``f > 0``; zero-capacity edges dropped."""
    edges: list[Edge] = []
    residual: dict[int, Fraction] = {}
    provenance: dict[int, tuple[int, Orientation]] = {}
    for edge in graph.edges:
        f, c = flow.flow[edge.id], Fraction(capacities[edge.id])
        if f < c:
            residual[len(edges)] = c - f
            provenance[len(edges)] = (edge.id, Orientation.FORWARD)
            edges.append(Edge(len(edges), edge.tail, edge.head))
        if f > 0:
            residual[len(edges)] = f
            provenance[len(edges)] = (edge.id, Orientation.REVERSE)
            edges.append(Edge(len(edges), edge.head, edge.tail))
    return ResidualGraph(
        graph=DiGraph(graph.n, tuple(edges)), capacities=residual, provenance=provenance
    )


def min_vertex_cut_side(
    graph: DiGraph, capacities: CapacityMap, flow: FlowResult, s: int
) -> set[int]:
    """Vertices reachable from ``s`` in the residual graph of a maximum flow."""
    graph.check_vertex(s)
    side = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for edge_id in graph.out_edges(v):
            head = graph.edges[edge_id].head
            if head not in side and flow.flow[edge_id] < capacities[edge_id]:
                side.add(head)
                queue.append(head)
        for edge_id in graph.in_edges(v):
            tail = graph.edges[edge_id].tail
            if tail not in side and flow.flow[edge_id] > 0:
                side.add(tail)
                queue.append(tail)
    return side


def classify_edges(graph: DiGraph, capacities: CapacityMap, s: int, t: int) -> EdgeClassification:
    """Mark edges saturated by every maximum flow as essential.

    With one maximum flow fixed, an edge is essential exactly when it is saturated with
    positive capacity and its endpoints lie in different strongly connected components of
    the residual graph.
    """
    flow = max_flow(graph, capacities, s, t)
    residual = residual_graph(graph, capacities, flow)
    condensed = condense_scc(residual.graph, residual.provenance)
    classification: EdgeClassification = {}
    for edge in graph.edges:
        saturated = capacities[edge.id] > 0 and flow.flow[edge.id] == capacities[edge.id]
        split = condensed.component_of[edge.tail] != condensed.component_of[edge.head]
        classification[edge.id] = (
            EdgeClass.ESSENTIAL if saturated and split else EdgeClass.INESSENTIAL
        )
    return classification

