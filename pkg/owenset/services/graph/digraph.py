"""Directed multigraph kernel addressed by dense vertex and edge ids."""

from __future__ import annotations

import logging
from collections import Counter, deque
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any

import networkx as nx

from owenset.core.errors import CycleDetected, InstanceValidationError, InvalidVertex

logger = logging.getLogger(__name__)

# Edge id -> nonnegative capacity (or cost, or length)
CapacityMap = Mapping[int, Fraction]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int


@dataclass(frozen=True)
class DiGraph:
    """Vertices ``0..n-1`` and edges ``0..m-1``; parallel edges and self-loops allowed."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InstanceValidationError(f"Vertex count must be nonnegative, got {self.n}")
        for index, edge in enumerate(self.edges):
            if edge.id != index:
                raise InstanceValidationError(
                    f"Edge ids must be dense: position {index} holds id {edge.id}"
                )
            if not (0 <= edge.tail < self.n and 0 <= edge.head < self.n):
                raise InvalidVertex(f"Edge {edge.id} has an endpoint outside 0..{self.n - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> DiGraph:
        return cls(n, tuple(Edge(i, tail, head) for i, (tail, head) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for edge in self.edges:
            out[edge.tail].append(edge.id)
        return tuple(tuple(ids) for ids in out)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        incoming: list[list[int]] = [[] for _ in range(self.n)]
        for edge in self.edges:
            incoming[edge.head].append(edge.id)
        return tuple(tuple(ids) for ids in incoming)

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertex(f"Vertex {v} outside 0..{self.n - 1}")

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((e.tail, e.head, e.id) for e in self.edges)
        return graph

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Smallest-id-first topological order; raises CycleDetected on cycles."""
        try:
            return tuple(nx.lexicographical_topological_sort(self.to_networkx()))
        except nx.NetworkXUnfeasible as exc:
            raise CycleDetected("Graph contains a directed cycle") from exc


def default_edge_names(graph: DiGraph, vertex_names: tuple[str, ...]) -> tuple[str, ...]:
    """``tail->head``, with ``#id`` appended to every member of a parallel bundle."""
    labels = [f"{vertex_names[e.tail]}->{vertex_names[e.head]}" for e in graph.edges]
    repeated = {label for label, count in Counter(labels).items() if count > 1}
    return tuple(
        f"{label}#{index}" if label in repeated else label for index, label in enumerate(labels)
    )


def check_capacities(graph: DiGraph, capacities: CapacityMap) -> None:
    missing = [e.id for e in graph.edges if e.id not in capacities]
    if missing:
        raise InstanceValidationError(f"Edges without capacity: {missing}")
    negative = [e.id for e in graph.edges if capacities[e.id] < 0]
    if negative:
        raise InstanceValidationError(f"Negative capacities on edges {negative}")


def reachable_from(graph: DiGraph, source: int, usable: Callable[[int], bool]) -> set[int]:
    """Vertices reachable from ``source`` along edges accepted by ``usable``."""
    graph.check_vertex(source)
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for edge_id in graph.out_edges(v):
            if not usable(edge_id):
                continue
            head = graph.edges[edge_id].head
            if head not in seen:
                seen.add(head)
                queue.append(head)
    return seen


def cut_capacity(graph: DiGraph, capacities: CapacityMap, side: set[int]) -> Fraction:
    """Total capacity of edges leaving ``side``."""
    return sum(
        (
            Fraction(capacities[e.id])
            for e in graph.edges
            if e.tail in side and e.head not in side
        ),
        Fraction(0),
    )


class Orientation(Enum):
    """Direction of a derived edge relative to the original edge it came from."""

    FORWARD = "forward"
    REVERSE = "reverse"


class Absent(Enum):
    """Distance sentinel for vertices no path reaches."""

    UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class LongestPaths:
    source: int
    distance: dict[int, Fraction | Absent]
    predecessor: dict[int, int | None]

    def reaches(self, v: int) -> bool:
        return self.distance.get(v, Absent.UNREACHABLE) is not Absent.UNREACHABLE

    def path_to(self, dag: Any, v: int) -> list[int]:
        """Edge ids of the recorded maximizing path from the source to ``v``."""
        dag = getattr(dag, "dag", dag)
        if not self.reaches(v):
            return []
        path: list[int] = []
        while v != self.source:
            edge_id = self.predecessor[v]
            assert edge_id is not None
            path.append(edge_id)
            v = dag.edges[edge_id].tail
        path.reverse()
        return path


def longest_path_dag(
    dag: Any,
    lengths: CapacityMap,
    source: int,
    passable: Callable[[int], bool] | None = None,
) -> LongestPaths:
    """Single-source longest paths on an acyclic graph.

    Args:
        dag: A CondensationDAG or any acyclic DiGraph.
        lengths: Nonnegative length per edge id.
        source: Start vertex.
        passable: When given, only the source and vertices accepted by ``passable`` are
            expanded; other vertices still receive a distance but are path endpoints.

    Returns:
        Distances (``Absent.UNREACHABLE`` when no path) and predecessor edge ids. Ties
        prefer the predecessor with the smallest vertex id, then the smallest edge id.
    """
    dag = getattr(dag, "dag", dag)
    dag.check_vertex(source)
    order = dag.topological_order
    distance: dict[int, Fraction | Absent] = {v: Absent.UNREACHABLE for v in range(dag.n)}
    predecessor: dict[int, int | None] = {v: None for v in range(dag.n)}
    distance[source] = Fraction(0)

    for v in order[order.index(source) :]:
        dist_v = distance[v]
        if dist_v is Absent.UNREACHABLE:
            continue
        if v != source and passable is not None and not passable(v):
            continue
        for edge_id in dag.out_edges(v):
            head = dag.edges[edge_id].head
            candidate = dist_v + lengths[edge_id]
            current = distance[head]
            if current is Absent.UNREACHABLE or candidate > current:
                distance[head] = candidate
                predecessor[head] = edge_id
            elif candidate == current:
                incumbent = predecessor[head]
                assert incumbent is not None
                if (v, edge_id) < (dag.edges[incumbent].tail, incumbent):
                    predecessor[head] = edge_id
    return LongestPaths(source=source, distance=distance, predecessor=predecessor)
