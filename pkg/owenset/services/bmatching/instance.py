"""Bipartite b-matching game instances."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from owenset.core.errors import InstanceValidationError
from owenset.services.bmatching.programs import BMatchingResult, max_weight_bmatching
from owenset.services.graph import DiGraph, default_edge_names

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BMatchingInstance:
    """Bipartite graph with positive weights and integral vertex capacities ``b``.

    Vertices ``0 .. left_size - 1`` form the side U and the rest the side V; every edge
    runs from U to V. All vertices are agents.
    """

    graph: DiGraph
    left_size: int
    weights: Mapping[int, Fraction]
    b: Mapping[int, int]
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.left_size <= self.graph.n:
            raise InstanceValidationError(f"Left side size {self.left_size} is out of range")
        for edge in self.graph.edges:
            if not (edge.tail < self.left_size <= edge.head):
                raise InstanceValidationError(f"Edge {edge.id} does not cross the bipartition")
            weight = self.weights.get(edge.id)
            if weight is None or weight <= 0:
                raise InstanceValidationError(f"Edge {edge.id} needs a positive weight")
        for v in range(self.graph.n):
            capacity = self.b.get(v)
            if not isinstance(capacity, int) or capacity < 1:
                raise InstanceValidationError(f"Vertex {v} needs an integer capacity b >= 1")
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(self.graph.n)))
        if not self.edge_names:
            object.__setattr__(
                self, "edge_names", default_edge_names(self.graph, self.vertex_names)
            )
        if len(self.vertex_names) != self.graph.n or len(self.edge_names) != self.graph.m:
            raise InstanceValidationError("Name lists do not match the graph size")

    @classmethod
    def from_edges(
        cls,
        left: Sequence[str],
        right: Sequence[str],
        edges: Iterable[tuple[int, int, Fraction | int | str]],
        b: Sequence[int],
    ) -> BMatchingInstance:
        """Build from side names, ``(left index, right index, weight)`` triples and b values.

        ``b`` lists the left capacities first, then the right ones.
        """
        edges = list(edges)
        offset = len(left)
        graph = DiGraph.from_pairs(
            offset + len(right), ((i, offset + j) for i, j, _ in edges)
        )
        weights = {index: Fraction(weight) for index, (_, _, weight) in enumerate(edges)}
        capacities = dict(enumerate(b))
        return cls(graph, offset, weights, capacities, vertex_names=tuple(left) + tuple(right))

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(range(self.graph.n))

    def agent_name(self, agent: int) -> str:
        return self.vertex_names[agent]

    def is_left(self, v: int) -> bool:
        return v < self.left_size

    @cached_property
    def optimum(self) -> BMatchingResult:
        return max_weight_bmatching(self)

    @property
    def worth(self) -> Fraction:
        return self.optimum.value
