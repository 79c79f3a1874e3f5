"""Min-cost branching game instances."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from owenset.core.errors import Disconnected, InstanceValidationError
from owenset.services.branching.edmonds import BranchingResult, edmonds
from owenset.services.graph import DiGraph, default_edge_names, reachable_from

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchingInstance:
    """Directed graph with nonnegative edge costs and a root.

    Every vertex other than the root is an agent and must have a path to the root.
    ``undirected`` marks instances lowered from an MST input, where edges ``2i`` and
    ``2i + 1`` are the two directions of undirected edge ``i``.
    """

    graph: DiGraph
    costs: Mapping[int, Fraction]
    root: int
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()
    undirected: bool = False

    def __post_init__(self) -> None:
        self.graph.check_vertex(self.root)
        for edge in self.graph.edges:
            if edge.id not in self.costs:
                raise InstanceValidationError(f"Edge {edge.id} has no cost")
            if self.costs[edge.id] < 0:
                raise InstanceValidationError(
                    f"Edge {edge.id} has cost {self.costs[edge.id]}; costs must be nonnegative"
                )
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(self.graph.n)))
        if not self.edge_names:
            object.__setattr__(
                self, "edge_names", default_edge_names(self.graph, self.vertex_names)
            )
        if len(self.vertex_names) != self.graph.n or len(self.edge_names) != self.graph.m:
            raise InstanceValidationError("Name lists do not match the graph size")

        reversed_graph = DiGraph.from_pairs(
            self.graph.n, ((e.head, e.tail) for e in self.graph.edges)
        )
        reaching = reachable_from(reversed_graph, self.root, lambda _: True)
        stranded = [self.vertex_names[v] for v in self.agents if v not in reaching]
        if stranded:
            raise Disconnected(f"Vertices without a path to the root: {stranded}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, Fraction | int | str]],
        root: int,
        vertex_names: tuple[str, ...] = (),
    ) -> BranchingInstance:
        edges = list(edges)
        graph = DiGraph.from_pairs(n, ((tail, head) for tail, head, _ in edges))
        costs = {index: Fraction(cost) for index, (_, _, cost) in enumerate(edges)}
        return cls(graph, costs, root, vertex_names=vertex_names)

    @classmethod
    def from_undirected(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, Fraction | int | str]],
        root: int,
        vertex_names: tuple[str, ...] = (),
    ) -> BranchingInstance:
        """Lower an undirected spanning-tree game by doubling every edge."""
        pairs: list[tuple[int, int]] = []
        costs: dict[int, Fraction] = {}
        for a, b, cost in edges:
            for tail, head in ((a, b), (b, a)):
                costs[len(pairs)] = Fraction(cost)
                pairs.append((tail, head))
        graph = DiGraph.from_pairs(n, pairs)
        return cls(graph, costs, root, vertex_names=vertex_names, undirected=True)

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if v != self.root)

    def agent_name(self, agent: int) -> str:
        return self.vertex_names[agent]

    @cached_property
    def optimum(self) -> BranchingResult:
        """Minimum branching with its laminar dual."""
        return edmonds(
            self.graph.n,
            [(e.id, e.tail, e.head, Fraction(self.costs[e.id])) for e in self.graph.edges],
            self.root,
        )

    @property
    def worth(self) -> Fraction:
        return self.optimum.value
