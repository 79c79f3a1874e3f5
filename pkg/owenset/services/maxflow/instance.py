"""Max-flow game instances and their dual solutions."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from owenset.core.errors import InstanceValidationError, InvalidVertex
from owenset.services.graph import (
    DiGraph,
    EdgeClass,
    EdgeClassification,
    FlowResult,
    classify_edges,
    default_edge_names,
    max_flow,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaxFlowInstance:
    """Directed graph with positive capacities; every edge is an agent."""

    graph: DiGraph
    capacities: Mapping[int, Fraction]
    source: int
    sink: int
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        self.graph.check_vertex(self.source)
        self.graph.check_vertex(self.sink)
        if self.source == self.sink:
            raise InvalidVertex("Source and sink must differ")
        for edge in self.graph.edges:
            if edge.id not in self.capacities:
                raise InstanceValidationError(f"Edge {edge.id} has no capacity")
            if self.capacities[edge.id] <= 0:
                raise InstanceValidationError(
                    f"Edge {edge.id} has capacity {self.capacities[edge.id]}; "
                    "capacities must be positive"
                )
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(self.graph.n)))
        if not self.edge_names:
            object.__setattr__(
                self, "edge_names", default_edge_names(self.graph, self.vertex_names)
            )
        if len(self.vertex_names) != self.graph.n or len(self.edge_names) != self.graph.m:
            raise InstanceValidationError("Name lists do not match the graph size")
        if len(set(self.edge_names)) != len(self.edge_names):
            raise InstanceValidationError("Edge names must be unique")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, Fraction | int | str]],
        source: int,
        sink: int,
        vertex_names: tuple[str, ...] = (),
    ) -> MaxFlowInstance:
        edges = list(edges)
        graph = DiGraph.from_pairs(n, ((tail, head) for tail, head, _ in edges))
        capacities = {index: Fraction(cap) for index, (_, _, cap) in enumerate(edges)}
        return cls(graph, capacities, source, sink, vertex_names=vertex_names)

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(range(self.graph.m))

    def agent_name(self, agent: int) -> str:
        return self.edge_names[agent]

    @cached_property
    def flow(self) -> FlowResult:
        return max_flow(self.graph, self.capacities, self.source, self.sink)

    @property
    def worth(self) -> Fraction:
        return self.flow.value

    @cached_property
    def classification(self) -> EdgeClassification:
        return classify_edges(self.graph, self.capacities, self.source, self.sink)

    def essential_edges(self) -> tuple[int, ...]:
        return tuple(e for e, kind in self.classification.items() if kind is EdgeClass.ESSENTIAL)


@dataclass(frozen=True)
class FlowDual:
    """Vertex potentials and edge lengths of the fractional-cut LP."""

    potentials: dict[int, Fraction]
    lengths: dict[int, Fraction] = field(default_factory=dict)

    def objective(self, instance: MaxFlowInstance) -> Fraction:
        return sum(
            (instance.capacities[e] * self.lengths[e] for e in instance.agents), Fraction(0)
        )

    def violations(self, instance: MaxFlowInstance) -> list[str]:
        """Constraints of the fractional-cut LP that this dual breaks (empty when feasible)."""
        problems = []
        pi, delta = self.potentials, self.lengths
        for v in range(instance.graph.n):
            if pi.get(v, Fraction(0)) < 0:
                problems.append(f"negative potential at vertex {instance.vertex_names[v]}")
        for edge in instance.graph.edges:
            length = delta.get(edge.id, Fraction(0))
            if length < 0:
                problems.append(f"negative length on {instance.agent_name(edge.id)}")
            drop = pi.get(edge.tail, Fraction(0)) - pi.get(edge.head, Fraction(0))
            if length < drop:
                problems.append(
                    f"potential drop {drop} exceeds length {length} on "
                    f"{instance.agent_name(edge.id)}"
                )
        if pi.get(instance.source, Fraction(0)) - pi.get(instance.sink, Fraction(0)) < 1:
            problems.append("source potential is less than sink potential plus one")
        return problems

    def is_optimal(self, instance: MaxFlowInstance) -> bool:
        return not self.violations(instance) and self.objective(instance) == instance.worth
