"""Chu-Liu/Edmonds minimum branching towards a root, with its laminar dual."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import networkx as nx

from owenset.core.errors import Disconnected, SolverError

if TYPE_CHECKING:
    from owenset.services.branching.instance import BranchingInstance

logger = logging.getLogger(__name__)

# (edge id, tail, head, cost)
CostEdge = tuple[int, int, int, Fraction]


@dataclass(frozen=True)
class BranchingResult:
    """A minimum branching and a laminar optimal dual.

    ``duals`` lists sets of original vertices with positive ``y(S)``; every edge leaving
    a set pays its ``y`` and the values sum to ``value``.
    """

    edges: tuple[int, ...]
    value: Fraction
    duals: tuple[tuple[frozenset[int], Fraction], ...]


@dataclass(frozen=True)
class _Best:
    cost: Fraction
    edge_id: int
    head: int


def _cheapest_out_edges(edges: Sequence[CostEdge], root: int) -> dict[int, _Best]:
    best: dict[int, _Best] = {}
    for edge_id, tail, head, cost in edges:
        if tail == root or tail == head:
            continue
        current = best.get(tail)
        if current is None or (cost, edge_id) < (current.cost, current.edge_id):
            best[tail] = _Best(cost, edge_id, head)
    return best


def _cycles(best: dict[int, _Best]) -> list[list[int]]:
    chosen = nx.DiGraph()
    chosen.add_edges_from((tail, b.head) for tail, b in best.items())
    return sorted((sorted(cycle) for cycle in nx.simple_cycles(chosen)), key=lambda c: c[0])


def _contract(
    nodes: Sequence[int],
    members: dict[int, frozenset[int]],
    edges: Sequence[CostEdge],
    root: int,
    labels: Iterator[int],
    duals: dict[frozenset[int], Fraction],
) -> dict[int, int]:
    """One Chu-Liu/Edmonds level: returns the chosen original edge of every non-root node."""
    best = _cheapest_out_edges(edges, root)
    stranded = [v for v in nodes if v != root and v not in best]
    if stranded:
        raise Disconnected(
            f"No path to the root from {sorted(min(members[v]) for v in stranded)}"
        )
    for v in nodes:
        if v != root and best[v].cost > 0:
            duals[members[v]] = duals.get(members[v], Fraction(0)) + best[v].cost

    cycles = _cycles(best)
    if not cycles:
        return {v: best[v].edge_id for v in nodes if v != root}

    node_of = {v: v for v in nodes}
    contracted: dict[int, list[int]] = {}
    for cycle in cycles:
        label = next(labels)
        contracted[label] = cycle
        for v in cycle:
            node_of[v] = label
    next_members = {
        label: frozenset().union(*(members[v] for v in cycle))
        for label, cycle in contracted.items()
    }
    next_nodes = [v for v in nodes if node_of[v] == v] + list(contracted)
    for v in next_nodes:
        if v not in next_members:
            next_members[v] = members[v]

    next_edges: list[CostEdge] = []
    tail_of: dict[int, int] = {}
    for edge_id, tail, head, cost in edges:
        if tail == root or node_of[tail] == node_of[head]:
            continue
        tail_of[edge_id] = tail
        next_edges.append((edge_id, node_of[tail], node_of[head], cost - best[tail].cost))

    chosen = _contract(next_nodes, next_members, next_edges, root, labels, duals)

    expanded: dict[int, int] = {}
    for v in nodes:
        if v != root and node_of[v] == v:
            expanded[v] = chosen[v]
    for label, cycle in contracted.items():
        exit_edge = chosen[label]
        exit_node = tail_of[exit_edge]
        for v in cycle:
            expanded[v] = exit_edge if v == exit_node else best[v].edge_id
    return expanded


def edmonds(n: int, edges: Sequence[CostEdge], root: int) -> BranchingResult:
    """Minimum-cost branching in which every vertex has a path to ``root``.

    Every non-root vertex takes its cheapest out-edge (lowest edge id on ties); cycles
    are contracted with costs reduced by the chosen cost of their tail and the search
    recurses. The chosen reduced cost at every level is the dual of that level's vertex
    set.

    Raises:
        Disconnected: If some vertex has no path to the root.
        SolverError: If the dual does not certify the branching.
    """
    costs = {edge_id: cost for edge_id, _, _, cost in edges}
    duals: dict[frozenset[int], Fraction] = {}
    nodes = list(range(n))
    members = {v: frozenset({v}) for v in nodes}
    chosen = _contract(nodes, members, edges, root, itertools.count(n), duals)

    selected = tuple(sorted(chosen.values()))
    value = sum((costs[e] for e in selected), Fraction(0))
    if sum(duals.values(), Fraction(0)) != value:
        raise SolverError(f"Laminar dual {sum(duals.values())} does not match branching {value}")
    logger.debug(f"Minimum branching of cost {value} with {len(duals)} positive dual sets")
    return BranchingResult(
        edges=selected,
        value=value,
        duals=tuple(sorted(duals.items(), key=lambda item: (len(item[0]), sorted(item[0])))),
    )


def min_cost_branching(instance: BranchingInstance) -> BranchingResult:
    return instance.optimum


def coalition_cost(instance: BranchingInstance, coalition: Sequence[int]) -> Fraction | None:
    """Minimum branching cost of the subgraph induced by ``coalition`` and the root.

    Returns None when some member cannot reach the root inside that subgraph.
    """
    keep = sorted(set(coalition) | {instance.root})
    index = {v: i for i, v in enumerate(keep)}
    edges = [
        (e.id, index[e.tail], index[e.head], Fraction(instance.costs[e.id]))
        for e in instance.graph.edges
        if e.tail in index and e.head in index
    ]
    try:
        return edmonds(len(keep), edges, index[instance.root]).value
    except Disconnected:
        return None
