"""Leximin and leximax Owen cost-shares of the branching game."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction

from owenset.core.errors import SolverError
from owenset.services.branching.dual import (
    cut_name,
    laminar_cuts,
    leaving_edges,
    solve_branching_dual,
)
from owenset.services.branching.instance import BranchingInstance
from owenset.services.graph import DiGraph, max_flow, min_vertex_cut_side
from owenset.services.leximin import Agent, LeximinResult, RoundOutcome, fix_iteratively
from owenset.services.lp import (
    Constraint,
    LinearProgram,
    Relation,
    Sense,
    Status,
    constraint,
    solve_with_separation,
)

logger = logging.getLogger(__name__)


class CutRoundSolver:
    """Fixing rounds over every vertex set, with cuts carried from round to round."""

    def __init__(self, instance: BranchingInstance, leximax: bool = False):
        self.instance = instance
        self.leximax = leximax
        self.cuts: dict[str, Constraint] = laminar_cuts(instance, leximax)

    def solve_round(
        self, fixed: Mapping[Agent, Fraction], unfixed: Sequence[Agent], maximize: bool
    ) -> RoundOutcome:
        result = solve_branching_dual(
            self.instance,
            fixed,  # type: ignore[arg-type]
            leximax=self.leximax,
            cuts=self.cuts,
        )
        self.cuts = result.cuts
        duals = {v: result.z_vertices[v] for v in unfixed}  # type: ignore[index]
        return RoundOutcome(alpha=result.alpha, duals=duals)


def leximin_owen(instance: BranchingInstance) -> LeximinResult:
    """Leximin Owen cost-share: repeatedly raise the smallest unfixed share."""
    return fix_iteratively(instance.agents, CutRoundSolver(instance), maximize=True)


def leximax_owen(instance: BranchingInstance) -> LeximinResult:
    """Leximax Owen cost-share: repeatedly lower the largest unfixed share."""
    solver = CutRoundSolver(instance, leximax=True)
    return fix_iteratively(instance.agents, solver, maximize=False)


class ContiguousRoundSolver:
    """Fixing rounds restricted to sets crossed by exactly one edge of a fixed tree.

    With a minimum branching ``T`` fixed, only sets ``S`` whose leaving edges include a
    single tree edge matter, and the normalization against the worth drops out. For a
    tree edge ``(u, w)`` the candidate sets are found by a flow from ``v`` to ``w`` in an
    auxiliary graph over the tree descendants of ``u`` and their neighbours, where the
    other tree edges and extra edges from every neighbour into ``w`` are uncapacitated.
    """

    def __init__(self, instance: BranchingInstance):
        self.instance = instance
        self.tree = instance.optimum.edges
        self.cuts: dict[str, Constraint] = {}
        parent = {instance.graph.edges[e].tail: instance.graph.edges[e].head for e in self.tree}
        self.descendants: dict[int, set[int]] = {v: {v} for v in instance.agents}
        for v in instance.agents:
            ancestor = parent.get(v)
            while ancestor is not None and ancestor != instance.root:
                self.descendants[ancestor].add(v)
                ancestor = parent.get(ancestor)

    def _row(self, members: frozenset[int], v: int) -> Constraint:
        m = self.instance.graph.m
        coefficients: dict[int, Fraction | int] = {
            e: 1 for e in leaving_edges(self.instance, members)
        }
        coefficients[m + self.instance.agents.index(v)] = -1
        return constraint(coefficients, Relation.GE, 0, name=cut_name((members, v)))

    def _violations(self, point: tuple[Fraction, ...]) -> list[Constraint]:
        instance = self.instance
        m = instance.graph.m
        z_vertex = {v: point[m + i] for i, v in enumerate(instance.agents)}
        infinite = sum((abs(x) for x in point), Fraction(1))
        rows: dict[str, Constraint] = {}
        for tree_edge in self.tree:
            u = instance.graph.edges[tree_edge].tail
            w = instance.graph.edges[tree_edge].head
            inside = self.descendants[u]
            candidates = [v for v in sorted(inside) if z_vertex[v] > 0]
            if not candidates:
                continue
            graph, capacities, index = self._auxiliary(tree_edge, inside, w, point, infinite)
            for v in candidates:
                flow = max_flow(graph, capacities, index[v], index[w])
                if flow.value >= z_vertex[v]:
                    continue
                side = min_vertex_cut_side(graph, capacities, flow, index[v])
                vertex_of = {i: x for x, i in index.items()}
                members = frozenset(vertex_of[i] for i in side)
                row = self._row(members, v)
                rows.setdefault(row.name, row)
        return list(rows.values())

    def _auxiliary(
        self,
        tree_edge: int,
        inside: set[int],
        w: int,
        point: tuple[Fraction, ...],
        infinite: Fraction,
    ) -> tuple[DiGraph, dict[int, Fraction], dict[int, int]]:
        instance = self.instance
        tree = set(self.tree)
        neighbours = {
            x
            for e in instance.graph.edges
            for x in (e.tail, e.head)
            if (e.tail in inside) != (e.head in inside)
        } - inside
        neighbours.add(w)
        vertices = sorted(inside) + sorted(neighbours)
        index = {x: i for i, x in enumerate(vertices)}
        pairs: list[tuple[int, int]] = []
        capacities: dict[int, Fraction] = {}
        for e in instance.graph.edges:
            if e.tail not in index or e.head not in index:
                continue
            if e.tail in neighbours and e.head in neighbours:
                continue
            uncapped = e.id in tree and e.id != tree_edge
            capacities[len(pairs)] = infinite if uncapped else point[e.id]
            pairs.append((index[e.tail], index[e.head]))
        for x in sorted(neighbours - {w}):
            capacities[len(pairs)] = infinite
            pairs.append((index[x], index[w]))
        return DiGraph.from_pairs(len(vertices), pairs), capacities, index

    def solve_round(
        self, fixed: Mapping[Agent, Fraction], unfixed: Sequence[Agent], maximize: bool
    ) -> RoundOutcome:
        instance = self.instance
        m = instance.graph.m
        lp = LinearProgram()
        for e in range(m):
            lp.add_variable(f"z[{instance.edge_names[e]}]")
        for v in instance.agents:
            lp.add_variable(f"z[{instance.agent_name(v)}]", free=v in fixed)
        position = {v: m + i for i, v in enumerate(instance.agents)}
        lp.add_constraint({position[v]: 1 for v in unfixed}, Relation.EQ, 1, name="normalize")
        for row in self.cuts.values():
            lp.add_constraint(row)
        objective: dict[int, Fraction] = {e: Fraction(instance.costs[e]) for e in range(m)}
        for v, value in fixed.items():
            objective[position[v]] = -Fraction(value)  # type: ignore[index]
        lp.set_objective(objective, Sense.MIN)

        solution = solve_with_separation(lp, self._violations)
        if solution.status is not Status.OPTIMAL or solution.objective is None:
            raise SolverError(f"Contiguous round LP became {solution.status.value}")
        for cut in solution.cuts:
            self.cuts[cut.name] = cut
        return RoundOutcome(
            alpha=solution.objective,
            duals={v: solution.values[position[v]] for v in unfixed},  # type: ignore[index]
        )


def leximin_owen_concise(instance: BranchingInstance) -> LeximinResult:
    """Leximin Owen cost-share through the contiguous-set series over a minimum branching."""
    return fix_iteratively(instance.agents, ContiguousRoundSolver(instance), maximize=True)
