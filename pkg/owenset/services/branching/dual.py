"""Cut-set duals of the branching game: splits, separation and the fixing-round LP."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from owenset.core.errors import NotAnImputation, NotOptimalDual, SolverError
from owenset.services.branching.instance import BranchingInstance
from owenset.services.common import Imputation, OwenVerdict, require_imputation
from owenset.services.graph import max_flow, min_vertex_cut_side
from owenset.services.leximin import LeximinProblem
from owenset.services.lp import (
    Constraint,
    LinearProgram,
    LpSolution,
    Relation,
    Sense,
    Status,
    constraint,
    solve,
    solve_with_separation,
)

logger = logging.getLogger(__name__)

# (vertex set S, paying member v)
CutKey = tuple[frozenset[int], int]


@dataclass(frozen=True)
class DualCutSolution:
    """Split ``y(S, v)`` of a cut-packing dual among the members of each set."""

    split: dict[CutKey, Fraction]

    @property
    def totals(self) -> dict[frozenset[int], Fraction]:
        """``y(S)`` per set."""
        totals: dict[frozenset[int], Fraction] = {}
        for (members, _), value in self.split.items():
            totals[members] = totals.get(members, Fraction(0)) + value
        return totals

    def shares(self, agents: Iterable[int]) -> Imputation:
        shares = {v: Fraction(0) for v in agents}
        for (_, v), value in self.split.items():
            shares[v] += value
        return shares


@dataclass(frozen=True)
class CutViolation:
    """A set ``S`` containing ``vertex`` whose leaving capacity is below the bound."""

    members: frozenset[int]
    vertex: int
    capacity: Fraction
    bound: Fraction


def leaving_edges(instance: BranchingInstance, members: frozenset[int]) -> list[int]:
    return [e.id for e in instance.graph.edges if e.tail in members and e.head not in members]


def owen_from_split(instance: BranchingInstance, split: Mapping[CutKey, Fraction]) -> Imputation:
    """Cost-share induced by an explicit split of an optimal cut-packing dual.

    Raises:
        NotOptimalDual: If a value is negative, a payer lies outside its set, a set holds
            the root, a packing constraint fails or the total differs from the worth.
    """
    solution = DualCutSolution(split={key: Fraction(value) for key, value in split.items()})
    for (members, v), value in solution.split.items():
        if value < 0:
            raise NotOptimalDual(f"Negative split value {value} for vertex {v}")
        if v not in members:
            raise NotOptimalDual(f"Vertex {v} pays for a set it does not belong to")
        if instance.root in members:
            raise NotOptimalDual("Dual sets must not contain the root")
    load = {e: Fraction(0) for e in range(instance.graph.m)}
    for members, total in solution.totals.items():
        for e in leaving_edges(instance, members):
            load[e] += total
    for e, used in load.items():
        if used > instance.costs[e]:
            raise NotOptimalDual(
                f"Sets leaving {instance.edge_names[e]} pack {used} > cost {instance.costs[e]}"
            )
    total = sum(solution.split.values(), Fraction(0))
    if total != instance.worth:
        raise NotOptimalDual(f"Dual total {total} differs from the worth {instance.worth}")
    return solution.shares(instance.agents)


def laminar_owen_share(instance: BranchingInstance) -> Imputation:
    """Owen cost-share splitting every laminar dual set equally among its members."""
    split = {
        (members, v): total / len(members)
        for members, total in instance.optimum.duals
        for v in members
    }
    return owen_from_split(instance, split)


def separation_oracle(
    instance: BranchingInstance,
    z_edges: Mapping[int, Fraction],
    z_vertices: Mapping[int, Fraction],
    beta: Fraction,
    leximax: bool = False,
) -> list[CutViolation]:
    """Violated cut constraints ``z(leaving S) >= +-z(v) + beta`` at the given point.

    For every agent the maximum flow towards the root with capacities ``z`` is the
    cheapest such cut; when it falls short, the source side of a minimum cut is
    reported. An empty list means the point is feasible.
    """
    sign = -1 if leximax else 1
    violations = []
    for v in instance.agents:
        bound = sign * Fraction(z_vertices.get(v, 0)) + beta
        if bound <= 0:
            continue
        flow = max_flow(instance.graph, z_edges, v, instance.root)
        if flow.value < bound:
            side = min_vertex_cut_side(instance.graph, z_edges, flow, v)
            violations.append(CutViolation(frozenset(side), v, flow.value, bound))
    return violations


@dataclass(frozen=True)
class _Layout:
    """Variable indices of the fixing-round LP: edges, then agents, then ``beta``."""

    instance: BranchingInstance
    agent_index: dict[int, int] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "agent_index", {v: i for i, v in enumerate(self.instance.agents)}
        )

    def edge(self, e: int) -> int:
        return e

    def vertex(self, v: int) -> int:
        return self.instance.graph.m + self.agent_index[v]

    @property
    def beta(self) -> int:
        return self.instance.graph.m + len(self.agent_index)


def cut_name(key: CutKey) -> str:
    members, v = key
    return f"cut:{','.join(map(str, sorted(members)))}|{v}"


def cut_row(
    instance: BranchingInstance, key: CutKey, leximax: bool = False, with_beta: bool = True
) -> Constraint:
    """``z(leaving S) - (+-z(v)) - beta >= 0``."""
    layout = _Layout(instance)
    members, v = key
    coefficients: dict[int, Fraction | int] = {
        layout.edge(e): 1 for e in leaving_edges(instance, members)
    }
    coefficients[layout.vertex(v)] = 1 if leximax else -1
    if with_beta:
        coefficients[layout.beta] = -1
    return constraint(coefficients, Relation.GE, 0, name=cut_name(key))


def laminar_cuts(instance: BranchingInstance, leximax: bool = False) -> dict[str, Constraint]:
    """Rows for every laminar dual set of the minimum branching and each of its members."""
    rows = {}
    for members, _ in instance.optimum.duals:
        for v in sorted(members):
            rows[cut_name((members, v))] = cut_row(instance, (members, v), leximax)
    return rows


@dataclass(frozen=True)
class BranchingDualRound:
    """Optimum of one fixing-round LP.

    ``alpha`` is the optimal primal round value; ``z_vertices`` holds the vertex duals
    whose positive entries mark the agents fixed at ``alpha``.
    """

    alpha: Fraction
    z_edges: dict[int, Fraction]
    z_vertices: dict[int, Fraction]
    beta: Fraction
    cuts: dict[str, Constraint]


def _round_program(
    instance: BranchingInstance,
    fixed: Mapping[int, Fraction],
    leximax: bool,
    cuts: Mapping[str, Constraint],
) -> LinearProgram:
    layout = _Layout(instance)
    sign = -1 if leximax else 1
    lp = LinearProgram()
    for e in range(instance.graph.m):
        lp.add_variable(f"z[{instance.edge_names[e]}]")
    for v in instance.agents:
        lp.add_variable(f"z[{instance.agent_name(v)}]", free=v in fixed)
    lp.add_variable("beta", free=True)

    unfixed = [v for v in instance.agents if v not in fixed]
    lp.add_constraint({layout.vertex(v): 1 for v in unfixed}, Relation.EQ, 1, name="normalize")
    for row in cuts.values():
        lp.add_constraint(row)

    objective: dict[int, Fraction] = {
        layout.edge(e): Fraction(instance.costs[e]) for e in range(instance.graph.m)
    }
    for v, value in fixed.items():
        objective[layout.vertex(v)] = -sign * Fraction(value)
    objective[layout.beta] = -instance.worth
    lp.set_objective(objective, Sense.MIN)
    return lp


def _read_round(
    instance: BranchingInstance, solution: LpSolution, leximax: bool, cuts: dict[str, Constraint]
) -> BranchingDualRound:
    if solution.status is not Status.OPTIMAL or solution.objective is None:
        raise SolverError(f"Branching round LP became {solution.status.value}")
    layout = _Layout(instance)
    point = solution.values
    for cut in solution.cuts:
        cuts[cut.name] = cut
    return BranchingDualRound(
        alpha=-solution.objective if leximax else solution.objective,
        z_edges={e: point[layout.edge(e)] for e in range(instance.graph.m)},
        z_vertices={v: point[layout.vertex(v)] for v in instance.agents},
        beta=point[layout.beta],
        cuts=cuts,
    )


def solve_branching_dual(
    instance: BranchingInstance,
    fixed: Mapping[int, Fraction] | None = None,
    leximax: bool = False,
    cuts: Mapping[str, Constraint] | None = None,
) -> BranchingDualRound:
    """One fixing round of the cut LP, solved by constraint generation.

    Starts from ``cuts`` (the laminar rows of the minimum branching by default) and
    adds the sets reported by :func:`separation_oracle` until none is violated.
    """
    fixed = dict(fixed or {})
    known = dict(cuts) if cuts is not None else laminar_cuts(instance, leximax)
    layout = _Layout(instance)
    lp = _round_program(instance, fixed, leximax, known)

    def oracle(point: tuple[Fraction, ...]) -> list[Constraint]:
        violations = separation_oracle(
            instance,
            {e: point[layout.edge(e)] for e in range(instance.graph.m)},
            {v: point[layout.vertex(v)] for v in instance.agents},
            point[layout.beta],
            leximax=leximax,
        )
        return [
            cut_row(instance, (violation.members, violation.vertex), leximax)
            for violation in violations
        ]

    solution = solve_with_separation(lp, oracle)
    return _read_round(instance, solution, leximax, known)


def all_cut_keys(instance: BranchingInstance) -> list[CutKey]:
    agents = instance.agents
    keys = []
    for size in range(1, len(agents) + 1):
        for members in itertools.combinations(agents, size):
            keys.extend((frozenset(members), v) for v in members)
    return keys


def enumerated_branching_dual(
    instance: BranchingInstance,
    fixed: Mapping[int, Fraction] | None = None,
    leximax: bool = False,
) -> BranchingDualRound:
    """The same round LP with every set written out; exponential in the agent count."""
    fixed = dict(fixed or {})
    rows = {cut_name(key): cut_row(instance, key, leximax) for key in all_cut_keys(instance)}
    solution = solve(_round_program(instance, fixed, leximax, rows))
    return _read_round(instance, solution, leximax, rows)


def split_problem(instance: BranchingInstance) -> LeximinProblem:
    """Every optimal split ``y(S, v)`` written out, tracking each agent's cost-share.

    Exponential in the agent count; used to sample the Owen set of small instances.
    """
    keys = all_cut_keys(instance)
    lp = LinearProgram()
    for members, v in keys:
        lp.add_variable(f"y[{cut_name((members, v))}]")
    for e in range(instance.graph.m):
        packing = {
            j: 1
            for j, (members, _) in enumerate(keys)
            if instance.graph.edges[e].tail in members
            and instance.graph.edges[e].head not in members
        }
        if packing:
            lp.add_constraint(
                packing, Relation.LE, instance.costs[e], name=f"edge:{instance.edge_names[e]}"
            )
    lp.add_constraint({j: 1 for j in range(len(keys))}, Relation.EQ, instance.worth, name="worth")
    lp.set_objective({}, Sense.MAX)
    shares = {
        v: {j: Fraction(1) for j, key in enumerate(keys) if key[1] == v} for v in instance.agents
    }
    return LeximinProblem(lp, shares)


def check_owen_membership(
    instance: BranchingInstance, share: Mapping[int, Fraction]
) -> OwenVerdict:
    """Decide whether ``share`` comes from a split of an optimal cut-packing dual.

    The split exists exactly when ``min c.z - p.w`` over ``z >= 0``, ``w <= 1`` and
    ``z(leaving S) >= w_v`` for every set ``S`` holding ``v`` is zero. That LP is
    solved by constraint generation; the duals of its cut rows are the split.

    Raises:
        NotAnImputation: If the shares do not sum to the minimum branching cost.
    """
    shares = require_imputation(share, instance.agents, instance.worth)
    for v, value in shares.items():
        if value < 0:
            return OwenVerdict.no(f"negative cost share for {instance.agent_name(v)}")

    layout = _Layout(instance)
    lp = LinearProgram()
    for e in range(instance.graph.m):
        lp.add_variable(f"z[{instance.edge_names[e]}]")
    for v in instance.agents:
        lp.add_variable(f"w[{instance.agent_name(v)}]", free=True)
    for v in instance.agents:
        lp.add_constraint({layout.vertex(v): 1}, Relation.LE, 1, name=f"cap:{v}")
    objective: dict[int, Fraction] = {
        layout.edge(e): Fraction(instance.costs[e]) for e in range(instance.graph.m)
    }
    for v in instance.agents:
        objective[layout.vertex(v)] = -shares[v]
    lp.set_objective(objective, Sense.MIN)

    def oracle(point: tuple[Fraction, ...]) -> list[Constraint]:
        violations = separation_oracle(
            instance,
            {e: point[layout.edge(e)] for e in range(instance.graph.m)},
            {v: point[layout.vertex(v)] for v in instance.agents},
            Fraction(0),
        )
        return [
            cut_row(instance, (violation.members, violation.vertex), with_beta=False)
            for violation in violations
        ]

    solution = solve_with_separation(lp, oracle)
    if solution.status is not Status.OPTIMAL or solution.objective is None:
        raise SolverError(f"Membership LP became {solution.status.value}")
    if solution.objective < 0:
        return OwenVerdict.no(
            f"no split of an optimal dual yields these shares (gap {-solution.objective})"
        )

    base_rows = len(lp.constraints)
    split: dict[CutKey, Fraction] = {}
    for offset, cut in enumerate(solution.cuts):
        value = solution.duals[base_rows + offset]
        if value != 0:
            split[_parse_cut_name(cut.name)] = value
    certificate = DualCutSolution(split=split)
    try:
        if owen_from_split(instance, split) != shares:
            raise SolverError("Recovered split does not reproduce the shares")
    except (NotOptimalDual, NotAnImputation) as exc:
        raise SolverError(f"Recovered split is not a valid dual: {exc}") from exc
    return OwenVerdict.yes(certificate)


def _parse_cut_name(name: str) -> CutKey:
    members, v = name.removeprefix("cut:").split("|")
    return frozenset(int(x) for x in members.split(",")), int(v)

