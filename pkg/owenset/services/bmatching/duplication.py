"""Reduction of a b-matching game to an assignment game by copying vertices."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from owenset.core.config import settings
from owenset.core.errors import BoundExceeded, SolverError
from owenset.services.bmatching.instance import BMatchingInstance
from owenset.services.bmatching.programs import dual_program
from owenset.services.common import Imputation
from owenset.services.graph import DiGraph
from owenset.services.leximin import LeximinProblem, LeximinResult
from owenset.services.leximin import leximax as run_leximax
from owenset.services.leximin import leximin as run_leximin
from owenset.services.lp import LinearExpression

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DuplicatedInstance:
    """Unit-capacity copy of a b-matching instance.

    ``copies[x]`` lists the expanded vertices standing for original vertex ``x``; the
    first one is its representative.
    """

    expanded: BMatchingInstance
    copies: dict[int, tuple[int, ...]]

    def origin(self, copy: int) -> int:
        for x, group in self.copies.items():
            if copy in group:
                return x
        raise KeyError(copy)


def duplicate_reduction(
    instance: BMatchingInstance, bound: int | None = None
) -> DuplicatedInstance:
    """Replace every vertex ``x`` by ``b_x`` copies joined to every copy of its neighbours.

    Raises:
        BoundExceeded: If the total capacity exceeds ``bound``
            (``settings.DUPLICATION_BOUND`` by default).
    """
    limit = settings.DUPLICATION_BOUND if bound is None else bound
    total = sum(instance.b[x] for x in instance.agents)
    if total > limit:
        raise BoundExceeded(f"Duplication needs {total} vertices; the bound is {limit}")

    copies: dict[int, tuple[int, ...]] = {}
    names: list[str] = []
    for x in instance.agents:
        count = instance.b[x]
        copies[x] = tuple(range(len(names), len(names) + count))
        base = instance.vertex_names[x]
        names.extend([base] if count == 1 else [f"{base}#{k}" for k in range(count)])

    pairs: list[tuple[int, int]] = []
    weights: dict[int, Fraction] = {}
    for edge in instance.graph.edges:
        for tail in copies[edge.tail]:
            for head in copies[edge.head]:
                weights[len(pairs)] = Fraction(instance.weights[edge.id])
                pairs.append((tail, head))

    left_size = sum(instance.b[x] for x in instance.agents if instance.is_left(x))
    expanded = BMatchingInstance(
        graph=DiGraph.from_pairs(len(names), pairs),
        left_size=left_size,
        weights=weights,
        b={v: 1 for v in range(len(names))},
        vertex_names=tuple(names),
    )
    logger.debug(f"Duplicated {instance.graph.n} vertices into {len(names)}, {len(pairs)} edges")
    return DuplicatedInstance(expanded=expanded, copies=copies)


@dataclass(frozen=True)
class DuplicationRun:
    """Lifted imputation plus the dual of every copy in the final round."""

    imputation: Imputation
    copy_duals: dict[int, Fraction]
    result: LeximinResult
    reduction: DuplicatedInstance


def duplication_run(
    instance: BMatchingInstance, leximax: bool = False, bound: int | None = None
) -> DuplicationRun:
    """Leximin (or leximax) on the assignment game, lifted back as ``b_x`` times a copy's dual.

    Raises:
        BoundExceeded: If the reduction is too large.
        SolverError: If two copies of one vertex end with different duals.
    """
    reduction = duplicate_reduction(instance, bound)
    shares: dict[int, LinearExpression] = {
        x: {group[0]: Fraction(instance.b[x])} for x, group in reduction.copies.items()
    }
    problem = LeximinProblem(dual_program(reduction.expanded), shares)
    result = run_leximax(problem) if leximax else run_leximin(problem)
    if result.point is None:
        raise SolverError("The fixing rounds returned no dual point")

    copy_duals = {copy: result.point[copy] for copy in range(reduction.expanded.graph.n)}
    for x, group in reduction.copies.items():
        values = {copy_duals[copy] for copy in group}
        if len(values) > 1:
            raise SolverError(
                f"Copies of {instance.agent_name(x)} hold different duals: {sorted(values)}"
            )
    return DuplicationRun(
        imputation=dict(result.shares),  # type: ignore[arg-type]
        copy_duals=copy_duals,
        result=result,
        reduction=reduction,
    )


def leximin_via_duplication(instance: BMatchingInstance, leximax: bool = False) -> Imputation:
    return duplication_run(instance, leximax=leximax).imputation
