"""Owen imputations of the b-matching game and coalition values."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from fractions import Fraction

from owenset.core.errors import NotOptimalDual
from owenset.services.bmatching.instance import BMatchingInstance
from owenset.services.bmatching.programs import BMatchDual
from owenset.services.common import Imputation, OwenVerdict, require_imputation
from owenset.services.graph import DiGraph

logger = logging.getLogger(__name__)


def owen_from_dual(instance: BMatchingInstance, dual: BMatchDual) -> Imputation:
    """``p_x = b_x * dual_x``.

    Raises:
        NotOptimalDual: If ``dual`` is infeasible or not optimal.
    """
    problems = dual.violations(instance)
    if problems:
        raise NotOptimalDual(f"Dual is infeasible: {problems[0]}")
    if dual.objective(instance) != instance.worth:
        raise NotOptimalDual(
            f"Dual objective {dual.objective(instance)} differs from the worth {instance.worth}"
        )
    return {x: instance.b[x] * dual.values.get(x, Fraction(0)) for x in instance.agents}


def check_owen_membership(
    instance: BMatchingInstance, imputation: Mapping[int, Fraction]
) -> OwenVerdict:
    """The imputation fixes the only candidate dual ``p_x / b_x``; check it.

    Raises:
        NotAnImputation: If the shares do not sum to the worth or name unknown agents.
    """
    shares = require_imputation(imputation, instance.agents, instance.worth)
    dual = BMatchDual(values={x: shares[x] / instance.b[x] for x in instance.agents})
    problems = dual.violations(instance)
    if problems:
        return OwenVerdict.no(f"implied dual is infeasible: {problems[0]}")
    return OwenVerdict.yes(dual)


def induced_instance(instance: BMatchingInstance, coalition: Iterable[int]) -> BMatchingInstance:
    """Subgame on the members of ``coalition`` with their capacities and edges."""
    keep = sorted(set(coalition))
    left = [v for v in keep if instance.is_left(v)]
    right = [v for v in keep if not instance.is_left(v)]
    order = left + right
    index = {v: i for i, v in enumerate(order)}
    kept_edges = [e for e in instance.graph.edges if e.tail in index and e.head in index]
    graph = DiGraph.from_pairs(len(order), ((index[e.tail], index[e.head]) for e in kept_edges))
    return BMatchingInstance(
        graph=graph,
        left_size=len(left),
        weights={i: instance.weights[e.id] for i, e in enumerate(kept_edges)},
        b={index[v]: instance.b[v] for v in order},
        vertex_names=tuple(instance.vertex_names[v] for v in order),
        edge_names=tuple(instance.edge_names[e.id] for e in kept_edges),
    )


def coalition_value(instance: BMatchingInstance, coalition: Iterable[int]) -> Fraction:
    sub = induced_instance(instance, coalition)
    if sub.graph.m == 0:
        return Fraction(0)
    return sub.worth
