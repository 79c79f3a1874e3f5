"""Exhaustive core checks over every coalition of a game."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from owenset.core.config import settings
from owenset.core.errors import TooLarge
from owenset.services.bmatching import BMatchingInstance
from owenset.services.bmatching import coalition_value as bmatching_value
from owenset.services.branching import BranchingInstance, coalition_cost
from owenset.services.common import Imputation, require_imputation
from owenset.services.graph import DiGraph, max_flow
from owenset.services.maxflow import MaxFlowInstance

logger = logging.getLogger(__name__)

GameInstance = MaxFlowInstance | BranchingInstance | BMatchingInstance


@dataclass(frozen=True)
class CoreOk:
    coalitions: int


@dataclass(frozen=True)
class CoreViolation:
    """A coalition paid less than its value (profit games) or charged more than its cost."""

    coalition: frozenset[int]
    value: Fraction
    share: Fraction


CoreVerdict = CoreOk | CoreViolation


def is_cost_game(instance: GameInstance) -> bool:
    return isinstance(instance, BranchingInstance)


def _flow_value(instance: MaxFlowInstance, coalition: set[int]) -> Fraction:
    kept = [edge for edge in instance.graph.edges if edge.id in coalition]
    if not kept:
        return Fraction(0)
    graph = DiGraph.from_pairs(instance.graph.n, ((e.tail, e.head) for e in kept))
    capacities = {i: instance.capacities[e.id] for i, e in enumerate(kept)}
    return max_flow(graph, capacities, instance.source, instance.sink).value


def coalition_value(instance: GameInstance, coalition: Iterable[int]) -> Fraction | None:
    """Worth of the subgame played by ``coalition``.

    Returns None for a branching coalition that cannot reach the root on its own.
    """
    members = set(coalition)
    if not members:
        return Fraction(0)
    if isinstance(instance, MaxFlowInstance):
        return _flow_value(instance, members)
    if isinstance(instance, BranchingInstance):
        return coalition_cost(instance, sorted(members))
    return bmatching_value(instance, members)


def verify_core(
    instance: GameInstance,
    imputation: Mapping[int, Fraction],
    max_agents: int | None = None,
) -> CoreVerdict:
    """Check every nonempty coalition, in ascending bitmask order over the agent list.

    Raises:
        NotAnImputation: If the shares do not sum to the worth.
        TooLarge: If there are more agents than ``max_agents``
            (``settings.MAX_AGENTS`` by default).
    """
    bound = settings.MAX_AGENTS if max_agents is None else max_agents
    agents = instance.agents
    if len(agents) > bound:
        raise TooLarge(f"{len(agents)} agents exceed the core-check bound {bound}")
    shares: Imputation = require_imputation(imputation, agents, instance.worth)
    cost_game = is_cost_game(instance)

    checked = 0
    for mask in range(1, 1 << len(agents)):
        members = frozenset(a for i, a in enumerate(agents) if mask >> i & 1)
        value = coalition_value(instance, members)
        if value is None:
            continue
        checked += 1
        share = sum((shares[a] for a in members), Fraction(0))
        if (share > value) if cost_game else (share < value):
            logger.info(f"Coalition {sorted(members)} has value {value} but share {share}")
            return CoreViolation(coalition=members, value=value, share=share)
    logger.debug(f"Core check passed on {checked} coalitions")
    return CoreOk(coalitions=checked)
