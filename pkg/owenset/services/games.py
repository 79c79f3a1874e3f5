"""Per-game dispatch of the leximin, leximax and membership commands."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from owenset.core.constants import METHOD_BOTH, METHOD_COMBINATORIAL, METHOD_LP
from owenset.core.errors import UnsupportedMethod
from owenset.services import bmatching, branching, maxflow
from owenset.services.common import GameKind, Imputation, OwenVerdict
from owenset.services.leximin import LeximinProblem
from owenset.services.verify import GameInstance

logger = logging.getLogger(__name__)

GAME_REGISTRY: dict[GameKind, type[Game]] = {}

# Enumerated split LPs of larger branching instances are too big to sample
SPLIT_SAMPLE_AGENTS = 6


def register_game(*kinds: GameKind):
    """Decorator to register a game adapter for the listed game kinds."""

    def decorator(cls: type[Game]) -> type[Game]:
        for kind in kinds:
            GAME_REGISTRY[kind] = cls
        return cls

    return decorator


def get_game(kind: GameKind | str) -> Game:
    try:
        return GAME_REGISTRY[GameKind(kind)]()
    except (KeyError, ValueError) as exc:
        raise UnsupportedMethod(f"No game registered for {kind!r}") from exc


@dataclass(frozen=True)
class Computation:
    """Shares returned by a command, with the cross-check outcome for method ``both``."""

    shares: Imputation
    method: str
    agree: bool | None = None
    certificate: dict[str, str] = field(default_factory=dict)


def _cross_check(first: Imputation, second: Imputation, label: str) -> Computation:
    agree = first == second
    if not agree:
        logger.warning(f"Methods disagree: {first} vs {second}")
    return Computation(shares=first, method=label, agree=agree)


class Game(ABC):
    """Adapter from command names to one game module."""

    name = ""
    default_method = METHOD_LP

    @abstractmethod
    def leximin(self, instance: Any, method: str) -> Computation:
        """Leximin shares by the requested method."""

    @abstractmethod
    def leximax(self, instance: Any, method: str) -> Computation:
        """Leximax shares by the requested method."""

    @abstractmethod
    def owen_check(self, instance: Any, shares: Imputation) -> OwenVerdict:
        """Owen-set membership of the given shares."""

    def owen_problem(self, instance: Any) -> LeximinProblem | None:
        """Share LP whose optimal face is the Owen set, or None when too large to sample."""
        return None

    def describe_certificate(self, instance: Any, certificate: Any) -> dict[str, str]:
        return {}

    def unsupported(self, command: str, method: str) -> UnsupportedMethod:
        return UnsupportedMethod(f"{command} --method {method} is not available for {self.name}")


@register_game(GameKind.MAXFLOW)
class MaxFlowGame(Game):
    name = "maxflow"
    default_method = METHOD_COMBINATORIAL

    def leximin(self, instance: maxflow.MaxFlowInstance, method: str) -> Computation:
        if method not in (METHOD_LP, METHOD_COMBINATORIAL, METHOD_BOTH):
            raise self.unsupported("leximin", method)
        if method == METHOD_LP:
            return Computation(shares=maxflow.leximin_owen_lp(instance).shares, method=method)
        shares, dual = maxflow.leximin_owen(instance)
        certificate = self.describe_certificate(instance, dual)
        if method == METHOD_BOTH:
            lp_shares = maxflow.leximin_owen_lp(instance).shares
            checked = _cross_check(shares, lp_shares, method)  # type: ignore[arg-type]
            return Computation(shares, method, checked.agree, certificate)
        return Computation(shares=shares, method=method, certificate=certificate)

    def leximax(self, instance: maxflow.MaxFlowInstance, method: str) -> Computation:
        if method != METHOD_LP:
            raise self.unsupported("leximax", method)
        return Computation(shares=maxflow.leximax_owen(instance).shares, method=method)

    def owen_check(self, instance: maxflow.MaxFlowInstance, shares: Imputation) -> OwenVerdict:
        return maxflow.check_owen_membership(instance, shares)

    def owen_problem(self, instance: maxflow.MaxFlowInstance) -> LeximinProblem:
        return maxflow.owen_problem(instance)

    def describe_certificate(
        self, instance: maxflow.MaxFlowInstance, certificate: maxflow.FlowDual
    ) -> dict[str, str]:
        described = {
            f"pi[{instance.vertex_names[v]}]": str(certificate.potentials.get(v, Fraction(0)))
            for v in range(instance.graph.n)
        }
        for e in instance.agents:
            value = certificate.lengths.get(e, Fraction(0))
            described[f"delta[{instance.agent_name(e)}]"] = str(value)
        return described


@register_game(GameKind.BRANCHING, GameKind.MST)
class BranchingGame(Game):
    name = "branching"

    def leximin(self, instance: branching.BranchingInstance, method: str) -> Computation:
        if method == METHOD_LP:
            return Computation(shares=branching.leximin_owen(instance).shares, method=method)
        if method == METHOD_BOTH:
            cut_series = branching.leximin_owen(instance).shares
            concise = branching.leximin_owen_concise(instance).shares
            return _cross_check(cut_series, concise, method)  # type: ignore[arg-type]
        raise self.unsupported("leximin", method)

    def leximax(self, instance: branching.BranchingInstance, method: str) -> Computation:
        if method != METHOD_LP:
            raise self.unsupported("leximax", method)
        return Computation(shares=branching.leximax_owen(instance).shares, method=method)

    def owen_check(self, instance: branching.BranchingInstance, shares: Imputation) -> OwenVerdict:
        return branching.check_owen_membership(instance, shares)

    def owen_problem(self, instance: branching.BranchingInstance) -> LeximinProblem | None:
        if len(instance.agents) > SPLIT_SAMPLE_AGENTS:
            return None
        return branching.split_problem(instance)

    def describe_certificate(
        self, instance: branching.BranchingInstance, certificate: branching.DualCutSolution
    ) -> dict[str, str]:
        described = {}
        for (members, v), value in sorted(
            certificate.split.items(), key=lambda item: (sorted(item[0][0]), item[0][1])
        ):
            names = ",".join(instance.agent_name(x) for x in sorted(members))
            described[f"y[{{{names}}}|{instance.agent_name(v)}]"] = str(value)
        return described


@register_game(GameKind.BMATCHING)
class BMatchingGame(Game):
    name = "bmatching"

    def _run(
        self, instance: bmatching.BMatchingInstance, method: str, leximax: bool
    ) -> Computation:
        command = "leximax" if leximax else "leximin"
        if method not in (METHOD_LP, METHOD_COMBINATORIAL, METHOD_BOTH):
            raise self.unsupported(command, method)
        if method == METHOD_COMBINATORIAL:
            duplicated = bmatching.leximin_via_duplication(instance, leximax=leximax)
            return Computation(shares=duplicated, method=method)
        run = bmatching.leximax_owen if leximax else bmatching.leximin_owen
        shares: Imputation = run(instance).shares  # type: ignore[assignment]
        if method == METHOD_LP:
            return Computation(shares=shares, method=method)
        duplicated = bmatching.leximin_via_duplication(instance, leximax=leximax)
        return _cross_check(shares, duplicated, method)

    def leximin(self, instance: bmatching.BMatchingInstance, method: str) -> Computation:
        return self._run(instance, method, leximax=False)

    def leximax(self, instance: bmatching.BMatchingInstance, method: str) -> Computation:
        return self._run(instance, method, leximax=True)

    def owen_check(self, instance: bmatching.BMatchingInstance, shares: Imputation) -> OwenVerdict:
        return bmatching.check_owen_membership(instance, shares)

    def owen_problem(self, instance: bmatching.BMatchingInstance) -> LeximinProblem:
        return bmatching.owen_problem(instance)

    def describe_certificate(
        self, instance: bmatching.BMatchingInstance, certificate: bmatching.BMatchDual
    ) -> dict[str, str]:
        return {
            f"y[{instance.agent_name(x)}]": str(certificate.values.get(x, Fraction(0)))
            for x in instance.agents
        }


def game_for(instance: GameInstance) -> Game:
    """Adapter matching the type of ``instance``."""
    if isinstance(instance, maxflow.MaxFlowInstance):
        return get_game(GameKind.MAXFLOW)
    if isinstance(instance, branching.BranchingInstance):
        return get_game(GameKind.BRANCHING)
    return get_game(GameKind.BMATCHING)
