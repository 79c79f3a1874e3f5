"""Seeded random instances for the cross-method and core-soundness sweeps."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from owenset.core.errors import InstanceValidationError
from owenset.services.bmatching import BMatchingInstance
from owenset.services.branching import BranchingInstance
from owenset.services.common import GameKind
from owenset.services.maxflow import MaxFlowInstance
from owenset.services.verify.core import GameInstance

logger = logging.getLogger(__name__)

_ZERO_VALUES_ALLOWED = frozenset({GameKind.BRANCHING, GameKind.MST})


@dataclass(frozen=True)
class GeneratorParams:
    """Size and value bounds of a random instance.

    ``n`` counts vertices and ``m`` edges; values are drawn uniformly from
    ``low..high``. Branching and MST costs may start at 0; capacities and weights
    start at 1. ``b_high`` bounds the vertex capacities of b-matching instances.
    """

    kind: GameKind
    n: int
    m: int
    low: int = 1
    high: int = 5
    b_high: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InstanceValidationError("Random instances need at least two vertices")
        if self.m < 1:
            raise InstanceValidationError("Random instances need at least one edge")
        if not 0 <= self.low <= self.high:
            raise InstanceValidationError(f"Bad value range {self.low}..{self.high}")
        if self.low == 0 and GameKind(self.kind) not in _ZERO_VALUES_ALLOWED:
            raise InstanceValidationError(
                f"{GameKind(self.kind).value} values must be positive; got low=0"
            )
        if self.b_high < 1:
            raise InstanceValidationError("b_high must be at least 1")


def _random_flow(params: GeneratorParams, rng: random.Random) -> MaxFlowInstance:
    source, sink = 0, params.n - 1
    inner = list(range(1, params.n - 1))
    rng.shuffle(inner)
    hops = rng.randint(0, min(len(inner), params.m - 1))
    path = [source, *inner[:hops], sink]
    edges = [(a, b, rng.randint(params.low, params.high)) for a, b in zip(path, path[1:])]
    while len(edges) < params.m:
        tail, head = rng.sample(range(params.n), 2)
        edges.append((tail, head, rng.randint(params.low, params.high)))
    return MaxFlowInstance.from_edges(params.n, edges, source, sink)


def _random_tree_edges(params: GeneratorParams, rng: random.Random) -> list[tuple[int, int]]:
    # every vertex v > 0 gets one edge towards a smaller vertex, so all reach vertex 0
    pairs = [(v, rng.randrange(v)) for v in range(1, params.n)]
    while len(pairs) < params.m:
        tail, head = rng.sample(range(params.n), 2)
        pairs.append((tail, head))
    return pairs


def _random_branching(params: GeneratorParams, rng: random.Random) -> BranchingInstance:
    edges = [
        (tail, head, rng.randint(params.low, params.high))
        for tail, head in _random_tree_edges(params, rng)
    ]
    return BranchingInstance.from_edges(params.n, edges, root=0)


def _random_mst(params: GeneratorParams, rng: random.Random) -> BranchingInstance:
    edges = [
        (a, b, rng.randint(params.low, params.high)) for a, b in _random_tree_edges(params, rng)
    ]
    return BranchingInstance.from_undirected(params.n, edges, root=0)


def _random_bmatching(params: GeneratorParams, rng: random.Random) -> BMatchingInstance:
    left = max(1, params.n // 2)
    right = params.n - left
    pairs = [(i, j) for i in range(left) for j in range(right)]
    rng.shuffle(pairs)
    chosen = sorted(pairs[: params.m])
    edges = [(i, j, rng.randint(params.low, params.high)) for i, j in chosen]
    b = [rng.randint(1, params.b_high) for _ in range(params.n)]
    return BMatchingInstance.from_edges(
        [f"u{i}" for i in range(left)], [f"v{j}" for j in range(right)], edges, b
    )


_GENERATORS = {
    GameKind.MAXFLOW: _random_flow,
    GameKind.BRANCHING: _random_branching,
    GameKind.MST: _random_mst,
    GameKind.BMATCHING: _random_bmatching,
}


def random_instance(params: GeneratorParams) -> GameInstance:
    """Valid instance of ``params.kind``; the same params always give the same instance.

    Flow instances contain an s-t path and every branching vertex reaches the root.
    """
    rng = random.Random(params.seed)
    instance = _GENERATORS[GameKind(params.kind)](params, rng)
    logger.debug(f"Generated {params.kind} instance with seed {params.seed}")
    return instance
