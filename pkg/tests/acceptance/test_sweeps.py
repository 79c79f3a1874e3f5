"""Full-size cross-method, core-soundness and scale runs.

Deselected by default; run with ``pytest -m acceptance``.
"""

import time
from fractions import Fraction

import pytest

from owenset.scripts.cli import main
from owenset.services import bmatching, branching, maxflow
from owenset.services.common import GameKind
from owenset.services.games import game_for
from owenset.services.leximin import Dominated, verify_leximin
from owenset.services.verify import CoreOk, GeneratorParams, random_instance, verify_core

pytestmark = pytest.mark.acceptance

KINDS = (GameKind.MAXFLOW, GameKind.BRANCHING, GameKind.MST, GameKind.BMATCHING)


def sweep_params(kind, seed):
    """Instances small enough for exhaustive core checks (at most 10 agents)."""
    if kind is GameKind.MAXFLOW:
        return GeneratorParams(kind=kind, n=4 + seed % 4, m=6 + seed % 5, seed=seed)
    if kind is GameKind.BRANCHING:
        n = 4 + seed % 4
        return GeneratorParams(kind=kind, n=n, m=n + 2 + seed % 4, low=seed % 2, seed=seed)
    if kind is GameKind.MST:
        n = 4 + seed % 3
        return GeneratorParams(kind=kind, n=n, m=n + seed % 3, low=seed % 2, seed=seed)
    return GeneratorParams(kind=kind, n=4 + seed % 5, m=3 + seed % 6, b_high=2, seed=seed)


def owen_imputations(instance):
    """Leximin, leximax and one imputation read off an arbitrary optimal dual."""
    if isinstance(instance, maxflow.MaxFlowInstance):
        return {
            "leximin": maxflow.leximin_owen(instance)[0],
            "leximax": maxflow.leximax_owen(instance).shares,
            "dual": maxflow.owen_from_dual(instance, maxflow.optimal_dual(instance)),
        }
    if isinstance(instance, branching.BranchingInstance):
        return {
            "leximin": branching.leximin_owen(instance).shares,
            "leximax": branching.leximax_owen(instance).shares,
            "dual": branching.laminar_owen_share(instance),
        }
    return {
        "leximin": bmatching.leximin_owen(instance).shares,
        "leximax": bmatching.leximax_owen(instance).shares,
        "dual": bmatching.owen_from_dual(
            instance, bmatching.max_weight_bmatching(instance).dual
        ),
    }


@pytest.mark.parametrize("seed", range(200))
def test_combinatorial_leximin_matches_lp_series(seed):
    params = GeneratorParams(
        kind=GameKind.MAXFLOW, n=2 + seed % 7, m=4 + seed % 9, high=5, seed=seed
    )
    instance = random_instance(params)

    shares, dual = maxflow.leximin_owen(instance)

    assert shares == maxflow.leximin_owen_lp(instance).shares
    assert dual.is_optimal(instance)


@pytest.mark.parametrize("seed", range(100))
def test_duplication_matches_direct_lp(seed):
    params = GeneratorParams(
        kind=GameKind.BMATCHING, n=4 + seed % 3, m=3 + seed % 6, b_high=2, seed=seed
    )
    instance = random_instance(params)
    assert sum(instance.b.values()) <= 12

    assert bmatching.leximin_via_duplication(instance) == bmatching.leximin_owen(instance).shares
    assert (
        bmatching.leximin_via_duplication(instance, leximax=True)
        == bmatching.leximax_owen(instance).shares
    )


@pytest.mark.parametrize("seed", range(50))
def test_cut_generation_matches_enumeration(seed):
    n = 3 + seed % 4
    params = GeneratorParams(kind=GameKind.BRANCHING, n=n, m=n + seed % 5, low=seed % 2, seed=seed)
    instance = random_instance(params)

    for leximax in (False, True):
        generated = branching.solve_branching_dual(instance, leximax=leximax)
        enumerated = branching.enumerated_branching_dual(instance, leximax=leximax)
        assert generated.alpha == enumerated.alpha


@pytest.mark.parametrize("seed", range(500))
def test_owen_imputations_lie_in_the_core(seed):
    instance = random_instance(sweep_params(KINDS[seed % len(KINDS)], seed))
    assert len(instance.agents) <= 14
    game = game_for(instance)

    for label, shares in owen_imputations(instance).items():
        assert sum(shares.values()) == instance.worth, label
        assert game.owen_check(instance, shares), label
        verdict = verify_core(instance, shares)
        assert isinstance(verdict, CoreOk), f"{label}: {verdict}"


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", range(3))
def test_leximin_survives_a_thousand_samples(kind, seed):
    instance = random_instance(sweep_params(kind, seed))
    problem = game_for(instance).owen_problem(instance)
    assert problem is not None
    imputations = owen_imputations(instance)

    leximin_verdict = verify_leximin(problem, imputations["leximin"], 1000, seed)
    leximax_verdict = verify_leximin(problem, imputations["leximax"], 1000, seed, leximax=True)

    assert not isinstance(leximin_verdict, Dominated)
    assert not isinstance(leximax_verdict, Dominated)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", range(5))
def test_repeated_computations_are_identical(kind, seed):
    first = owen_imputations(random_instance(sweep_params(kind, seed)))
    second = owen_imputations(random_instance(sweep_params(kind, seed)))

    assert first == second
    assert [list(s.items()) for s in first.values()] == [
        list(s.items()) for s in second.values()
    ]


@pytest.mark.parametrize(
    "fixture",
    ["fig-flow", "fig-tree", "bmatching-example", "parallel-edges", "path-6", "mst-path-5"],
)
@pytest.mark.parametrize("command", ["leximin", "certify"])
def test_machine_output_repeats_byte_for_byte(capsys, fixture, command):
    argv = [command, f"fixture:{fixture}", "--format", "machine", "--seed", "3"]

    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out

    assert first == second


def test_large_flow_leximin_is_fast():
    instance = random_instance(GeneratorParams(kind=GameKind.MAXFLOW, n=200, m=2000, seed=1))

    started = time.perf_counter()
    shares, dual = maxflow.leximin_owen(instance)
    elapsed = time.perf_counter() - started

    assert elapsed <= 10
    assert sum(shares.values()) == instance.worth
    assert dual.is_optimal(instance)


def test_twenty_agent_branching_leximin_is_fast():
    instance = random_instance(GeneratorParams(kind=GameKind.BRANCHING, n=21, m=40, seed=1))
    assert len(instance.agents) == 20

    started = time.perf_counter()
    result = branching.leximin_owen(instance)
    elapsed = time.perf_counter() - started

    assert elapsed <= 60
    assert sum(result.shares.values(), Fraction(0)) == instance.worth
