"""Tests for the bipartite b-matching game."""

from fractions import Fraction
from unittest.mock import patch

import pytest

from owenset.core.errors import (
    BoundExceeded,
    InstanceValidationError,
    NotOptimalDual,
    SolverError,
)
from owenset.services.bmatching import (
    BMatchDual,
    BMatchingInstance,
    balanced_components,
    check_owen_membership,
    coalition_value,
    dual_ranges,
    duplicate_reduction,
    duplication_run,
    has_unique_dual,
    leximax_owen,
    leximin_owen,
    leximin_via_duplication,
    max_weight_bmatching,
    owen_from_dual,
)
from owenset.services.common import GameKind
from owenset.services.graph import DiGraph
from owenset.services.lp import LpSolution, Status
from owenset.services.verify import CoreOk, GeneratorParams, random_instance, verify_core


def test_example_worth_and_matching(bmatching_example):
    result = max_weight_bmatching(bmatching_example)

    assert result.value == 4
    assert result.multiplicity == {0: 1, 1: 1}
    assert result.dual.is_optimal(bmatching_example)


def test_example_has_a_unique_dual(bmatching_example):
    """u pays 1 per unit of capacity, v1 nothing and v2 the remaining 2."""
    assert has_unique_dual(bmatching_example)
    assert dual_ranges(bmatching_example) == {
        0: (Fraction(1), Fraction(1)),
        1: (Fraction(0), Fraction(0)),
        2: (Fraction(2), Fraction(2)),
    }


def test_example_leximin_and_leximax_coincide(bmatching_example):
    expected = {0: Fraction(2), 1: Fraction(0), 2: Fraction(2)}

    assert leximin_owen(bmatching_example).shares == expected
    assert leximax_owen(bmatching_example).shares == expected
    assert leximin_via_duplication(bmatching_example) == expected


def test_core_point_outside_the_owen_set(bmatching_example):
    imputation = {0: Fraction(4), 1: Fraction(0), 2: Fraction(0)}

    assert isinstance(verify_core(bmatching_example, imputation), CoreOk)
    verdict = check_owen_membership(bmatching_example, imputation)
    assert not verdict
    assert verdict.reason.startswith("implied dual is infeasible")


def test_owen_from_dual(bmatching_example):
    dual = BMatchDual(values={0: Fraction(1), 1: Fraction(0), 2: Fraction(2)})

    assert owen_from_dual(bmatching_example, dual) == {0: 2, 1: 0, 2: 2}
    with pytest.raises(NotOptimalDual):
        owen_from_dual(bmatching_example, BMatchDual(values={0: Fraction(3)}))
    with pytest.raises(NotOptimalDual):
        owen_from_dual(bmatching_example, BMatchDual(values={0: Fraction(1)}))


def test_coalition_values(bmatching_example):
    assert coalition_value(bmatching_example, [0, 2]) == 3
    assert coalition_value(bmatching_example, [0, 1]) == 2
    assert coalition_value(bmatching_example, [1, 2]) == 0


def test_instance_validation():
    with pytest.raises(InstanceValidationError):
        BMatchingInstance.from_edges(["u"], ["v"], [(0, 0, 0)], [1, 1])
    with pytest.raises(InstanceValidationError):
        BMatchingInstance.from_edges(["u"], ["v"], [(0, 0, 1)], [0, 1])
    with pytest.raises(InstanceValidationError):
        BMatchingInstance(
            DiGraph.from_pairs(2, [(1, 0)]), 1, {0: Fraction(1)}, {0: 1, 1: 1}
        )


def test_duplicate_reduction(bmatching_example):
    reduction = duplicate_reduction(bmatching_example)

    assert reduction.expanded.graph.n == 5
    assert reduction.copies == {0: (0, 1), 1: (2, 3), 2: (4,)}
    assert reduction.expanded.graph.m == 2 * 2 + 2 * 1
    assert reduction.origin(3) == 1


def test_duplication_bound(bmatching_example):
    with pytest.raises(BoundExceeded):
        duplicate_reduction(bmatching_example, bound=3)


def test_copies_share_their_dual(bmatching_example):
    run = duplication_run(bmatching_example)

    assert run.copy_duals == {0: 1, 1: 1, 2: 0, 3: 0, 4: 2}
    assert run.imputation == leximin_owen(bmatching_example).shares


def test_balanced_components(bmatching_example):
    components = balanced_components(bmatching_example)

    assert sum(len(c.members) for c in components) == 3
    assert not any(c.fundamental for c in components)


@pytest.mark.parametrize("seed", range(8))
def test_duplication_matches_the_dual_lp(seed):
    instance = random_instance(GeneratorParams(kind=GameKind.BMATCHING, n=5, m=5, seed=seed))

    lp_shares = leximin_owen(instance).shares

    assert leximin_via_duplication(instance) == lp_shares
    assert leximin_via_duplication(instance, leximax=True) == leximax_owen(instance).shares
    assert check_owen_membership(instance, lp_shares)
    assert isinstance(verify_core(instance, lp_shares), CoreOk)


def test_single_edge_splits_its_weight():
    instance = BMatchingInstance.from_edges(["u"], ["v"], [(0, 0, 7)], [1, 1])
    expected = {0: Fraction(7, 2), 1: Fraction(7, 2)}

    assert instance.worth == 7
    assert leximin_owen(instance).shares == expected
    assert leximax_owen(instance).shares == expected
    assert leximin_via_duplication(instance) == expected


@pytest.mark.parametrize("seed", range(6))
def test_basic_optimum_is_integral(seed):
    instance = random_instance(
        GeneratorParams(kind=GameKind.BMATCHING, n=6, m=8, b_high=3, seed=seed)
    )

    result = max_weight_bmatching(instance)

    assert all(isinstance(x, int) and 0 <= x for x in result.multiplicity.values())
    assert result.dual.is_optimal(instance)


def test_fractional_optimum_is_reported(bmatching_example):
    fractional = LpSolution(
        status=Status.OPTIMAL,
        values=(Fraction(1, 2), Fraction(1)),
        duals=(Fraction(1), Fraction(0), Fraction(2)),
        objective=Fraction(7, 2),
    )

    with patch("owenset.services.bmatching.programs.solve", return_value=fractional):
        with pytest.raises(SolverError, match="Fractional multiplicity 1/2"):
            max_weight_bmatching(bmatching_example)
