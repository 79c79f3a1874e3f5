"""Tests for the max-flow game."""

from fractions import Fraction

import pytest

from owenset.core.errors import (
    InstanceValidationError,
    InvalidVertex,
    NotAnImputation,
    NotOptimalDual,
)
from owenset.services.common import GameKind
from owenset.services.maxflow import (
    FlowDual,
    MaxFlowInstance,
    build_pq_structure,
    check_owen_membership,
    leximax_owen,
    leximin_owen,
    leximin_owen_lp,
    leximin_owen_run,
    optimal_dual,
    owen_from_dual,
)
from owenset.services.verify import CoreOk, GeneratorParams, random_instance, verify_core


def test_instance_validation():
    with pytest.raises(InstanceValidationError):
        MaxFlowInstance.from_edges(2, [(0, 1, 0)], 0, 1)
    with pytest.raises(InvalidVertex):
        MaxFlowInstance.from_edges(2, [(0, 1, 1)], 1, 1)


def test_fig_flow_worth_and_essential_edges(fig_flow):
    assert fig_flow.graph.m == 7
    assert fig_flow.worth == 2
    assert fig_flow.essential_edges() == (1, 2)


def test_core_point_outside_the_owen_set(fig_flow):
    """Paying the whole worth to the unsaturated first edge is core but not Owen."""
    imputation = {0: Fraction(2)}

    assert isinstance(verify_core(fig_flow, imputation), CoreOk)
    verdict = check_owen_membership(fig_flow, imputation)
    assert not verdict
    assert verdict.reason == "inessential edge paid: s->v1"


def test_fig_flow_leximin_pays_the_min_cut(fig_flow):
    shares, dual = leximin_owen(fig_flow)

    assert shares == {0: 0, 1: 1, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0}
    assert dual.is_optimal(fig_flow)
    assert check_owen_membership(fig_flow, shares)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_unit_path_shares_equally(unit_path, n):
    """Every edge of a unit path is essential, so all get 1/n."""
    instance = unit_path(n)
    expected = {e: Fraction(1, n) for e in range(n)}

    assert leximin_owen(instance)[0] == expected
    assert leximin_owen_lp(instance).shares == expected
    assert leximax_owen(instance).shares == expected


def test_parallel_edges_are_paid_their_capacity(parallel_edges):
    """Both edges are essential and every optimal dual gives each length 1."""
    expected = {0: Fraction(1), 1: Fraction(2)}

    assert parallel_edges.essential_edges() == (0, 1)
    assert leximin_owen(parallel_edges)[0] == expected
    assert leximin_owen_lp(parallel_edges).shares == expected
    assert leximax_owen(parallel_edges).shares == expected


def test_series_pays_only_the_bottleneck():
    series = MaxFlowInstance.from_edges(3, [(0, 1, 1), (1, 2, 2)], 0, 2)
    expected = {0: Fraction(1), 1: Fraction(0)}

    assert series.essential_edges() == (0,)
    assert leximin_owen(series)[0] == expected
    assert leximax_owen(series).shares == expected


def test_fig_flow_leximax_matches_leximin(fig_flow):
    """The min cut is unique, so the Owen set is a single point."""
    assert leximax_owen(fig_flow).shares == leximin_owen(fig_flow)[0]


def test_three_edge_path_with_a_parallel_pair():
    """Cut weight moves between the first edge and the parallel pair until all earn 2/3."""
    instance = MaxFlowInstance.from_edges(3, [(0, 1, 2), (1, 2, 1), (1, 2, 1)], 0, 2)
    expected = {0: Fraction(2, 3), 1: Fraction(2, 3), 2: Fraction(2, 3)}

    assert leximin_owen(instance)[0] == expected
    assert leximin_owen_lp(instance).shares == expected
    assert leximax_owen(instance).shares == expected


def test_min_cut_dual_is_optimal(fig_flow, parallel_edges):
    for instance in (fig_flow, parallel_edges):
        dual = optimal_dual(instance)
        imputation = owen_from_dual(instance, dual)

        assert dual.is_optimal(instance)
        assert sum(imputation.values()) == instance.worth
        assert check_owen_membership(instance, imputation)


def test_owen_from_dual_rejects_suboptimal_duals(parallel_edges):
    """Overlong cut lengths are feasible but cost more than the worth."""
    dual = FlowDual(
        potentials={0: Fraction(1), 1: Fraction(0)},
        lengths={0: Fraction(2), 1: Fraction(1)},
    )
    with pytest.raises(NotOptimalDual):
        owen_from_dual(parallel_edges, dual)


def test_membership_certificate_reproduces_the_shares(parallel_edges):
    shares = {0: Fraction(1), 1: Fraction(2)}

    verdict = check_owen_membership(parallel_edges, shares)

    assert verdict
    assert owen_from_dual(parallel_edges, verdict.certificate) == shares


def test_membership_rejects_swapped_parallel_profits(parallel_edges):
    """Both parallel edges always carry the same cut length, so pay follows capacity."""
    verdict = check_owen_membership(parallel_edges, {0: Fraction(2), 1: Fraction(1)})

    assert not verdict


def test_membership_requires_an_imputation(fig_flow):
    with pytest.raises(NotAnImputation):
        check_owen_membership(fig_flow, {1: Fraction(1)})


def test_combinatorial_run_trace(fig_flow):
    run = leximin_owen_run(fig_flow)

    assert list(run.alphas) == sorted(run.alphas)
    assert run.structure is not None
    assert run.component_potentials[run.structure.source] == 1
    assert run.component_potentials[run.structure.sink] == 0


def test_pq_structure_lengths(fig_flow):
    structure = build_pq_structure(fig_flow)

    assert {structure.original_edge(d) for d in structure.full} == {1, 2}
    assert all(structure.lengths[d] == 1 for d in structure.full)
    assert all(structure.lengths[d] == 0 for d in structure.zero)


def test_zero_worth_game():
    instance = MaxFlowInstance.from_edges(3, [(0, 1, 1), (2, 1, 1)], 0, 2)

    shares, dual = leximin_owen(instance)

    assert instance.worth == 0
    assert shares == {0: 0, 1: 0}
    assert dual.is_optimal(instance)


@pytest.mark.parametrize("seed", range(12))
def test_combinatorial_matches_lp_series(seed):
    """The combinatorial leximin and the generic LP fixing rounds agree exactly."""
    instance = random_instance(GeneratorParams(kind=GameKind.MAXFLOW, n=6, m=9, seed=seed))

    shares, dual = leximin_owen(instance)

    assert shares == leximin_owen_lp(instance).shares
    assert dual.is_optimal(instance)
    assert check_owen_membership(instance, shares)


@pytest.mark.parametrize("seed", range(8))
def test_potentials_fall_along_flow_carrying_edges(seed):
    """Every edge carrying flow drops the leximin potential by exactly its length."""
    instance = random_instance(GeneratorParams(kind=GameKind.MAXFLOW, n=7, m=11, seed=seed))

    _, dual = leximin_owen(instance)

    assert dual.potentials[instance.source] - dual.potentials[instance.sink] == 1
    for edge in instance.graph.edges:
        if instance.flow.flow[edge.id] > 0:
            drop = dual.potentials[edge.tail] - dual.potentials[edge.head]
            assert drop == dual.lengths[edge.id] >= 0
