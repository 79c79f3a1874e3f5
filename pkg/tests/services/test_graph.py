"""Tests for the graph kernel: flows, cuts, condensation and longest paths."""

from fractions import Fraction

import pytest

from owenset.core.errors import CycleDetected, InstanceValidationError, InvalidVertex
from owenset.services.graph import (
    Absent,
    DiGraph,
    EdgeClass,
    Orientation,
    classify_edges,
    condense_scc,
    cut_capacity,
    default_edge_names,
    longest_path_dag,
    max_flow,
    min_vertex_cut_side,
    reachable_from,
    residual_graph,
)
from owenset.services.common import GameKind
from owenset.services.verify import GeneratorParams, random_instance


@pytest.fixture
def diamond():
    graph = DiGraph.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)])
    capacities = {0: Fraction(2), 1: Fraction(1), 2: Fraction(1), 3: Fraction(2), 4: Fraction(1)}
    return graph, capacities


def test_adjacency_lists():
    """Out- and in-edges are listed by edge id."""
    graph = DiGraph.from_pairs(3, [(0, 1), (0, 2), (2, 1)])

    assert graph.m == 3
    assert graph.out_edges(0) == (0, 1)
    assert graph.in_edges(1) == (0, 2)
    assert graph.out_edges(1) == ()


def test_endpoint_out_of_range():
    with pytest.raises(InvalidVertex):
        DiGraph.from_pairs(2, [(0, 2)])


def test_negative_vertex_count():
    with pytest.raises(InstanceValidationError):
        DiGraph(-1, ())


def test_parallel_edge_names():
    """Parallel edges get their id appended so names stay unique."""
    graph = DiGraph.from_pairs(2, [(0, 1), (0, 1), (1, 0)])

    assert default_edge_names(graph, ("s", "t")) == ("s->t#0", "s->t#1", "t->s")


def test_max_flow_equals_min_cut(diamond):
    """The residual source side of a maximum flow is a minimum cut."""
    graph, capacities = diamond

    flow = max_flow(graph, capacities, 0, 3)
    side = min_vertex_cut_side(graph, capacities, flow, 0)

    assert flow.value == 3
    assert 3 not in side
    assert cut_capacity(graph, capacities, side) == flow.value


def test_max_flow_keeps_fractions():
    graph = DiGraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
    capacities = {0: Fraction(1, 3), 1: Fraction(1, 2), 2: Fraction(1, 6)}

    flow = max_flow(graph, capacities, 0, 2)

    assert flow.value == Fraction(1, 2)
    assert flow.flow[0] == Fraction(1, 3)


def test_max_flow_rejects_equal_terminals(diamond):
    graph, capacities = diamond
    with pytest.raises(InvalidVertex):
        max_flow(graph, capacities, 1, 1)


def test_max_flow_without_path():
    graph = DiGraph.from_pairs(3, [(1, 0), (1, 2)])
    flow = max_flow(graph, {0: Fraction(1), 1: Fraction(1)}, 0, 2)
    assert flow.value == 0


def test_residual_graph_provenance():
    """A saturated edge only appears reversed; a partly used one appears both ways."""
    graph = DiGraph.from_pairs(3, [(0, 1), (1, 2)])
    capacities = {0: Fraction(2), 1: Fraction(1)}
    flow = max_flow(graph, capacities, 0, 2)

    residual = residual_graph(graph, capacities, flow)

    assert sorted(residual.provenance.values(), key=lambda p: (p[0], p[1].value)) == [
        (0, Orientation.FORWARD),
        (0, Orientation.REVERSE),
        (1, Orientation.REVERSE),
    ]
    reverse_of_edge_1 = next(
        i for i, origin in residual.provenance.items() if origin == (1, Orientation.REVERSE)
    )
    assert residual.capacities[reverse_of_edge_1] == 1
    assert residual.graph.edges[reverse_of_edge_1].tail == 2


def test_classify_edges(fig_flow):
    """Only the two cheap middle edges are saturated by every maximum flow."""
    classes = classify_edges(fig_flow.graph, fig_flow.capacities, fig_flow.source, fig_flow.sink)

    essential = {e for e, kind in classes.items() if kind is EdgeClass.ESSENTIAL}
    assert essential == {1, 2}


def test_condense_scc():
    graph = DiGraph.from_pairs(4, [(0, 1), (1, 0), (1, 2), (2, 3), (1, 2)])

    condensed = condense_scc(graph)

    assert condensed.size == 3
    assert condensed.members[0] == frozenset({0, 1})
    assert condensed.component_of == (0, 0, 1, 2)
    # both parallel edges 1->2 survive; the 2-cycle disappears
    assert condensed.provenance == (2, 3, 4)


def test_longest_path_prefers_longer_route():
    dag = DiGraph.from_pairs(4, [(0, 1), (0, 2), (1, 2), (3, 2)])
    lengths = {0: Fraction(1), 1: Fraction(5), 2: Fraction(1), 3: Fraction(7)}

    paths = longest_path_dag(dag, lengths, 0)

    assert paths.distance[2] == 5
    assert paths.path_to(dag, 2) == [1]
    assert paths.distance[3] is Absent.UNREACHABLE
    assert not paths.reaches(3)


def test_longest_path_stops_at_impassable_vertices():
    dag = DiGraph.from_pairs(3, [(0, 1), (1, 2)])
    lengths = {0: Fraction(1), 1: Fraction(1)}

    paths = longest_path_dag(dag, lengths, 0, passable=lambda v: v != 1)

    assert paths.distance[1] == 1
    assert paths.distance[2] is Absent.UNREACHABLE


def test_topological_order_rejects_cycles():
    graph = DiGraph.from_pairs(2, [(0, 1), (1, 0)])
    with pytest.raises(CycleDetected):
        graph.topological_order


def test_reachable_from_respects_usable_edges():
    graph = DiGraph.from_pairs(4, [(0, 1), (1, 2), (0, 3)])

    assert reachable_from(graph, 0, lambda e: e != 2) == {0, 1, 2}


def test_parallel_edges_are_both_essential(parallel_edges):
    classes = classify_edges(
        parallel_edges.graph, parallel_edges.capacities, parallel_edges.source, parallel_edges.sink
    )

    assert classes == {0: EdgeClass.ESSENTIAL, 1: EdgeClass.ESSENTIAL}


@pytest.mark.parametrize("seed", range(10))
def test_essential_edges_are_exactly_the_bottlenecks(seed):
    """Shaving half a unit off an edge lowers the worth iff the edge is essential.

    Integer capacities admit an integral maximum flow leaving every inessential edge at
    least one unit of slack, so half a unit never touches the worth there.
    """
    instance = random_instance(GeneratorParams(kind=GameKind.MAXFLOW, n=6, m=10, seed=seed))
    graph, s, t = instance.graph, instance.source, instance.sink
    classes = classify_edges(graph, instance.capacities, s, t)

    for edge in graph.edges:
        shaved = dict(instance.capacities)
        shaved[edge.id] -= Fraction(1, 2)
        dropped = max_flow(graph, shaved, s, t).value < instance.worth
        assert dropped == (classes[edge.id] is EdgeClass.ESSENTIAL)


@pytest.mark.parametrize("seed", range(10))
def test_random_max_flow_equals_min_cut(seed):
    instance = random_instance(GeneratorParams(kind=GameKind.MAXFLOW, n=7, m=12, seed=seed))
    graph, capacities = instance.graph, instance.capacities

    flow = max_flow(graph, capacities, instance.source, instance.sink)
    side = min_vertex_cut_side(graph, capacities, flow, instance.source)

    assert instance.sink not in side
    assert cut_capacity(graph, capacities, side) == flow.value


def test_longest_path_adds_fractional_lengths():
    dag = DiGraph.from_pairs(3, [(0, 1), (1, 2)])

    paths = longest_path_dag(dag, {0: Fraction(1, 2), 1: Fraction(1, 3)}, 0)

    assert paths.distance[2] == Fraction(5, 6)
