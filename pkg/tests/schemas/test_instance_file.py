"""Tests for instance documents and result reports."""

import json
from fractions import Fraction

import pytest

from owenset.core.errors import InstanceValidationError, ParseError
from owenset.schemas import (
    MaxFlowFile,
    ResultReport,
    approximate,
    dump_instance_file,
    instance_to_file,
    load_instance_file,
    parse_instance,
    parse_rational,
)
from owenset.services.branching import BranchingInstance
from owenset.services.fixtures import load_fixture


def flow_document(**overrides) -> str:
    document = {
        "game": "maxflow",
        "vertices": ["s", "t"],
        "edges": [{"tail": "s", "head": "t", "value": "1/3"}],
        "source": "s",
        "sink": "t",
    }
    document.update(overrides)
    return json.dumps(document)


def test_rationals_are_exact():
    assert parse_rational("1/3") == Fraction(1, 3)
    assert parse_rational(" 7 ") == 7
    assert parse_rational(4) == 4
    for bad in (0.5, True, "1/0", "abc"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_load_flow_document():
    document = load_instance_file(flow_document())

    assert isinstance(document, MaxFlowFile)
    instance = document.to_instance()
    assert instance.capacities == {0: Fraction(1, 3)}
    assert instance.worth == Fraction(1, 3)


def test_fixture_documents(fig_flow):
    assert load_fixture("fig-flow").game == "maxflow"
    assert fig_flow.graph.m == 7
    assert fig_flow.vertex_names[fig_flow.source] == "s"


def test_float_values_are_refused():
    edges = [{"tail": "s", "head": "t", "value": 1.5}]
    with pytest.raises(ParseError, match="edges.0.value"):
        load_instance_file(flow_document(edges=edges))


def test_unknown_game_is_refused():
    with pytest.raises(ParseError):
        load_instance_file(flow_document(game="knapsack"))


def test_edges_must_name_known_vertices():
    edges = [{"tail": "s", "head": "x", "value": 1}]
    with pytest.raises(ParseError, match="unknown vertex 'x'"):
        load_instance_file(flow_document(edges=edges))


def test_json_errors_carry_the_line():
    text = '{\n  "game": "maxflow",\n  oops\n}'
    with pytest.raises(ParseError, match="line 3"):
        load_instance_file(text, "broken.json")


def test_unknown_terminal():
    document = load_instance_file(flow_document(sink="nowhere"))
    with pytest.raises(InstanceValidationError):
        document.to_instance()


def test_partial_edge_names():
    edges = [
        {"tail": "s", "head": "t", "value": 1, "name": "first"},
        {"tail": "s", "head": "t", "value": 1},
    ]
    document = load_instance_file(flow_document(edges=edges))
    with pytest.raises(InstanceValidationError):
        document.to_instance()


def test_bmatching_needs_every_b_value():
    text = json.dumps(
        {
            "game": "bmatching",
            "vertices": ["u", "v"],
            "left_size": 1,
            "edges": [{"tail": "u", "head": "v", "value": 2}],
            "b": {"u": 1},
        }
    )
    with pytest.raises(InstanceValidationError, match="without a b value"):
        load_instance_file(text).to_instance()


def test_mst_lowering_doubles_edges():
    text = json.dumps(
        {
            "game": "mst",
            "vertices": ["r", "a", "b"],
            "edges": [
                {"tail": "a", "head": "r", "value": 2},
                {"tail": "a", "head": "b", "value": 1},
            ],
            "root": "r",
        }
    )

    instance = load_instance_file(text).to_instance()

    assert isinstance(instance, BranchingInstance)
    assert instance.undirected
    assert instance.graph.m == 4
    assert instance.worth == 3


def test_documents_survive_a_dump(fig_flow, mst_path, bmatching_example):
    for instance in (fig_flow, mst_path(3), bmatching_example):
        text = dump_instance_file(instance_to_file(instance))
        reloaded = load_instance_file(text).to_instance()

        assert reloaded.graph == instance.graph
        assert reloaded.vertex_names == instance.vertex_names
        assert reloaded.worth == instance.worth


def test_parse_instance_from_disk(tmp_path):
    path = tmp_path / "flow.json"
    path.write_text(flow_document(), encoding="utf-8")

    assert parse_instance(path).worth == Fraction(1, 3)
    with pytest.raises(ParseError):
        parse_instance(tmp_path / "missing.json")


def test_approximate_rounds_exact_values():
    assert approximate(Fraction(1, 3)) == "0.333333"
    assert approximate(Fraction(2, 3), places=2) == "0.67"


def test_machine_report_keeps_exact_strings():
    report = ResultReport(
        command="leximin",
        game="maxflow",
        method="lp",
        worth=Fraction(1),
        shares={"a": Fraction(1, 3), "b": Fraction(2, 3)},
        elapsed_seconds=1.5,
    )

    data = json.loads(report.to_machine())

    assert data["shares"] == {"a": "1/3", "b": "2/3"}
    assert data["worth"] == "1"
    assert "elapsed_seconds" not in data
    assert "agree" not in data
    assert report.passed


def test_human_report():
    report = ResultReport(command="owen-check", game="bmatching", verdicts={"owen": False})
    report.reasons.append("implied dual is infeasible")

    text = report.to_human()

    assert "owen: no" in text
    assert "reason: implied dual is infeasible" in text
    assert not report.passed
