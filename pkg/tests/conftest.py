"""Shared fixtures: the worked example instances."""

import pytest

from owenset.services.fixtures import load_fixture, mst_path_fixture, path_fixture


@pytest.fixture
def fig_flow():
    """Flow network whose worth is 2 and whose cheap middle edges form the only min cut."""
    return load_fixture("fig-flow").to_instance()


@pytest.fixture
def fig_tree():
    """Branching instance with a core cost-share outside the Owen set."""
    return load_fixture("fig-tree").to_instance()


@pytest.fixture
def bmatching_example():
    """u matched to v1 (weight 1) and v2 (weight 3) with b = (2, 2, 1)."""
    return load_fixture("bmatching-example").to_instance()


@pytest.fixture
def parallel_edges():
    """Two parallel source-sink edges of capacity 1 and 2."""
    return load_fixture("parallel-edges").to_instance()


@pytest.fixture
def unit_path():
    """Factory for a source-sink path of n unit-capacity edges."""
    return lambda n: path_fixture(n).to_instance()


@pytest.fixture
def mst_path():
    """Factory for a root followed by n agents on a unit-cost path."""
    return lambda n: mst_path_fixture(n).to_instance()
