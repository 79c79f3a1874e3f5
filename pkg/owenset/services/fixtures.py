"""Built-in instances: the worked examples shipped as JSON plus parameterized paths."""

from __future__ import annotations

import logging
import re
from importlib import resources

from owenset.core.constants import FIXTURE_PREFIX
from owenset.core.errors import ParseError
from owenset.schemas.instance_file import (
    EdgeEntry,
    InstanceFile,
    MaxFlowFile,
    MstFile,
    load_instance_file,
    read_instance_file,
)
from owenset.services.verify import GameInstance

logger = logging.getLogger(__name__)

FILE_FIXTURES = ("fig-flow", "fig-tree", "bmatching-example", "parallel-edges")
_PATH_PATTERN = re.compile(r"(mst-)?path-(\d+)")


def path_fixture(n: int) -> MaxFlowFile:
    """Source-sink path of ``n`` unit-capacity edges."""
    vertices = ["s", *(f"p{i}" for i in range(1, n)), "t"]
    edges = [EdgeEntry(tail=a, head=b, value=1) for a, b in zip(vertices, vertices[1:])]
    return MaxFlowFile(vertices=vertices, edges=edges, source="s", sink="t")


def mst_path_fixture(n: int) -> MstFile:
    """Root followed by ``n`` agents on a path of unit-cost undirected edges."""
    vertices = ["r", *(f"x{i}" for i in range(1, n + 1))]
    edges = [EdgeEntry(tail=a, head=b, value=1) for a, b in zip(vertices, vertices[1:])]
    return MstFile(vertices=vertices, edges=edges, root="r")


def fixture_names() -> list[str]:
    return [*FILE_FIXTURES, "path-<n>", "mst-path-<n>"]


def load_fixture(name: str) -> InstanceFile:
    """Instance document of a built-in fixture.

    Raises:
        ParseError: If no fixture has that name.
    """
    match = _PATH_PATTERN.fullmatch(name)
    if match:
        n = int(match.group(2))
        if n < 1:
            raise ParseError(f"Fixture {name!r} needs at least one agent")
        return mst_path_fixture(n) if match.group(1) else path_fixture(n)
    if name not in FILE_FIXTURES:
        raise ParseError(f"Unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    text = resources.files("owenset").joinpath("fixtures", f"{name}.json").read_text("utf-8")
    return load_instance_file(text, f"{FIXTURE_PREFIX}{name}")


def resolve_instance(reference: str) -> tuple[InstanceFile, GameInstance]:
    """Document and lowered instance for a ``fixture:<name>`` reference or a file path."""
    if reference.startswith(FIXTURE_PREFIX):
        document = load_fixture(reference.removeprefix(FIXTURE_PREFIX))
        logger.debug(f"Loaded fixture {reference}")
    else:
        document = read_instance_file(reference)
    return document, document.to_instance()
