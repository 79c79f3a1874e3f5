"""Pydantic schemas for game instance files."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    TypeAdapter,
    ValidationError,
    model_validator,
)

from owenset.core.errors import InstanceValidationError, ParseError
from owenset.services.bmatching import BMatchingInstance
from owenset.services.branching import BranchingInstance
from owenset.services.graph import DiGraph
from owenset.services.maxflow import MaxFlowInstance
from owenset.services.verify import GameInstance

logger = logging.getLogger(__name__)


def parse_rational(value: Any) -> Fraction:
    """Accept integers and "p/q" strings; floats are refused to keep values exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected an integer or a 'p/q' string, got {value!r}")
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(value)


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


class EdgeEntry(BaseModel):
    """One edge; ``value`` is its capacity, cost or weight depending on the game."""

    tail: str
    head: str
    value: Rational
    name: str | None = None

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)


class _GraphFile(BaseModel):
    vertices: list[str] = Field(..., description="Unique vertex names")
    edges: list[EdgeEntry] = Field(default_factory=list)

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_names(self) -> _GraphFile:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        known = set(self.vertices)
        for position, edge in enumerate(self.edges):
            for end in (edge.tail, edge.head):
                if end not in known:
                    raise ValueError(f"edge {position} refers to unknown vertex {end!r}")
        names = [edge.name for edge in self.edges if edge.name is not None]
        if len(set(names)) != len(names):
            raise ValueError("edge names must be unique")
        return self

    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vertices)}

    def _vertex(self, name: str, role: str) -> int:
        index = self._index()
        if name not in index:
            raise InstanceValidationError(f"{role} {name!r} is not a vertex")
        return index[name]

    def _graph(self) -> DiGraph:
        index = self._index()
        return DiGraph.from_pairs(
            len(self.vertices), ((index[e.tail], index[e.head]) for e in self.edges)
        )

    def _edge_names(self) -> tuple[str, ...]:
        if all(edge.name is None for edge in self.edges):
            return ()
        if any(edge.name is None for edge in self.edges):
            raise InstanceValidationError("name either every edge or none")
        return tuple(edge.name for edge in self.edges)  # type: ignore[misc]


class MaxFlowFile(_GraphFile):
    game: Literal["maxflow"] = "maxflow"
    source: str
    sink: str

    def to_instance(self) -> MaxFlowInstance:
        return MaxFlowInstance(
            graph=self._graph(),
            capacities={i: edge.value for i, edge in enumerate(self.edges)},
            source=self._vertex(self.source, "source"),
            sink=self._vertex(self.sink, "sink"),
            vertex_names=tuple(self.vertices),
            edge_names=self._edge_names(),
        )

    @classmethod
    def from_instance(cls, instance: MaxFlowInstance) -> MaxFlowFile:
        names = instance.vertex_names
        return cls(
            vertices=list(names),
            edges=[
                EdgeEntry(
                    tail=names[e.tail],
                    head=names[e.head],
                    value=instance.capacities[e.id],
                    name=instance.edge_names[e.id],
                )
                for e in instance.graph.edges
            ],
            source=names[instance.source],
            sink=names[instance.sink],
        )


class BranchingFile(_GraphFile):
    """Edges point towards the root; every other vertex is a paying agent."""

    game: Literal["branching"] = "branching"
    root: str

    def to_instance(self) -> BranchingInstance:
        return BranchingInstance(
            graph=self._graph(),
            costs={i: edge.value for i, edge in enumerate(self.edges)},
            root=self._vertex(self.root, "root"),
            vertex_names=tuple(self.vertices),
            edge_names=self._edge_names(),
        )

    @classmethod
    def from_instance(cls, instance: BranchingInstance) -> BranchingFile:
        names = instance.vertex_names
        return cls(
            vertices=list(names),
            edges=[
                EdgeEntry(
                    tail=names[e.tail],
                    head=names[e.head],
                    value=instance.costs[e.id],
                    name=instance.edge_names[e.id],
                )
                for e in instance.graph.edges
            ],
            root=names[instance.root],
        )


class MstFile(_GraphFile):
    """Undirected edges, lowered to a branching instance with both directions."""

    game: Literal["mst"] = "mst"
    root: str

    def to_instance(self) -> BranchingInstance:
        index = self._index()
        return BranchingInstance.from_undirected(
            len(self.vertices),
            ((index[e.tail], index[e.head], e.value) for e in self.edges),
            root=self._vertex(self.root, "root"),
            vertex_names=tuple(self.vertices),
        )

    @classmethod
    def from_instance(cls, instance: BranchingInstance) -> MstFile:
        names = instance.vertex_names
        forward = instance.graph.edges[::2]
        return cls(
            vertices=list(names),
            edges=[
                EdgeEntry(tail=names[e.tail], head=names[e.head], value=instance.costs[e.id])
                for e in forward
            ],
            root=names[instance.root],
        )


class BMatchingFile(_GraphFile):
    """Bipartite graph; the first ``left_size`` entries of ``vertices`` form the side U."""

    game: Literal["bmatching"] = "bmatching"
    left_size: int = Field(..., ge=0)
    b: dict[str, int] = Field(default_factory=dict)

    def to_instance(self) -> BMatchingInstance:
        missing = [name for name in self.vertices if name not in self.b]
        if missing:
            raise InstanceValidationError(f"Vertices without a b value: {missing}")
        unknown = sorted(set(self.b) - set(self.vertices))
        if unknown:
            raise InstanceValidationError(f"b values for unknown vertices: {unknown}")
        return BMatchingInstance(
            graph=self._graph(),
            left_size=self.left_size,
            weights={i: edge.value for i, edge in enumerate(self.edges)},
            b={i: self.b[name] for i, name in enumerate(self.vertices)},
            vertex_names=tuple(self.vertices),
            edge_names=self._edge_names(),
        )

    @classmethod
    def from_instance(cls, instance: BMatchingInstance) -> BMatchingFile:
        names = instance.vertex_names
        return cls(
            vertices=list(names),
            edges=[
                EdgeEntry(
                    tail=names[e.tail],
                    head=names[e.head],
                    value=instance.weights[e.id],
                    name=instance.edge_names[e.id],
                )
                for e in instance.graph.edges
            ],
            left_size=instance.left_size,
            b={names[x]: instance.b[x] for x in instance.agents},
        )


InstanceFile = Annotated[
    MaxFlowFile | BranchingFile | MstFile | BMatchingFile,
    Field(discriminator="game"),
]

_INSTANCE_ADAPTER: TypeAdapter[InstanceFile] = TypeAdapter(InstanceFile)


def _describe(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<document>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)


def load_instance_file(text: str, source: str = "<string>") -> InstanceFile:
    """Parse a JSON instance document.

    Raises:
        ParseError: With the line of a JSON syntax error or the failing field.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return _INSTANCE_ADAPTER.validate_python(data)
    except ValidationError as exc:
        raise ParseError(f"{source}: {_describe(exc)}") from exc


def read_instance_file(path: str | Path) -> InstanceFile:
    """Read and validate an instance file without lowering it.

    Raises:
        ParseError: If the file is missing or not a valid instance document.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        logger.error(f"Error reading instance file {path}: {exc}")
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    return load_instance_file(text, str(path))


def parse_instance(path: str | Path) -> GameInstance:
    """Read, validate and lower an instance file.

    Raises:
        ParseError: If the file is missing or not a valid instance document.
        InstanceValidationError: If the instance breaks a game invariant.
    """
    return read_instance_file(path).to_instance()


def dump_instance_file(document: InstanceFile) -> str:
    return _INSTANCE_ADAPTER.dump_json(document, indent=2).decode("utf-8")


def instance_to_file(instance: GameInstance) -> InstanceFile:
    """Serialize a domain instance; branching instances lowered from MST inputs stay MST."""
    if isinstance(instance, MaxFlowInstance):
        return MaxFlowFile.from_instance(instance)
    if isinstance(instance, BranchingInstance):
        if instance.undirected:
            return MstFile.from_instance(instance)
        return BranchingFile.from_instance(instance)
    return BMatchingFile.from_instance(instance)
