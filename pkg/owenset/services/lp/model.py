"""Exact-rational linear program model."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from owenset.core.errors import DimensionMismatch, MalformedModel

logger = logging.getLogger(__name__)

# Variable index -> coefficient
LinearExpression = Mapping[int, Fraction]


class Relation(str, Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Variable:
    name: str
    free: bool = False


@dataclass(frozen=True)
class Constraint:
    coefficients: Mapping[int, Fraction]
    relation: Relation
    rhs: Fraction
    name: str = ""

    def lhs(self, point: Sequence[Fraction]) -> Fraction:
        return sum((coef * point[j] for j, coef in self.coefficients.items()), Fraction(0))

    def slack(self, point: Sequence[Fraction]) -> Fraction:
        """Nonnegative exactly when the point satisfies the constraint."""
        lhs = self.lhs(point)
        if self.relation is Relation.LE:
            return self.rhs - lhs
        if self.relation is Relation.GE:
            return lhs - self.rhs
        return -abs(lhs - self.rhs)


def constraint(
    coefficients: Mapping[int, Fraction | int],
    relation: Relation,
    rhs: Fraction | int,
    name: str = "",
) -> Constraint:
    """Build a Constraint, dropping zero coefficients and normalizing to Fraction."""
    return Constraint(
        coefficients={j: Fraction(c) for j, c in coefficients.items() if c != 0},
        relation=relation,
        rhs=Fraction(rhs),
        name=name,
    )


@dataclass
class LinearProgram:
    """Mutable LP builder: nonnegative or free variables, linear rows, one objective."""

    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, Fraction] = field(default_factory=dict)
    sense: Sense = Sense.MAX

    def add_variable(self, name: str = "", free: bool = False) -> int:
        self.variables.append(Variable(name or f"x{len(self.variables)}", free))
        return len(self.variables) - 1

    def add_constraint(
        self,
        coefficients: Mapping[int, Fraction | int] | Constraint,
        relation: Relation | None = None,
        rhs: Fraction | int = 0,
        name: str = "",
    ) -> int:
        if isinstance(coefficients, Constraint):
            row = coefficients
        else:
            if relation is None:
                raise MalformedModel("A relation is required when adding raw coefficients")
            row = constraint(coefficients, relation, rhs, name)
        self.constraints.append(row)
        return len(self.constraints) - 1

    def set_objective(self, coefficients: Mapping[int, Fraction | int], sense: Sense) -> None:
        self.objective = {j: Fraction(c) for j, c in coefficients.items() if c != 0}
        self.sense = sense

    def copy(self) -> LinearProgram:
        return LinearProgram(
            variables=list(self.variables),
            constraints=list(self.constraints),
            objective=dict(self.objective),
            sense=self.sense,
        )

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def objective_value(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * point[j] for j, c in self.objective.items()), Fraction(0))

    def validate(self) -> None:
        """Raise MalformedModel when any coefficient refers to an unknown variable."""
        n = self.num_variables
        for j in self.objective:
            if not 0 <= j < n:
                raise MalformedModel(f"Objective refers to variable {j}; model has {n}")
        for index, row in enumerate(self.constraints):
            for j in row.coefficients:
                if not 0 <= j < n:
                    raise MalformedModel(
                        f"Constraint {index} ({row.name}) refers to variable {j}; model has {n}"
                    )


@dataclass(frozen=True)
class Satisfied:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Violated:
    """First failing row (``index``) or variable bound (``variable``) with its slack."""

    index: int | None
    slack: Fraction
    variable: int | None = None

    def __bool__(self) -> bool:
        return False


def check_feasibility(lp: LinearProgram, point: Sequence[Fraction]) -> Satisfied | Violated:
    """Exact constraint-by-constraint check of ``point`` against ``lp``.

    Rows are checked in order, then the nonnegativity of non-free variables.

    Raises:
        DimensionMismatch: If ``point`` does not have one value per variable.
    """
    if len(point) != lp.num_variables:
        raise DimensionMismatch(
            f"Point has {len(point)} coordinates; model has {lp.num_variables} variables"
        )
    for index, row in enumerate(lp.constraints):
        slack = row.slack(point)
        if slack < 0:
            return Violated(index=index, slack=slack)
    for j, variable in enumerate(lp.variables):
        if not variable.free and point[j] < 0:
            return Violated(index=None, slack=Fraction(point[j]), variable=j)
    return Satisfied()


@dataclass(frozen=True)
class LpSolution:
    """Result of a solve.

    ``duals`` has one entry per constraint of the solved model (base rows first, then
    generated cuts). Sign convention: for MAX, ``<=`` rows have duals >= 0 and ``>=``
    rows duals <= 0; for MIN the signs are mirrored. Equality rows are free.
    """

    status: Status
    values: tuple[Fraction, ...] = ()
    duals: tuple[Fraction, ...] = ()
    objective: Fraction | None = None
    cuts: tuple[Constraint, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL
