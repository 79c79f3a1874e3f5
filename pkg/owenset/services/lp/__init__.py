from owenset.services.lp.model import (
    Constraint,
    LinearExpression,
    LinearProgram,
    LpSolution,
    Relation,
    Satisfied,
    Sense,
    Status,
    Variable,
    Violated,
    check_feasibility,
    constraint,
)
from owenset.services.lp.separation import (
    SeparationOracle,
    feasible_oracle,
    solve_with_separation,
)
from owenset.services.lp.simplex import solve

__all__ = [
    "Constraint",
    "LinearExpression",
    "LinearProgram",
    "LpSolution",
    "Relation",
    "Satisfied",
    "SeparationOracle",
    "Sense",
    "Status",
    "Variable",
    "Violated",
    "check_feasibility",
    "constraint",
    "feasible_oracle",
    "solve",
    "solve_with_separation",
]
