"""Tests for the exact simplex solver and constraint generation."""

from fractions import Fraction

import pytest

from owenset.core.errors import (
    DimensionMismatch,
    MalformedModel,
    OracleContractViolation,
    RoundLimitExceeded,
)
from owenset.services.lp import (
    LinearProgram,
    Relation,
    Satisfied,
    Sense,
    Status,
    Violated,
    check_feasibility,
    constraint,
    feasible_oracle,
    solve,
    solve_with_separation,
)


def two_variable_program() -> LinearProgram:
    """max x + y  s.t.  x + 2y <= 4,  3x + y <= 6."""
    lp = LinearProgram()
    x = lp.add_variable("x")
    y = lp.add_variable("y")
    lp.add_constraint({x: 1, y: 2}, Relation.LE, 4, name="first")
    lp.add_constraint({x: 3, y: 1}, Relation.LE, 6, name="second")
    lp.set_objective({x: 1, y: 1}, Sense.MAX)
    return lp


def test_optimal_vertex_and_duals():
    """The optimum is exact and the duals price both binding rows."""
    solution = solve(two_variable_program())

    assert solution.status is Status.OPTIMAL
    assert solution.values == (Fraction(8, 5), Fraction(6, 5))
    assert solution.objective == Fraction(14, 5)
    assert solution.duals == (Fraction(2, 5), Fraction(1, 5))


def test_minimization_dual_sign():
    """For MIN problems a binding >= row has a nonnegative dual."""
    lp = LinearProgram()
    x = lp.add_variable()
    y = lp.add_variable()
    lp.add_constraint({x: 1, y: 1}, Relation.GE, 2)
    lp.set_objective({x: 1, y: 3}, Sense.MIN)

    solution = solve(lp)

    assert solution.objective == 2
    assert solution.values == (Fraction(2), Fraction(0))
    assert solution.duals == (Fraction(1),)


def test_free_variable_goes_negative():
    lp = LinearProgram()
    x = lp.add_variable("x", free=True)
    lp.add_constraint({x: 1}, Relation.GE, -3)
    lp.set_objective({x: 1}, Sense.MIN)

    solution = solve(lp)

    assert solution.values == (Fraction(-3),)


def test_equality_rows():
    lp = LinearProgram()
    x = lp.add_variable()
    y = lp.add_variable()
    lp.add_constraint({x: 1, y: 1}, Relation.EQ, 3)
    lp.add_constraint({y: 1}, Relation.GE, 1)
    lp.set_objective({x: 1}, Sense.MAX)

    solution = solve(lp)

    assert solution.objective == 2


def test_infeasible_program():
    lp = LinearProgram()
    x = lp.add_variable()
    lp.add_constraint({x: 1}, Relation.LE, 1)
    lp.add_constraint({x: 1}, Relation.GE, 2)
    lp.set_objective({x: 1}, Sense.MAX)

    assert solve(lp).status is Status.INFEASIBLE


def test_unbounded_program():
    lp = LinearProgram()
    x = lp.add_variable()
    lp.set_objective({x: 1}, Sense.MAX)

    solution = solve(lp)

    assert solution.status is Status.UNBOUNDED
    assert solution.objective is None


def test_malformed_model():
    lp = LinearProgram()
    lp.add_variable()
    lp.add_constraint({5: 1}, Relation.LE, 1)

    with pytest.raises(MalformedModel):
        lp.validate()
    with pytest.raises(MalformedModel):
        solve(lp)


def test_check_feasibility_reports_first_failing_row():
    lp = two_variable_program()

    assert isinstance(check_feasibility(lp, (Fraction(1), Fraction(1))), Satisfied)
    verdict = check_feasibility(lp, (Fraction(2), Fraction(1)))
    assert isinstance(verdict, Violated)
    assert verdict.index == 1
    assert verdict.slack == -1


def test_check_feasibility_dimension():
    with pytest.raises(DimensionMismatch):
        check_feasibility(two_variable_program(), (Fraction(1),))


def boxed_program() -> LinearProgram:
    """max x + y with 0 <= x, y <= 10."""
    lp = LinearProgram()
    x = lp.add_variable("x")
    y = lp.add_variable("y")
    lp.add_constraint({x: 1}, Relation.LE, 10)
    lp.add_constraint({y: 1}, Relation.LE, 10)
    lp.set_objective({x: 1, y: 1}, Sense.MAX)
    return lp


def test_separation_with_nothing_to_separate():
    """An oracle accepting every point leaves the plain simplex answer unchanged."""
    solution = solve_with_separation(boxed_program(), feasible_oracle)

    assert solution == solve(boxed_program())
    assert solution.objective == 20
    assert solution.cuts == ()


def test_separation_adds_violated_cuts():
    """A single hidden constraint is generated once and then the point is accepted."""
    hidden = constraint({0: 1, 1: 1}, Relation.LE, 3, name="hidden")

    def oracle(point):
        return hidden if hidden.slack(point) < 0 else None

    solution = solve_with_separation(boxed_program(), oracle)

    assert solution.status is Status.OPTIMAL
    assert solution.objective == 3
    assert solution.cuts == (hidden,)
    assert len(solution.duals) == 3
    assert solution.duals[2] == 1


def test_separation_accepts_batches():
    cuts = [
        constraint({0: 1}, Relation.LE, 1, name="x"),
        constraint({1: 1}, Relation.LE, 2, name="y"),
    ]

    def oracle(point):
        return [cut for cut in cuts if cut.slack(point) < 0]

    solution = solve_with_separation(boxed_program(), oracle)

    assert solution.objective == 3
    assert len(solution.cuts) == 2


def test_separation_rejects_satisfied_cut():
    def oracle(point):
        return constraint({0: 1}, Relation.LE, 100)

    with pytest.raises(OracleContractViolation):
        solve_with_separation(boxed_program(), oracle)


def test_separation_round_limit():
    """An oracle that keeps shaving the objective runs out of rounds."""

    def oracle(point):
        return constraint({0: 1, 1: 1}, Relation.LE, point[0] + point[1] - 1)

    with pytest.raises(RoundLimitExceeded):
        solve_with_separation(boxed_program(), oracle, max_rounds=2)
