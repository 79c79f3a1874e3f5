"""Tests for the iterative leximin / leximax engine and its sampling check."""

from fractions import Fraction
from unittest.mock import MagicMock

import pytest

from owenset.core.errors import InfeasibleBase, MalformedModel, NoPositiveDual
from owenset.services.leximin import (
    Dominated,
    LeximinProblem,
    NotDominated,
    RoundOutcome,
    dominates,
    fix_iteratively,
    leximax,
    leximin,
    verify_leximin,
)
from owenset.services.lp import LinearProgram, Relation, Sense


def simplex_face(with_floor: bool = True) -> LinearProgram:
    """max x0 + x1 + x2 s.t. the sum is at most 3 and, optionally, x2 >= 2."""
    lp = LinearProgram()
    for name in ("x0", "x1", "x2"):
        lp.add_variable(name)
    lp.add_constraint({0: 1, 1: 1, 2: 1}, Relation.LE, 3, name="total")
    if with_floor:
        lp.add_constraint({2: 1}, Relation.GE, 2, name="floor")
    lp.set_objective({0: 1, 1: 1, 2: 1}, Sense.MAX)
    return lp


def segment() -> LinearProgram:
    """Shares (x0, x1) on the segment x0 + x1 = 2."""
    lp = LinearProgram()
    lp.add_variable("x0")
    lp.add_variable("x1")
    lp.add_constraint({0: 1, 1: 1}, Relation.LE, 2)
    lp.set_objective({0: 1, 1: 1}, Sense.MAX)
    return lp


def test_leximin_raises_the_smallest_shares_first():
    """Two rounds: the free pair splits what the floor leaves, then x2 takes the rest."""
    problem = LeximinProblem.of_variables(simplex_face(), [0, 1, 2])

    result = leximin(problem)

    assert result.shares == {0: Fraction(1, 2), 1: Fraction(1, 2), 2: Fraction(2)}
    assert result.alphas == (Fraction(1, 2), Fraction(2))
    assert result.rounds[0].fixed == (0, 1)


def test_leximin_equal_split_without_floor():
    problem = LeximinProblem.of_variables(simplex_face(with_floor=False), [0, 1, 2])

    result = leximin(problem)

    assert result.shares == {0: 1, 1: 1, 2: 1}
    assert len(result.rounds) == 1


def test_leximax_fixes_the_largest_share_first():
    problem = LeximinProblem.of_variables(simplex_face(), [0, 1, 2])

    result = leximax(problem)

    assert result.shares == {0: Fraction(1, 2), 1: Fraction(1, 2), 2: Fraction(2)}
    assert result.alphas[0] == 2


def test_shares_can_be_linear_expressions():
    """Tracked shares are scaled variables, as in the b-matching game."""
    problem = LeximinProblem(segment(), {"a": {0: Fraction(2)}, "b": {1: Fraction(1)}})

    result = leximin(problem)

    # 2 * x0 = x1 and x0 + x1 = 2
    assert result.shares == {"a": Fraction(4, 3), "b": Fraction(4, 3)}
    assert result.point is not None
    assert result.point[0] == Fraction(2, 3)


def test_unknown_share_variable():
    with pytest.raises(MalformedModel):
        LeximinProblem(segment(), {"a": {7: Fraction(1)}})


def test_infeasible_base():
    lp = segment()
    lp.add_constraint({0: 1}, Relation.GE, 5)
    with pytest.raises(InfeasibleBase):
        leximin(LeximinProblem.of_variables(lp, [0, 1]))


def test_fix_iteratively_needs_a_nonzero_dual():
    """A round solver that never reports a binding share cannot make progress."""
    solver = MagicMock()
    solver.solve_round.return_value = RoundOutcome(alpha=Fraction(1), duals={"a": Fraction(0)})

    with pytest.raises(NoPositiveDual):
        fix_iteratively(["a"], solver)
    solver.solve_round.assert_called_once()


def test_fix_iteratively_with_stub_rounds():
    solver = MagicMock()
    solver.solve_round.side_effect = [
        RoundOutcome(alpha=Fraction(1), duals={"a": Fraction(1), "b": Fraction(0)}),
        RoundOutcome(alpha=Fraction(3), duals={"b": Fraction(-1)}),
    ]

    result = fix_iteratively(["a", "b"], solver)

    assert result.shares == {"a": 1, "b": 3}
    assert [r.fixed for r in result.rounds] == [("a",), ("b",)]


def test_dominates():
    assert dominates({0: Fraction(1), 1: Fraction(1)}, {0: Fraction(0), 1: Fraction(2)}, False)
    assert not dominates({0: Fraction(0), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(0)}, False)
    assert dominates({0: Fraction(1), 1: Fraction(2)}, {0: Fraction(0), 1: Fraction(3)}, True)


def test_verify_leximin_accepts_the_leximin_point():
    problem = LeximinProblem.of_variables(segment(), [0, 1])
    candidate = leximin(problem).shares

    verdict = verify_leximin(problem, candidate, sample_count=20, seed=3)

    assert isinstance(verdict, NotDominated)
    assert verdict


def test_verify_leximin_refutes_an_endpoint():
    problem = LeximinProblem.of_variables(segment(), [0, 1])

    verdict = verify_leximin(
        problem, {0: Fraction(0), 1: Fraction(2)}, sample_count=50, seed=1
    )

    assert isinstance(verdict, Dominated)
    assert dominates(verdict.witness, {0: Fraction(0), 1: Fraction(2)}, False)
