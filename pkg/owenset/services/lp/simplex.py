"""Two-phase tableau simplex over Fractions with Bland's rule.

Every tableau row keeps an identity column (its slack, or its artificial variable once
phase 1 is over), so constraint duals are read off as minus the reduced cost of that
column. Rows appended after a solve (cuts) are re-optimized with the dual simplex.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from fractions import Fraction

from owenset.core.errors import SolverError
from owenset.services.lp.model import (
    Constraint,
    LinearProgram,
    LpSolution,
    Relation,
    Sense,
    Status,
    Violated,
    check_feasibility,
)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexTableau:
    """Dense tableau for one model; grows by one row per appended cut."""

    def __init__(self, lp: LinearProgram):
        lp.validate()
        self.lp = lp
        self.maximize = lp.sense is Sense.MAX

        # Structural columns: one per variable, then a negative part per free variable
        self.structural: list[tuple[int, int]] = [(j, 1) for j in range(lp.num_variables)]
        self.structural += [(j, -1) for j, var in enumerate(lp.variables) if var.free]
        self.columns_of: dict[int, list[tuple[int, int]]] = {}
        for col, (j, sign) in enumerate(self.structural):
            self.columns_of.setdefault(j, []).append((col, sign))

        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.basis: list[int] = []
        self.identity: list[int] = []
        self.row_sign: list[int] = []
        self.row_owner: list[int] = []
        self.costs: list[Fraction] = []
        self.reduced: list[Fraction] = []
        self.value = ZERO
        self.blocked: set[int] = set()
        self._artificial: set[int] = set()
        self.pivots = 0
        self._build(lp.constraints)

    # construction

    def _expand(self, coefficients: Mapping[int, Fraction]) -> dict[int, Fraction]:
        expanded: dict[int, Fraction] = {}
        for j, coef in coefficients.items():
            for col, sign in self.columns_of[j]:
                expanded[col] = coef * sign
        return expanded

    def _build(self, constraints: list[Constraint]) -> None:
        specs = []
        n_aux = 0
        n_art = 0
        for index, row in enumerate(constraints):
            coefficients = self._expand(row.coefficients)
            relation, rhs, sign = row.relation, row.rhs, 1
            if rhs < 0:
                coefficients = {col: -c for col, c in coefficients.items()}
                rhs, sign = -rhs, -1
                if relation is Relation.LE:
                    relation = Relation.GE
                elif relation is Relation.GE:
                    relation = Relation.LE
            specs.append((index, coefficients, relation, rhs, sign))
            n_aux += relation is not Relation.EQ
            n_art += relation is not Relation.LE

        n_struct = len(self.structural)
        width = n_struct + n_aux + n_art
        aux = n_struct
        art = n_struct + n_aux
        for index, coefficients, relation, rhs, sign in specs:
            row = [ZERO] * width
            for col, c in coefficients.items():
                row[col] = c
            if relation is Relation.LE:
                row[aux] = ONE
                basic = aux
                aux += 1
            else:
                if relation is Relation.GE:
                    row[aux] = -ONE
                    aux += 1
                row[art] = ONE
                basic = art
                self.blocked.add(art)
                art += 1
            self.rows.append(row)
            self.rhs.append(rhs)
            self.basis.append(basic)
            self.identity.append(basic)
            self.row_sign.append(sign)
            self.row_owner.append(index)

        artificial = set(self.blocked)
        self.blocked = set()
        self.costs = [ZERO] * width
        for col, (j, sign) in enumerate(self.structural):
            c = self.lp.objective.get(j, ZERO) * sign
            self.costs[col] = c if self.maximize else -c
        self._artificial = artificial

    def _price(self, costs: list[Fraction]) -> None:
        width = len(costs)
        self.reduced = list(costs)
        self.value = ZERO
        for i, row in enumerate(self.rows):
            cb = costs[self.basis[i]]
            if cb:
                for j in range(width):
                    if row[j]:
                        self.reduced[j] -= cb * row[j]
                self.value += cb * self.rhs[i]

    # pivoting

    def _pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        pivot = prow[c]
        if pivot != ONE:
            prow = [v / pivot for v in prow]
            self.rows[r] = prow
            self.rhs[r] /= pivot
        nonzero = [(j, v) for j, v in enumerate(prow) if v]
        b_r = self.rhs[r]
        for k, row in enumerate(self.rows):
            if k == r:
                continue
            factor = row[c]
            if factor:
                for j, v in nonzero:
                    row[j] -= factor * v
                self.rhs[k] -= factor * b_r
        factor = self.reduced[c]
        if factor:
            for j, v in nonzero:
                self.reduced[j] -= factor * v
            self.value += factor * b_r
        self.basis[r] = c
        self.pivots += 1

    def _primal(self) -> Status:
        while True:
            entering = next(
                (j for j, d in enumerate(self.reduced) if d > 0 and j not in self.blocked),
                None,
            )
            if entering is None:
                return Status.OPTIMAL
            best: tuple[Fraction, int, int] | None = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i], i)
                    if best is None or key < best:
                        best = key
            if best is None:
                return Status.UNBOUNDED
            self._pivot(best[2], entering)

    def _dual(self) -> Status:
        while True:
            infeasible = [(self.basis[i], i) for i, b in enumerate(self.rhs) if b < 0]
            if not infeasible:
                return Status.OPTIMAL
            _, r = min(infeasible)
            best: tuple[Fraction, int] | None = None
            for j, a in enumerate(self.rows[r]):
                if a < 0 and j not in self.blocked:
                    key = (self.reduced[j] / a, j)
                    if best is None or key < best:
                        best = key
            if best is None:
                return Status.INFEASIBLE
            self._pivot(r, best[1])

    # solving

    def solve(self) -> Status:
        if self._artificial:
            phase_one = [ZERO] * len(self.costs)
            for col in self._artificial:
                phase_one[col] = -ONE
            self._price(phase_one)
            self._primal()
            if self.value < 0:
                return Status.INFEASIBLE
            self._drive_out_artificials()
            self.blocked = set(self._artificial)
        self._price(self.costs)
        return self._primal()

    def _drive_out_artificials(self) -> None:
        for i in range(len(self.rows)):
            if self.basis[i] not in self._artificial:
                continue
            row = self.rows[i]
            entering = next(
                (j for j, v in enumerate(row) if v and j not in self._artificial), None
            )
            # a row with no such column is redundant and keeps its artificial at zero
            if entering is not None:
                self._pivot(i, entering)

    def add_row(self, row: Constraint, owner: int) -> None:
        """Append a constraint to an optimal tableau, keeping dual feasibility."""
        coefficients = self._expand(row.coefficients)
        parts = []
        if row.relation in (Relation.LE, Relation.EQ):
            parts.append((coefficients, row.rhs, 1))
        if row.relation in (Relation.GE, Relation.EQ):
            parts.append(({col: -c for col, c in coefficients.items()}, -row.rhs, -1))
        for coeffs, rhs, sign in parts:
            for existing in self.rows:
                existing.append(ZERO)
            self.costs.append(ZERO)
            self.reduced.append(ZERO)
            slack = len(self.costs) - 1
            new = [ZERO] * len(self.costs)
            for col, c in coeffs.items():
                new[col] = c
            new[slack] = ONE
            for i, basic_row in enumerate(self.rows):
                factor = new[self.basis[i]]
                if factor:
                    for j, v in enumerate(basic_row):
                        if v:
                            new[j] -= factor * v
                    rhs -= factor * self.rhs[i]
            self.rows.append(new)
            self.rhs.append(rhs)
            self.basis.append(slack)
            self.identity.append(slack)
            self.row_sign.append(sign)
            self.row_owner.append(owner)

    def reoptimize(self) -> Status:
        return self._dual()

    # reading the answer

    def primal_values(self) -> tuple[Fraction, ...]:
        column_value = [ZERO] * len(self.costs)
        for i, col in enumerate(self.basis):
            column_value[col] = self.rhs[i]
        values = [ZERO] * self.lp.num_variables
        for col, (j, sign) in enumerate(self.structural):
            values[j] += sign * column_value[col]
        return tuple(values)

    def dual_values(self, n_constraints: int) -> tuple[Fraction, ...]:
        duals = [ZERO] * n_constraints
        for i, col in enumerate(self.identity):
            duals[self.row_owner[i]] += self.row_sign[i] * -self.reduced[col]
        if not self.maximize:
            duals = [-y for y in duals]
        return tuple(duals)

    def objective(self) -> Fraction:
        return self.value if self.maximize else -self.value


def certify(lp: LinearProgram, solution: LpSolution) -> None:
    """Verify primal feasibility, dual feasibility and strong duality exactly.

    Raises:
        SolverError: On any failed check.
    """
    verdict = check_feasibility(lp, solution.values)
    if isinstance(verdict, Violated):
        raise SolverError(f"Primal point infeasible: {verdict}")
    if lp.objective_value(solution.values) != solution.objective:
        raise SolverError("Reported objective differs from the primal objective value")

    nonneg_dual = Relation.LE if lp.sense is Sense.MAX else Relation.GE
    reaction = [ZERO] * lp.num_variables
    dual_objective = ZERO
    for row, y in zip(lp.constraints, solution.duals, strict=True):
        if row.relation is nonneg_dual and y < 0:
            raise SolverError(f"Dual of row '{row.name}' has the wrong sign: {y}")
        if row.relation not in (nonneg_dual, Relation.EQ) and y > 0:
            raise SolverError(f"Dual of row '{row.name}' has the wrong sign: {y}")
        dual_objective += row.rhs * y
        if y:
            for j, coef in row.coefficients.items():
                reaction[j] += coef * y
    if dual_objective != solution.objective:
        raise SolverError(f"Strong duality fails: {dual_objective} != {solution.objective}")
    for j, variable in enumerate(lp.variables):
        c = lp.objective.get(j, ZERO)
        if variable.free and reaction[j] != c:
            raise SolverError(f"Dual constraint of free variable {variable.name} not tight")
        if not variable.free:
            if lp.sense is Sense.MAX and reaction[j] < c:
                raise SolverError(f"Dual constraint of {variable.name} violated")
            if lp.sense is Sense.MIN and reaction[j] > c:
                raise SolverError(f"Dual constraint of {variable.name} violated")


def finish(
    tableau: SimplexTableau, status: Status, cuts: tuple[Constraint, ...] = ()
) -> LpSolution:
    """Package the tableau state as an LpSolution, certifying optimal answers."""
    if status is not Status.OPTIMAL:
        return LpSolution(status=status, cuts=cuts)
    lp = tableau.lp
    solution = LpSolution(
        status=status,
        values=tableau.primal_values(),
        duals=tableau.dual_values(len(lp.constraints)),
        objective=tableau.objective(),
        cuts=cuts,
    )
    certify(lp, solution)
    return solution


def solve(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` exactly.

    Returns:
        The status and, when optimal, a certified primal/dual pair.

    Raises:
        MalformedModel: If a coefficient refers to an unknown variable.
    """
    tableau = SimplexTableau(lp)
    status = tableau.solve()
    logger.debug(
        f"Simplex: {lp.num_variables} vars, {len(lp.constraints)} rows, "
        f"{tableau.pivots} pivots -> {status.value}"
    )
    return finish(tableau, status)
