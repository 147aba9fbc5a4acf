"""Exact two-phase simplex with Bland's rule, and the strict-positivity LP built on it"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from nilsoliton_checker.core.exactla import (
    DimensionMismatchError,
    RatMatrix,
    Scalar,
    Vector,
    rref,
    to_vector,
)

logger = logging.getLogger("nilsoliton_checker")

DEFAULT_MAX_ITERATIONS = 100_000


class SimplexError(ArithmeticError):
    """Raised when the simplex exceeds its iteration limit"""
    pass


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    solution: Optional[Vector]
    value: Optional[Fraction]
    iterations: int


class SimplexTableau:
    """
    Canonical-form tableau for: maximize c.x subject to A x = b, x >= 0.

    Each row keeps its right-hand side as the last entry. The basis holds one
    column index per row and every basic column is a unit column.
    """

    def __init__(self, rows: List[List[Fraction]], basis: List[int], max_iterations: int = DEFAULT_MAX_ITERATIONS):
        self.rows = rows
        self.basis = basis
        self.iterations = 0
        self.max_iterations = max_iterations

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, row_index: int, col: int):
        pivot_row = self.rows[row_index]
        value = pivot_row[col]
        if value != 1:
            pivot_row = [a / value for a in pivot_row]
            self.rows[row_index] = pivot_row
        for r, row in enumerate(self.rows):
            if r != row_index and row[col] != 0:
                factor = row[col]
                self.rows[r] = [a - factor * b for a, b in zip(row, pivot_row)]
        self.basis[row_index] = col

    def reduced_costs(self, costs: Sequence[Fraction], allowed: Sequence[bool]) -> List[Fraction]:
        reduced = list(costs)
        for row, basic in zip(self.rows, self.basis):
            cb = costs[basic]
            if cb:
                for j in range(self.width):
                    if row[j]:
                        reduced[j] -= cb * row[j]
        return [value if allowed[j] else Fraction(0) for j, value in enumerate(reduced)]

    def maximize(self, costs: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Run Bland's rule to optimality and return the final status"""
        while True:
            reduced = self.reduced_costs(costs, allowed)
            entering = next((j for j in range(self.width) if reduced[j] > 0), None)
            if entering is None:
                return "optimal"

            leaving = None
            best_ratio = None
            for r, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[r] < self.basis[leaving])):
                        best_ratio = ratio
                        leaving = r
            if leaving is None:
                return "unbounded"

            self.pivot(leaving, entering)
            self.iterations += 1
            if self.iterations > self.max_iterations:
                raise SimplexError(f"simplex exceeded {self.max_iterations} iterations")

    def values(self) -> List[Fraction]:
        x = [Fraction(0)] * self.width
        for row, basic in zip(self.rows, self.basis):
            x[basic] = row[-1]
        return x


def maximize(
    a: RatMatrix,
    b: Sequence[Scalar],
    c: Sequence[Scalar],
    max_iterations: int = DEFAULT_MAX_ITERATIONS
) -> LPResult:
    """Maximize c.x subject to a x = b and x >= 0, exactly"""
    rhs = to_vector(b)
    costs = to_vector(c)
    if a.nrows != len(rhs):
        raise DimensionMismatchError(f"matrix has {a.nrows} rows but right-hand side has length {len(rhs)}")
    if a.ncols != len(costs):
        raise DimensionMismatchError(f"matrix has {a.ncols} columns but objective has length {len(costs)}")

    n = a.ncols
    m = a.nrows
    rows: List[List[Fraction]] = []
    for i in range(m):
        row = list(a.row(i))
        value = rhs[i]
        if value < 0:
            row = [-x for x in row]
            value = -value
        artificial = [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        rows.append(row + artificial + [value])

    tableau = SimplexTableau(rows, [n + i for i in range(m)], max_iterations)
    everything = [True] * (n + m)

    # Phase 1: drive the artificial variables to zero
    phase_one_costs = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.maximize(phase_one_costs, everything)
    infeasibility = sum((tableau.values()[n + i] for i in range(m)), Fraction(0))
    if infeasibility > 0:
        logger.debug(f"LP infeasible after {tableau.iterations} iterations")
        return LPResult("infeasible", None, None, tableau.iterations)

    # Pivot remaining zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] >= n:
            col = next((j for j in range(n) if tableau.rows[r][j] != 0), None)
            if col is None:
                del tableau.rows[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, col)
        r += 1

    # Phase 2 over the original columns only
    allowed = [True] * n + [False] * m
    phase_two_costs = list(costs) + [Fraction(0)] * m
    status = tableau.maximize(phase_two_costs, allowed)
    if status == "unbounded":
        logger.debug(f"LP unbounded after {tableau.iterations} iterations")
        return LPResult("unbounded", None, None, tableau.iterations)

    x = tableau.values()[:n]
    value = sum((ci * xi for ci, xi in zip(costs, x)), Fraction(0))
    logger.debug(f"LP optimal value {value} after {tableau.iterations} iterations")
    return LPResult("optimal", tuple(x), value, tableau.iterations)


@dataclass(frozen=True)
class FeasibilityResult:
    """
    Outcome of maximizing the smallest component over {v : A v = b}.

    t_star is min(1, sup over solutions of min_i v_i); it is None only for an
    inconsistent system. witness attains t_star.
    """

    consistent: bool
    t_star: Optional[Fraction]
    witness: Optional[Vector]
    iterations: int

    @property
    def has_positive_solution(self) -> bool:
        return self.t_star is not None and self.t_star > 0


def maximize_min_component(a: RatMatrix, b: Sequence[Scalar], cap: Scalar = 1) -> FeasibilityResult:
    """
    Solve: maximize t subject to A v = b, v_i - t >= 0, t <= cap.

    Substituting v = s + t 1 with s >= 0 and t = t_plus - t_minus gives a
    standard-form LP in (s, t_plus, t_minus, slack). Redundant equations are
    removed first through the reduced row-echelon form of [A | b].
    """
    rhs = to_vector(b)
    if a.nrows != len(rhs):
        raise DimensionMismatchError(f"matrix has {a.nrows} rows but right-hand side has length {len(rhs)}")
    cap = Fraction(cap)
    n = a.ncols

    reduced, pivots = rref(a.augment(rhs))
    if n in pivots:
        logger.debug("maximize_min_component: system is inconsistent")
        return FeasibilityResult(False, None, None, 0)
    equations = [reduced.row(i) for i in range(len(pivots))]

    # columns: s_1..s_n, t_plus, t_minus, slack
    lp_rows = []
    lp_rhs = []
    for row in equations:
        coefficients = row[:n]
        row_sum = sum(coefficients, Fraction(0))
        lp_rows.append(list(coefficients) + [row_sum, -row_sum, Fraction(0)])
        lp_rhs.append(row[n])
    lp_rows.append([Fraction(0)] * n + [Fraction(1), Fraction(-1), Fraction(1)])
    lp_rhs.append(cap)
    objective = [Fraction(0)] * n + [Fraction(1), Fraction(-1), Fraction(0)]

    result = maximize(RatMatrix(lp_rows, ncols=n + 3), lp_rhs, objective)
    if result.status != "optimal":
        # Any solution v gives a feasible point, and t is capped, so this is unreachable
        raise SimplexError(f"strict-positivity LP ended with status {result.status}")

    s = result.solution[:n]
    t_star = result.solution[n] - result.solution[n + 1]
    witness = tuple(si + t_star for si in s)
    logger.debug(f"maximize_min_component: t* = {t_star} in {result.iterations} iterations")
    return FeasibilityResult(True, t_star, witness, result.iterations)


def positive_solution(a: RatMatrix, b: Sequence[Scalar]) -> Optional[Vector]:
    """A solution of A v = b with every component > 0, or None if there is none"""
    result = maximize_min_component(a, b)
    if result.has_positive_solution:
        return result.witness
    return None
