"""Relational equations p composed-with Q = r under max-min.

The maximum candidate is closed-form: sigma(q, r) = r when q > r else 1,
and p-hat_j = min over k of sigma(q_jk, r_k). The system is solvable
exactly when p-hat itself satisfies it, and then every solution sits below
p-hat entrywise. Minimal solutions have no closed form here; a grid
brute-force oracle stands in for them.

Indeterminate entries are an opt-in extension (`neutrosophic=True`):
comparisons lift through the coefficient ordering on reals and pure
multiples of I. With the flag off, any indeterminate input is rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .errors import (
    BudgetExceeded,
    ComponentCountMismatch,
    DomainError,
    ModeMismatch,
    ShapeMismatch,
)
from .matrices import Matrix, maxmin_compose, row_vector
from .special import SpecialMatrix
from .values import (
    ONE,
    Scalar,
    ValueDomain,
    coerce,
    scalar_max,
    scalar_min,
)

RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class FreProblem:
    """Find p with maxmin(p, q) = r; q is m x s, r is 1 x s, p is 1 x m."""

    q: Matrix
    r: Matrix

    def __post_init__(self):
        if self.r.rows != 1:
            raise ShapeMismatch(f"r must be a row vector, got "
                                f"{self.r.rows}x{self.r.cols}")
        if self.r.cols != self.q.cols:
            raise ShapeMismatch(
                f"r has {self.r.cols} entries but q has {self.q.cols} "
                f"columns")


@dataclass(frozen=True)
class FreSolution:
    max_solution: Matrix
    solvable: bool
    residual: Matrix


def _checked(value, neutrosophic: bool) -> Scalar:
    x = coerce(value)
    if not neutrosophic:
        if x.indet_coeff != 0.0:
            raise ModeMismatch(
                f"indeterminate value {x} needs neutrosophic=True")
        if not 0.0 <= x.real_part <= 1.0:
            raise DomainError(f"membership {x} outside [0, 1]")
        return x
    if not ValueDomain.NEUTRO_UNIT.contains(x):
        raise DomainError(f"membership {x} outside the unit carrier")
    return x


def _gt(a: Scalar, b: Scalar) -> bool:
    # strict domination under the coefficient ordering
    return a != b and scalar_max(a, b) == a and scalar_min(a, b) == b


def sigma(q, r, *, neutrosophic: bool = False) -> Scalar:
    """The residuation kernel: r when q exceeds r, else 1."""
    q = _checked(q, neutrosophic)
    r = _checked(r, neutrosophic)
    if _gt(q, r):
        return r
    return ONE


def _as_row(values, *, what: str) -> Matrix:
    if isinstance(values, Matrix):
        if values.rows != 1:
            raise ShapeMismatch(
                f"{what} must be a row vector, got "
                f"{values.rows}x{values.cols}")
        return values
    return row_vector(list(values), domain=ValueDomain.ANY)


def _close(a: Scalar, b: Scalar) -> bool:
    return (abs(a.real_part - b.real_part) <= RESIDUAL_TOL
            and abs(a.indet_coeff - b.indet_coeff) <= RESIDUAL_TOL)


def solve_max(q: Matrix, r, *, neutrosophic: bool = False) -> FreSolution:
    """Closed-form maximum candidate plus a verification pass.

    solvable is decided by substituting the candidate back in: when even
    the maximum candidate misses r, no solution exists at all.
    """
    r = _as_row(r, what="r")
    FreProblem(q, r)  # shape checks
    r_vals = [_checked(v, neutrosophic) for v in r.row(0)]
    q_vals = [[_checked(q.at(j, k), neutrosophic) for k in range(q.cols)]
              for j in range(q.rows)]
    p_hat = []
    for j in range(q.rows):
        best = ONE
        for k in range(q.cols):
            best = scalar_min(best, sigma(q_vals[j][k], r_vals[k],
                                          neutrosophic=neutrosophic))
        p_hat.append(best)
    p_row = row_vector(p_hat, domain=ValueDomain.ANY)
    residual = maxmin_compose(p_row, q)
    solvable = all(
        _close(residual.at(0, k), r_vals[k]) for k in range(q.cols))
    return FreSolution(max_solution=p_row, solvable=solvable,
                       residual=residual)


def solve_matrix(q: Matrix, big_r: Matrix, *,
                 neutrosophic: bool = False) -> tuple:
    """Row-partitioned form: each row of big_r is an independent problem
    against the same q. Returns one FreSolution per row."""
    if big_r.cols != q.cols:
        raise ShapeMismatch(
            f"R has {big_r.cols} columns but q has {q.cols}")
    return tuple(
        solve_max(q, row_vector(list(big_r.row(i)), domain=ValueDomain.ANY),
                  neutrosophic=neutrosophic)
        for i in range(big_r.rows))


def failing_columns(q: Matrix, r) -> tuple:
    """0-based columns where even the column maximum falls short of r -
    each one certifies unsolvability on its own."""
    r = _as_row(r, what="r")
    FreProblem(q, r)
    out = []
    for k in range(q.cols):
        col_max = reduce(scalar_max, (q.at(j, k) for j in range(q.rows)))
        target = coerce(r.at(0, k))
        dominates = col_max == target or (
            scalar_max(col_max, target) == col_max
            and scalar_min(col_max, target) == target)
        if not dominates:
            out.append(k)
    return tuple(out)


def check_necessary(q: Matrix, r) -> bool:
    """Necessary (not sufficient) solvability test: every column of q must
    reach at least the target r in that column."""
    return not failing_columns(q, r)


def minimal_solutions_bruteforce(q: Matrix, r, grid_step: float = 0.1, *,
                                 budget: int = 5_000_000) -> tuple:
    """Oracle-grade enumeration of minimal grid solutions.

    Walks every vector on the grid {0, grid_step, ..., 1}^m, keeps those
    solving the system, and filters to the entrywise-minimal ones. The
    work bound m*(points**m) must stay within `budget`.
    """
    r = _as_row(r, what="r")
    FreProblem(q, r)
    steps = round(1.0 / grid_step)
    if steps < 1 or abs(steps * grid_step - 1.0) > 1e-9:
        raise DomainError(f"grid step {grid_step} does not divide 1 evenly")
    m = q.rows
    points = steps + 1
    cost = m * points ** m
    if cost > budget:
        raise BudgetExceeded(
            f"grid enumeration needs {cost} steps, budget is {budget}")
    grid = [i / steps for i in range(points)]
    q_cols = [[coerce(q.at(j, k)).real_part for j in range(m)]
              for k in range(q.cols)]
    r_vals = []
    for v in r.row(0):
        v = coerce(v)
        if v.indet_coeff != 0.0:
            raise ModeMismatch(
                f"indeterminate target {v}: grid enumeration is real-valued")
        r_vals.append(v.real_part)
    solutions = []
    for p in itertools.product(grid, repeat=m):
        ok = True
        for k, col in enumerate(q_cols):
            reach = 0.0
            for pj, qj in zip(p, col):
                v = pj if pj < qj else qj
                if v > reach:
                    reach = v
            if abs(reach - r_vals[k]) > RESIDUAL_TOL:
                ok = False
                break
        if ok:
            solutions.append(p)
    solutions.sort(key=lambda p: (sum(p), p))
    minimal = []
    for p in solutions:
        dominated = False
        for small in minimal:
            if all(a <= b for a, b in zip(small, p)):
                dominated = True
                break
        if not dominated:
            minimal.append(p)
    return tuple(row_vector(list(p), domain=ValueDomain.UNIT)
                 for p in sorted(minimal))


def solve_special(special: SpecialMatrix, r_parts, *,
                  neutrosophic=None) -> tuple:
    """Slot-by-slot solve of a union of equation components. `r_parts`
    carries one target row per component; the indeterminacy extension
    defaults to each component's algebra tag."""
    r_parts = list(r_parts)
    if len(r_parts) != len(special):
        raise ComponentCountMismatch(
            f"{len(r_parts)} target vectors for {len(special)} components")
    out = []
    for idx, ((mat, tag), part) in enumerate(zip(special, r_parts)):
        flag = (tag.algebra == "neutrosophic") if neutrosophic is None \
            else neutrosophic
        try:
            out.append(solve_max(mat, part, neutrosophic=flag))
        except ShapeMismatch as exc:
            raise ShapeMismatch(f"component {idx + 1}: {exc}") from None
    return tuple(out)
