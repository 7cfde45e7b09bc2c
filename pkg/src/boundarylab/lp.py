"""Dense two-phase simplex for tiny equality-form linear programs.

All polytope computations reduce to programs of the shape
    optimize c.x  subject to  A x = b,  x >= 0
with at most a few dozen variables, so a dense tableau with Bland's
anti-cycling rule is exact enough and easy to audit. Pivot tolerance is
1e-11; phase-1 residuals above 1e-9 report infeasibility.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: np.ndarray | None
    value: float | None


def _pivot(t: np.ndarray, row: int, col: int) -> None:
    t[row] /= t[row, col]
    for i in range(t.shape[0]):
        if i != row and abs(t[i, col]) > 0.0:
            t[i] -= t[i, col] * t[row]


def _iterate(t: np.ndarray, basis: np.ndarray, cost: np.ndarray, n_enter: int) -> str:
    """Minimize cost over the tableau; only columns < n_enter may enter."""
    while True:
        lam = cost[basis] @ t[:, :-1]
        reduced = cost[: t.shape[1] - 1] - lam
        enter = -1
        for j in range(n_enter):
            if reduced[j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        col = t[:, enter]
        leave = -1
        best = np.inf
        for i in range(t.shape[0]):
            if col[i] > PIVOT_TOL:
                ratio = t[i, -1] / col[i]
                if ratio < best - PIVOT_TOL or (
                        abs(ratio - best) <= PIVOT_TOL
                        and (leave < 0 or basis[i] < basis[leave])):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(t, leave, enter)
        basis[leave] = enter


def lp_solve(objective, a_eq, b_eq, maximize: bool = False) -> LPResult:
    """Solve optimize objective.x s.t. a_eq x = b_eq, x >= 0.

    Returns an LPResult whose status is one of "optimal", "infeasible",
    "unbounded". On "optimal" the solution is a basic feasible point with
    constraint residual below 1e-9.
    """
    c = np.asarray(objective, dtype=float).ravel()
    a = np.atleast_2d(np.asarray(a_eq, dtype=float))
    b = np.asarray(b_eq, dtype=float).ravel()
    m, n = a.shape
    if c.size != n:
        raise ValidationError(f"objective has {c.size} entries for {n} variables")
    if b.size != m:
        raise ValidationError(f"rhs has {b.size} entries for {m} constraints")
    if not (np.all(np.isfinite(c)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValidationError("LP coefficients must be finite")
    if maximize:
        c = -c

    # phase 1: artificial basis, rhs forced nonnegative
    a = a.copy()
    b = b.copy()
    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0
    t = np.zeros((m, n + m + 1))
    t[:, :n] = a
    t[:, n:n + m] = np.eye(m)
    t[:, -1] = b
    basis = np.arange(n, n + m)
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    status = _iterate(t, basis, cost1, n + m)
    if status != OPTIMAL:  # pragma: no cover - phase 1 is always bounded below by 0
        return LPResult(INFEASIBLE, None, None)
    if float(cost1[basis] @ t[:, -1]) > FEAS_TOL:
        return LPResult(INFEASIBLE, None, None)

    # pivot leftover artificials out; fully zero structural rows are redundant
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n:
            piv = -1
            for j in range(n):
                if abs(t[i, j]) > PIVOT_TOL:
                    piv = j
                    break
            if piv >= 0:
                _pivot(t, i, piv)
                basis[i] = piv
            else:
                keep[i] = False
    t = np.concatenate([t[keep][:, :n], t[keep][:, -1:]], axis=1)
    basis = basis[keep]

    cost2 = np.concatenate([c, [0.0]])
    status = _iterate(t, basis, cost2, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    x = np.zeros(n)
    x[basis] = t[:, -1]
    value = float(c @ x)
    return LPResult(OPTIMAL, x, -value if maximize else value)
