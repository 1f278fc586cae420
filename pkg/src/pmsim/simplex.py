"""Dense two-phase simplex for the tiny linear programs in cell geometry.

Solves  min c.x  subject to  A x = b,  x >= 0  on problems with a handful of
rows and columns.  Bland's rule throughout, so degenerate bases cannot cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LPSolverError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_TOL = 1e-9
_MAX_ITERS = 10_000


@dataclass
class LPResult:
    status: str
    x: np.ndarray | None = None
    value: float | None = None


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and abs(T[r, col]) > 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _iterate(T: np.ndarray, basis: list[int], n_cols: int) -> str:
    """Run simplex iterations on tableau T (last row = reduced costs)."""
    for _ in range(_MAX_ITERS):
        obj = T[-1, :n_cols]
        entering = -1
        for j in range(n_cols):  # Bland: first improving column
            if obj[j] < -_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        col = T[:-1, entering]
        rhs = T[:-1, -1]
        leaving, best, best_var = -1, np.inf, -1
        for r in range(len(basis)):
            if col[r] > _TOL:
                ratio = rhs[r] / col[r]
                if ratio < best - _TOL or (abs(ratio - best) <= _TOL and basis[r] < best_var):
                    leaving, best, best_var = r, ratio, basis[r]
        if leaving < 0:
            return UNBOUNDED
        _pivot(T, basis, leaving, entering)
    raise LPSolverError("simplex iteration limit exceeded")


def solve_lp(c, A, b) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    # Phase 1: artificial basis, minimize the sum of artificials.
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n, n + m))
    if _iterate(T, basis, n + m) != OPTIMAL:
        raise LPSolverError("phase 1 reported an unbounded auxiliary problem")
    if -T[-1, -1] > _TOL * max(1.0, abs(b).sum()):
        return LPResult(INFEASIBLE)

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep = []
    for r in range(m):
        if basis[r] >= n:
            piv = next((j for j in range(n) if abs(T[r, j]) > _TOL), None)
            if piv is None:
                continue  # redundant constraint
            _pivot(T, basis, r, piv)
        keep.append(r)

    rows = [T[r, list(range(n)) + [-1]] for r in keep]
    basis = [basis[r] for r in keep]
    T2 = np.zeros((len(rows) + 1, n + 1))
    if rows:
        T2[:-1] = np.array(rows)
    T2[-1, :n] = c
    for r, var in enumerate(basis):
        if abs(T2[-1, var]) > 0.0:
            T2[-1] -= T2[-1, var] * T2[r]

    status = _iterate(T2, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = np.zeros(n)
    for r, var in enumerate(basis):
        x[var] = T2[r, -1]
    return LPResult(OPTIMAL, x=x, value=float(c @ x))
