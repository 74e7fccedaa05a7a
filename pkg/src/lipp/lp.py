"""Continuous relaxations over bounded columns with incremental row addition.

The simplex itself is HiGHS (dual simplex) through ``scipy.optimize.linprog``;
this module owns the row bookkeeping, bound tightening and the result checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from .formulation import EQ, GE, LE, LinearRow

FEAS_TOL = 1e-7
INT_TOL = 1e-6

OPTIMAL, INFEASIBLE, ITERATION_LIMIT = "Optimal", "Infeasible", "IterationLimit"


@dataclass
class LpSolution:
    status: str
    values: np.ndarray | None
    objective: float


class LpProblem:
    """``max c.x`` subject to rows and per-column bounds (default ``[0, 1]``)."""

    def __init__(self, n_cols: int, objective: Sequence[float], rows: Iterable[LinearRow] = ()):
        self.n_cols = n_cols
        self.c = np.asarray(objective, dtype=float)
        if self.c.shape != (n_cols,):
            raise ValueError("objective length must equal the column count")
        self.lb = np.zeros(n_cols)
        self.ub = np.ones(n_cols)
        self.rows: list[LinearRow] = []
        # coo triplets for the <= block (>= rows negated) and the = block
        self._ub = ([], [], [], [])  # data, row, col, rhs
        self._eq = ([], [], [], [])
        self.add_rows(rows)

    def copy(self) -> "LpProblem":
        other = LpProblem(self.n_cols, self.c, self.rows)
        other.lb = self.lb.copy()
        other.ub = self.ub.copy()
        return other

    def add_rows(self, rows: Iterable[LinearRow]) -> "LpProblem":
        for row in rows:
            for j in row.coefs:
                if not 0 <= j < self.n_cols:
                    raise IndexError(f"row references unknown column {j}")
            block, sign = (self._eq, 1.0) if row.sense == EQ else (self._ub, 1.0 if row.sense == LE else -1.0)
            data, ri, ci, rhs = block
            r = len(rhs)
            for j, a in row.coefs.items():
                data.append(sign * a)
                ri.append(r)
                ci.append(j)
            rhs.append(sign * row.rhs)
            self.rows.append(row)
        return self

    def set_bounds(self, lb: np.ndarray, ub: np.ndarray) -> None:
        if np.any(lb > ub):
            raise ValueError("lower bound above upper bound")
        self.lb = np.asarray(lb, dtype=float).copy()
        self.ub = np.asarray(ub, dtype=float).copy()

    def _matrix(self, block):
        data, ri, ci, rhs = block
        if not rhs:
            return None, None
        return csr_matrix((data, (ri, ci)), shape=(len(rhs), self.n_cols)), np.asarray(rhs)

    def max_violation(self, values: np.ndarray) -> float:
        worst = 0.0
        for block in (self._ub, self._eq):
            A, b = self._matrix(block)
            if A is None:
                continue
            r = A @ values - b
            worst = max(worst, float(np.max(np.abs(r) if block is self._eq else r)))
        worst = max(worst, float(np.max(self.lb - values, initial=0.0)), float(np.max(values - self.ub, initial=0.0)))
        return worst


def lp_solve(p: LpProblem, warm_basis=None) -> LpSolution:
    """Solve the relaxation to a vertex optimum.

    ``warm_basis`` is accepted for interface compatibility; HiGHS is restarted
    from scratch every call.
    """
    A_ub, b_ub = p._matrix(p._ub)
    A_eq, b_eq = p._matrix(p._eq)
    res = linprog(
        -p.c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=np.column_stack([p.lb, p.ub]),
        method="highs-ds",
    )
    if res.status == 2:
        return LpSolution(INFEASIBLE, None, -np.inf)
    if res.status != 0:
        return LpSolution(ITERATION_LIMIT, None, np.nan)
    x = np.clip(res.x, p.lb, p.ub)
    # snap round-off so integrality tests see clean 0/1
    near = np.abs(x - np.round(x)) < 1e-9
    x[near] = np.round(x[near])
    return LpSolution(OPTIMAL, x, float(p.c @ x))


def add_rows(p: LpProblem, rows: Iterable[LinearRow]) -> LpProblem:
    return p.add_rows(rows)


def is_integral(values: np.ndarray, mask: np.ndarray | None = None, tol: float = INT_TOL) -> bool:
    v = values if mask is None else values[mask]
    return bool(np.all(np.abs(v - np.round(v)) <= tol))


__all__ = ["LpProblem", "LpSolution", "lp_solve", "add_rows", "is_integral", "FEAS_TOL", "INT_TOL", "GE", "LE", "EQ"]
