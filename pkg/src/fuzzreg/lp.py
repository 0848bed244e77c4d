"""Dense two-phase simplex for small linear programs.

Problems are stated as ``minimize c @ x`` subject to rows ``a @ x (<=|>=|=) b``
with each variable either free or nonnegative.  Free variables are split into
a difference of nonnegative parts internally.

Pivoting uses Dantzig's rule for a bounded number of iterations and then
switches to Bland's smallest-index rule, which cannot cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

LE, GE, EQ = "<=", ">=", "="
FREE, NONNEG = "free", "nonneg"

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

MAX_VARIABLES = 1_000
MAX_CONSTRAINTS = 100_000

PIVOT_TOL = 1e-9
CHECK_TOL = 1e-7


class LPError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[float, ...]
    relation: str
    bound: float
    name: str = ""


@dataclass
class LinearProgram:
    objective: Sequence[float]
    constraints: list[Constraint] = field(default_factory=list)
    kinds: Sequence[str] | None = None
    names: Sequence[str] | None = None

    def __post_init__(self):
        self.objective = tuple(float(v) for v in self.objective)
        n = len(self.objective)
        if self.kinds is None:
            self.kinds = (NONNEG,) * n
        self.kinds = tuple(self.kinds)
        if self.names is None:
            self.names = tuple(f"x{i + 1}" for i in range(n))
        self.names = tuple(self.names)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def add(self, coefficients, relation, bound, name=""):
        self.constraints.append(
            Constraint(tuple(float(v) for v in coefficients), relation, float(bound), name))

    def validate(self):
        n = self.n_vars
        if n == 0:
            raise LPError("linear program has no variables")
        if n > MAX_VARIABLES:
            raise LPError(f"{n} variables exceeds the limit of {MAX_VARIABLES}")
        if len(self.constraints) > MAX_CONSTRAINTS:
            raise LPError(f"{len(self.constraints)} constraints exceeds the limit of {MAX_CONSTRAINTS}")
        if len(self.kinds) != n or len(self.names) != n:
            raise LPError("variable kinds/names do not match the objective dimension")
        for k in self.kinds:
            if k not in (FREE, NONNEG):
                raise LPError(f"unknown variable kind {k!r}")
        if not all(math.isfinite(v) for v in self.objective):
            raise LPError("objective has non-finite coefficients")
        for i, con in enumerate(self.constraints):
            if len(con.coefficients) != n:
                raise LPError(
                    f"constraint {i + 1} has {len(con.coefficients)} coefficients, expected {n}")
            if con.relation not in (LE, GE, EQ):
                raise LPError(f"constraint {i + 1}: unknown relation {con.relation!r}")
            if not (all(math.isfinite(v) for v in con.coefficients) and math.isfinite(con.bound)):
                raise LPError(f"constraint {i + 1} has non-finite coefficients")

    def violations(self, values: Sequence[float]) -> list[tuple[int, float]]:
        """(index, amount) for every constraint or sign bound violated by ``values``."""
        x = np.asarray(values, dtype=float)
        out = []
        for i, con in enumerate(self.constraints):
            lhs = float(np.dot(con.coefficients, x))
            if con.relation == LE:
                gap = lhs - con.bound
            elif con.relation == GE:
                gap = con.bound - lhs
            else:
                gap = abs(lhs - con.bound)
            if gap > 0:
                out.append((i, gap))
        for j, kind in enumerate(self.kinds):
            if kind == NONNEG and x[j] < 0:
                out.append((-(j + 1), -x[j]))
        return out

    def is_feasible(self, values: Sequence[float], tol: float = CHECK_TOL) -> bool:
        return all(gap <= tol for _, gap in self.violations(values))


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective: float
    values: tuple[float, ...]
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.t = np.hstack([a, b[:, None]])
        self.basis = basis
        self.iterations = 0

    def pivot(self, row: int, col: int):
        t = self.t
        t[row] /= t[row, col]
        col_vals = t[:, col].copy()
        col_vals[row] = 0.0
        t -= np.outer(col_vals, t[row])
        self.basis[row] = col
        self.iterations += 1

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        cb = cost[self.basis]
        return cost - cb @ self.t[:, :-1]

    def run(self, cost: np.ndarray, allowed: np.ndarray, dantzig_limit: int) -> str:
        while True:
            d = self.reduced_costs(cost)
            candidates = np.flatnonzero(allowed & (d < -PIVOT_TOL))
            if candidates.size == 0:
                return OPTIMAL
            if self.iterations < dantzig_limit:
                col = int(candidates[np.argmin(d[candidates])])
            else:
                col = int(candidates[0])
            column = self.t[:, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return UNBOUNDED
            ratios = self.t[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            row = int(min(ties, key=lambda r: self.basis[r]))
            self.pivot(row, col)


def solve(lp: LinearProgram) -> LpSolution:
    lp.validate()

    # column layout: one column per nonnegative var, two per free var
    col_of = []
    n_struct = 0
    for kind in lp.kinds:
        if kind == FREE:
            col_of.append((n_struct, n_struct + 1))
            n_struct += 2
        else:
            col_of.append((n_struct, None))
            n_struct += 1

    m = len(lp.constraints)
    rows = np.zeros((m, n_struct))
    rhs = np.zeros(m)
    rels = []
    for i, con in enumerate(lp.constraints):
        for j, v in enumerate(con.coefficients):
            pos, neg = col_of[j]
            rows[i, pos] = v
            if neg is not None:
                rows[i, neg] = -v
        rel, b = con.relation, con.bound
        if b < 0:
            rows[i] *= -1
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        rhs[i] = b
        rels.append(rel)

    n_slack = sum(r in (LE, GE) for r in rels)
    n_art = sum(r in (GE, EQ) for r in rels)
    width = n_struct + n_slack + n_art
    a = np.zeros((m, width))
    a[:, :n_struct] = rows
    basis = [0] * m
    art_cols = []
    s_col = n_struct
    a_col = n_struct + n_slack
    for i, rel in enumerate(rels):
        if rel == LE:
            a[i, s_col] = 1.0
            basis[i] = s_col
            s_col += 1
        elif rel == GE:
            a[i, s_col] = -1.0
            s_col += 1
            a[i, a_col] = 1.0
            basis[i] = a_col
            art_cols.append(a_col)
            a_col += 1
        else:
            a[i, a_col] = 1.0
            basis[i] = a_col
            art_cols.append(a_col)
            a_col += 1

    tab = _Tableau(a, rhs, basis)
    dantzig_limit = 50 * (m + width)
    is_art = np.zeros(width, dtype=bool)
    is_art[art_cols] = True

    if art_cols:
        phase1 = np.zeros(width)
        phase1[is_art] = 1.0
        tab.run(phase1, np.ones(width, dtype=bool), dantzig_limit)
        infeas = float(phase1[tab.basis] @ tab.t[:, -1])
        if infeas > CHECK_TOL * max(1.0, float(np.abs(rhs).max(initial=0.0))):
            return LpSolution(INFEASIBLE, math.nan, (), tab.iterations)
        # drive artificials out of the basis; drop redundant rows
        keep = []
        for r in range(m):
            if is_art[tab.basis[r]]:
                cand = np.flatnonzero(~is_art & (np.abs(tab.t[r, :-1]) > PIVOT_TOL))
                if cand.size:
                    tab.pivot(r, int(cand[0]))
                    keep.append(r)
            else:
                keep.append(r)
        tab.t = tab.t[keep]
        tab.basis = [tab.basis[r] for r in keep]

    cost = np.zeros(width)
    for j, v in enumerate(lp.objective):
        pos, neg = col_of[j]
        cost[pos] = v
        if neg is not None:
            cost[neg] = -v
    status = tab.run(cost, ~is_art, dantzig_limit)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, -math.inf, (), tab.iterations)

    z = np.zeros(width)
    z[tab.basis] = tab.t[:, -1]
    values = []
    for (pos, neg), kind in zip(col_of, lp.kinds):
        v = float(z[pos] - (z[neg] if neg is not None else 0.0))
        if abs(v) < PIVOT_TOL * 1e-3:
            v = 0.0
        values.append(v)
    objective = math.fsum(c * v for c, v in zip(lp.objective, values))
    return LpSolution(OPTIMAL, objective, tuple(values), tab.iterations)
