"""Exact-rational linear programming over strategy sets.

A dense two-phase tableau simplex over fractions with Bland's
least-index pivot rule, which cannot cycle. Instances here stay tiny
(one variable per non-root vertex, one row per certificate), so no
sparse machinery is warranted. The optimal basis also yields exact dual
values, giving an independently checkable optimality certificate.

The pebbling application: every unsolvable configuration is a feasible
integer point of { p >= 0 : w_i . p <= w_i(1) for every certificate },
so floor(LP optimum) + 1 bounds the rooted pebbling number from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatchError,
    EmptyStrategySetError,
    UnboundedCoverageError,
)
from .graphs import Graph

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to rows . x <= rhs, x >= 0."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise DimensionMismatchError("row and right-hand-side counts differ")
        for row in self.rows:
            if len(row) != n:
                raise DimensionMismatchError("row length does not match the objective")


def linear_program(objective, rows, rhs) -> LinearProgram:
    return LinearProgram(
        tuple(Fraction(x) for x in objective),
        tuple(tuple(Fraction(x) for x in row) for row in rows),
        tuple(Fraction(x) for x in rhs),
    )


@dataclass(frozen=True)
class LpSolution:
    status: str
    optimum: Fraction | None
    point: tuple[Fraction, ...] | None
    dual: tuple[Fraction, ...] | None


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            factor = r[col]
            tab[i] = [a - factor * b for a, b in zip(r, tab[row])]
    basis[row] = col


def _run_simplex(tab, basis, cost, n_cols):
    """Bland's rule on [rows | rhs] with a separate reduced-cost row.

    cost is mutated in place; entry cost[-1] accumulates -objective.
    Returns "optimal" or "unbounded".
    """
    while True:
        enter = -1
        for j in range(n_cols):
            if cost[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)
        factor = cost[enter]
        cost[:] = [a - factor * b for a, b in zip(cost, tab[leave])]


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Exact simplex; deterministic by least-index pivoting."""
    m, n = len(lp.rows), len(lp.objective)
    zero = Fraction(0)

    # columns: n structural, m slacks, then artificials as needed, rhs last
    need_artificial = [b < 0 for b in lp.rhs]
    n_art = sum(need_artificial)
    n_cols = n + m + n_art
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = n + m
    for i in range(m):
        row = [zero] * (n_cols + 1)
        sign = -1 if need_artificial[i] else 1
        for j, a in enumerate(lp.rows[i]):
            row[j] = sign * a
        row[n + i] = Fraction(sign)
        row[-1] = sign * lp.rhs[i]
        if need_artificial[i]:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + i)
        tab.append(row)

    kept_rows = list(range(m))
    if n_art:
        # phase one: maximize minus the artificial sum
        cost = [zero] * (n_cols + 1)
        for j in range(n + m, n_cols):
            cost[j] = Fraction(-1)
        for i, b in enumerate(basis):
            if cost[b] != 0:
                factor = cost[b]
                cost = [a - factor * x for a, x in zip(cost, tab[i])]
        _run_simplex(tab, basis, cost, n_cols)
        if -cost[-1] < 0:
            return LpSolution(INFEASIBLE, None, None, None)
        # pivot any leftover artificial out on a real column; an all-zero
        # row is a redundant constraint and is dropped
        drop = []
        for i in range(len(tab)):
            if basis[i] >= n + m:
                for j in range(n + m):
                    if tab[i][j] != 0:
                        _pivot(tab, basis, i, j)
                        break
                else:
                    drop.append(i)
        for i in reversed(drop):
            del tab[i], basis[i], kept_rows[i]
        for i in range(len(tab)):
            tab[i] = tab[i][: n + m] + [tab[i][-1]]
        n_cols = n + m

    cost = [zero] * (n_cols + 1)
    for j in range(n):
        cost[j] = lp.objective[j]
    for i, b in enumerate(basis):
        if cost[b] != 0:
            factor = cost[b]
            cost = [a - factor * x for a, x in zip(cost, tab[i])]
    status = _run_simplex(tab, basis, cost, n_cols)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None, None)

    point = [zero] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] = tab[i][-1]
    optimum = -cost[-1]
    try:
        dual = _dual_values(lp, basis, kept_rows)
    except (ValueError, StopIteration):
        # degenerate bases involving dropped redundant rows
        dual = None
    return LpSolution(OPTIMAL, optimum, tuple(point), dual)


def _dual_values(lp, basis, kept_rows):
    """Solve y . B = c_B exactly for the optimal basis; dropped rows get 0."""
    n = len(lp.objective)
    m = len(kept_rows)
    zero = Fraction(0)
    cols = []
    cb = []
    for b in basis:
        if b < n:
            cols.append([lp.rows[r][b] for r in kept_rows])
            cb.append(lp.objective[b])
        else:
            col = [zero] * m
            col[kept_rows.index(b - n)] = Fraction(1)
            cols.append(col)
            cb.append(zero)
    # equations: sum_i y_i * cols[j][i] = cb[j]
    aug = [[cols[j][i] for i in range(m)] + [cb[j]] for j in range(m)]
    for c in range(m):
        pivot_row = next(r for r in range(c, m) if aug[r][c] != 0)
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(m):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    partial = [aug[i][-1] for i in range(m)]
    dual = [zero] * len(lp.rows)
    for pos, r in enumerate(kept_rows):
        dual[r] = partial[pos]
    return tuple(dual)


def lp_pebbling_bound(g: Graph, certs, *, return_lp: bool = False):
    """LP upper bound on the rooted pebbling number from a strategy set.

    One nonnegative variable per non-root vertex, objective the total
    size, one row per certificate capping its weighted sum at the
    certificate's all-ones weight. Every non-root vertex must carry
    positive weight in some certificate, otherwise stacking pebbles
    there is unconstrained and the program is unbounded.
    """
    certs = list(certs)
    if not certs:
        raise EmptyStrategySetError("need at least one certificate")
    variables = [v for v in range(g.vertex_count) if v != g.root]
    for v in variables:
        if all(c.weight_function.weights[v] == 0 for c in certs):
            raise UnboundedCoverageError(f"vertex {v} has zero weight in every certificate")
    rows = []
    rhs = []
    for c in certs:
        wf = c.weight_function
        if wf.graph is not g:
            raise DimensionMismatchError("certificate lives on a different graph")
        rows.append([wf.weights[v] for v in variables])
        rhs.append(wf.total)
    lp = linear_program([1] * len(variables), rows, rhs)
    sol = solve_lp(lp)
    if sol.status != OPTIMAL:
        raise UnboundedCoverageError(f"strategy LP ended {sol.status}")
    bound = math.floor(sol.optimum) + 1
    if return_lp:
        return sol.optimum, bound, lp, sol
    return sol.optimum, bound
