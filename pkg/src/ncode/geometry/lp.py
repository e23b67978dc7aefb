"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's rule.  The tableau is kept integral
with fraction-free (Edmonds) pivoting: every stored entry equals the true
rational entry times the current pivot determinant ``D``, and each pivot
divides exactly by the previous ``D``.  No floating point is involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _integral(row: Sequence) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (row, scale)."""
    if all(type(v) is int for v in row):
        return list(row), 1
    fr = [Fraction(v) for v in row]
    scale = lcm(*(f.denominator for f in fr)) if fr else 1
    return [int(f * scale) for f in fr], scale


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.T = rows
        self.basis = basis
        self.ncols = ncols
        self.D = 1
        self.obj: list[int] = [0] * (ncols + 1)

    def pivot(self, r: int, s: int) -> None:
        T, D = self.T, self.D
        prow = T[r]
        p = prow[s]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[s]
            if f:
                T[i] = [(x * p - f * y) // D for x, y in zip(row, prow)]
            elif p != D:
                T[i] = [(x * p) // D for x in row]
        f = self.obj[s]
        if f:
            self.obj = [(x * p - f * y) // D for x, y in zip(self.obj, prow)]
        elif p != D:
            self.obj = [(x * p) // D for x in self.obj]
        self.basis[r] = s
        self.D = p

    def run(self, allowed: Sequence[bool], max_iter: int = 100000) -> str:
        T, obj = self.T, None
        for _ in range(max_iter):
            obj = self.obj
            s = -1
            for j in range(self.ncols):
                if allowed[j] and obj[j] < 0:
                    s = j
                    break
            if s < 0:
                return OPTIMAL
            r = -1
            best_num = best_den = 0
            for i, row in enumerate(T):
                a = row[s]
                if a > 0:
                    num = row[-1]
                    if r < 0:
                        r, best_num, best_den = i, num, a
                        continue
                    lhs, rhs = num * best_den, best_num * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                        r, best_num, best_den = i, num, a
            if r < 0:
                return UNBOUNDED
            self.pivot(r, s)
        raise RuntimeError("simplex iteration limit reached")

    def set_objective(self, cost: Sequence[int]) -> None:
        """Install reduced costs (scaled by D) for maximizing ``cost``."""
        D = self.D
        obj = [-c * D for c in cost] + [0]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                obj = [o + cb * x for o, x in zip(obj, row)]
        self.obj = obj


def _solve(c, A_ub, b_ub, A_eq, b_eq, free):
    """Shared two-phase driver.

    Returns (status, tableau, colmap, row_scales, first_artificial_column);
    row_scales[i] is the signed factor row i was multiplied by.
    """
    nvar = len(c)
    free = list(free) if free is not None else [False] * nvar
    if len(free) != nvar:
        raise ValueError("free mask length must match number of variables")
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")

    # structural columns: one per nonnegative variable, two per free one
    colmap: list[tuple[int, int]] = []
    for j in range(nvar):
        colmap.append((j, 1))
        if free[j]:
            colmap.append((j, -1))
    ns = len(colmap)
    n_ub = len(A_ub)

    raw_rows: list[tuple[list, object, int]] = []  # (coeffs, rhs, slack sign or 0)
    for a, b in zip(A_ub, b_ub):
        if len(a) != nvar:
            raise ValueError("constraint row has wrong length")
        raw_rows.append(([a[j] * sgn for j, sgn in colmap], b, 1))
    for a, b in zip(A_eq, b_eq):
        if len(a) != nvar:
            raise ValueError("constraint row has wrong length")
        raw_rows.append(([a[j] * sgn for j, sgn in colmap], b, 0))

    rows: list[list[int]] = []
    needs_art: list[bool] = []
    signs: list[int] = []
    for coeffs, b, slack in raw_rows:
        ints, rscale = _integral(list(coeffs) + [b])
        sgn = rscale
        if ints[-1] < 0:
            ints = [-v for v in ints]
            sgn = -sgn
        ints.append(slack * (1 if sgn > 0 else -1))  # temporary tail: slack coefficient
        rows.append(ints)
        signs.append(sgn)  # signed scale factor applied to the row
        needs_art.append(slack == 0 or sgn < 0)
    n_art = sum(needs_art)
    ncols = ns + n_ub + n_art
    T: list[list[int]] = []
    basis: list[int] = []
    art_idx = ns + n_ub
    ub_i = 0
    slack_col = -1
    for i, raw in enumerate(rows):
        slack_coef = raw.pop()
        rhs = raw.pop()
        full = raw + [0] * (n_ub + n_art) + [rhs]
        if i < n_ub:
            full[ns + ub_i] = slack_coef
            slack_col = ns + ub_i
            ub_i += 1
        if needs_art[i]:
            full[art_idx] = 1
            basis.append(art_idx)
            art_idx += 1
        else:
            basis.append(slack_col)
        T.append(full)

    tab = _Tableau(T, basis, ncols)
    allowed = [True] * ncols
    if n_art:
        art_cols = set(range(ns + n_ub, ncols))
        phase1 = [0] * ncols
        for j in art_cols:
            phase1[j] = -1
        tab.set_objective(phase1)
        tab.run(allowed)
        if tab.obj[-1] < 0:
            return INFEASIBLE, tab, colmap, signs, ns + n_ub
        # drive zero-level artificials out of the basis
        i = 0
        while i < len(tab.T):
            if tab.basis[i] in art_cols:
                row = tab.T[i]
                s = next((j for j in range(ns + n_ub) if row[j] != 0), -1)
                if s < 0:
                    del tab.T[i]
                    del tab.basis[i]
                    continue
                if row[s] < 0:
                    tab.T[i] = [-v for v in row]
                tab.pivot(i, s)
            i += 1
        for j in art_cols:
            allowed[j] = False

    fc = [Fraction(v) for v in c]
    scale = lcm(*(f.denominator for f in fc)) if fc else 1
    cost_cols = [0] * ncols
    for k, (j, sgn) in enumerate(colmap):
        cost_cols[k] = int(fc[j] * scale) * sgn
    tab.set_objective(cost_cols)
    status = tab.run(allowed)
    tab.cost_scale = scale
    return status, tab, colmap, signs, ns + n_ub


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[bool] | None = None,
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Variables are nonnegative unless flagged in ``free``.  All data may be
    ints or Fractions; the optimum is returned exactly.
    """
    status, tab, colmap, _, _ = _solve(c, A_ub, b_ub, A_eq, b_eq, free)
    if status != OPTIMAL:
        return LPResult(status)
    nvar = len(c)
    D = tab.D
    colval: dict[int, Fraction] = {}
    for i, b in enumerate(tab.basis):
        colval[b] = Fraction(tab.T[i][-1], D)
    x = [Fraction(0)] * nvar
    for k, (j, sgn) in enumerate(colmap):
        v = colval.get(k)
        if v:
            x[j] += sgn * v
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), value)


def maximize_free(c: Sequence, A: Sequence[Sequence], b: Sequence, bounded: bool = False) -> LPResult:
    """Maximize ``c.x`` over ``A x <= b`` with x free, via the dual simplex tableau.

    The dual (min b.y, A^T y = c, y >= 0) has one row per variable, which
    is far smaller when there are many constraints and few variables.  The
    primal point is read off the artificial columns' reduced costs and
    checked exactly; any doubt falls back to the primal solver.  With
    ``bounded=True`` the caller promises the objective is bounded on the
    feasible set, so a dual without optimum proves primal infeasibility.
    """
    nvar = len(c)
    m = len(A)
    if m == 0 or nvar == 0:
        return maximize(c, A, b, free=[True] * nvar)
    At = [[A[i][j] for i in range(m)] for j in range(nvar)]
    status, tab, _, signs, first_art = _solve([-v for v in b], (), (), At, list(c), None)
    if status == OPTIMAL:
        D = tab.D * tab.cost_scale
        xn = [-signs[j] * tab.obj[first_art + j] for j in range(nvar)]
        if all(type(v) is int for row in A for v in row) and all(type(v) is int for v in b):
            ok = all(sum(a * xi for a, xi in zip(row, xn)) <= bb * D for row, bb in zip(A, b))
        else:
            ok = all(sum((Fraction(a) * xi for a, xi in zip(row, xn)), Fraction(0)) <= bb * D
                     for row, bb in zip(A, b))
        if ok:
            x = tuple(Fraction(v, D) for v in xn)
            value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
            if value == Fraction(-tab.obj[-1], D):
                return LPResult(OPTIMAL, x, value)
    elif bounded:
        return LPResult(INFEASIBLE)
    return maximize(c, A, b, free=[True] * nvar)


def feasible(
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nvar: int | None = None,
    free: Sequence[bool] | None = None,
) -> LPResult:
    """Feasibility-only solve (zero objective)."""
    if nvar is None:
        rows = list(A_ub) or list(A_eq)
        if not rows:
            raise ValueError("cannot infer the number of variables")
        nvar = len(rows[0])
    return maximize([0] * nvar, A_ub, b_ub, A_eq, b_eq, free)
