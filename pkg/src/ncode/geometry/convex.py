"""LP-backed predicates on convex sets and the V-to-H conversion."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import CapExceededError, PreconditionError
from .linalg import nullspace, primitive, rref
from .lp import OPTIMAL, maximize, maximize_free
from .types import Empty, Halfspace, HPolytope, VPolytope, point

MAX_VREP_DIM = 4


def _check_dims(constraints: Sequence[Halfspace], d: int) -> None:
    if d < 1:
        raise PreconditionError("dimension must be at least 1")
    for h in constraints:
        if h.d != d:
            raise PreconditionError(f"constraint of dimension {h.d}, expected {d}")


def solve_strict(rows, nvar: int, free=None, eq_rows=()) -> tuple | None:
    """Find a point of {x | a.x <= b or a.x < b (per row), A_eq x = b_eq}.

    ``rows`` holds ``(a, b, strict)`` triples.  Strict rows are handled by
    maximizing a slack delta (weighted by the row's 1-norm, capped at 1);
    the system is strictly feasible exactly when the optimum delta is
    positive.  Returns the optimal point, which sits as deep inside the
    strict rows as the cap allows, or None.
    """
    free = list(free) if free is not None else [True] * nvar
    strict_any = any(s for _, _, s in rows)
    if not eq_rows and all(free) and rows:
        # few variables, many rows: the dual tableau is much smaller
        A = [list(a) for a, _, _ in rows]
        b = [bb for _, bb, _ in rows]
        if not strict_any:
            res = maximize_free([0] * nvar, A, b, bounded=True)
            return res.x if res.status == OPTIMAL else None
        A = [r + [sum(abs(v) for v in r) if s else 0] for r, (_, _, s) in zip(A, rows)]
        A.append([0] * nvar + [1])
        b.append(1)
        res = maximize_free([0] * nvar + [1], A, b, bounded=True)
        if res.status != OPTIMAL or res.value <= 0:
            return None
        return res.x[:nvar]
    A_eq = [list(a) for a, _ in eq_rows]
    b_eq = [b for _, b in eq_rows]
    if not strict_any:
        A = [list(a) for a, _, _ in rows]
        b = [bb for _, bb, _ in rows]
        res = maximize([0] * nvar, A, b, A_eq, b_eq, free)
        return res.x if res.status == OPTIMAL else None
    A, b = [], []
    for a, bb, s in rows:
        w = sum(abs(v) for v in a) if s else 0
        A.append(list(a) + [w])
        b.append(bb)
    A.append([0] * nvar + [1])
    b.append(1)
    A_eq = [r + [0] for r in A_eq]
    res = maximize([0] * nvar + [1], A, b, A_eq, b_eq, free + [False])
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:nvar]


def feasible_point(constraints: Sequence[Halfspace], d: int) -> tuple | None:
    _check_dims(constraints, d)
    return solve_strict([(h.a, h.b, h.strict) for h in constraints], d)


def lp_feasible(constraints: Sequence[Halfspace], d: int) -> bool:
    """Whether some x in R^d satisfies every (strict or non-strict) constraint."""
    return feasible_point(constraints, d) is not None


def point_in_vpolytope(p: Sequence, V: VPolytope | Empty) -> bool:
    if isinstance(V, Empty):
        return False
    p = point(p)
    if len(p) != V.d:
        raise PreconditionError("point and polytope dimensions differ")
    if len(V.points) == 1:
        return V.points[0] == p
    k = len(V.points)
    eq = [([q[i] for q in V.points], p[i]) for i in range(V.d)]
    eq.append(([1] * k, 1))
    res = maximize([0] * k, [], [], [a for a, _ in eq], [b for _, b in eq])
    return res.status == OPTIMAL


def hull_meets(points: Sequence[Sequence], target) -> bool:
    """Whether conv(points) meets ``target`` (an H- or V-polytope)."""
    pts = [point(p) for p in points]
    if not pts or isinstance(target, Empty):
        return False
    d = len(pts[0])
    if target.d != d:
        raise PreconditionError("points and target dimensions differ")
    k = len(pts)
    # variables: hull weights lambda (>= 0) then x (free)
    eq_rows = [([q[i] for q in pts] + [(-1 if j == i else 0) for j in range(d)], 0)
               for i in range(d)]
    eq_rows.append(([1] * k + [0] * d, 1))
    rows = []
    if isinstance(target, HPolytope):
        for h in target.halfspaces:
            rows.append(([0] * k + list(h.a), h.b, h.strict))
    else:
        m = len(target.points)
        # x = sum mu_j v_j with mu >= 0 summing to 1
        eq_rows = [(r + [0] * m, b) for r, b in eq_rows]
        for i in range(d):
            row = [0] * k + [(1 if j == i else 0) for j in range(d)] + [-v[i] for v in target.points]
            eq_rows.append((row, 0))
        eq_rows.append(([0] * (k + d) + [1] * m, 1))
        free = [False] * k + [True] * d + [False] * m
        return solve_strict([], k + d + m, free, eq_rows) is not None
    free = [False] * k + [True] * d
    return solve_strict(rows, k + d, free, eq_rows) is not None


def maximize_over(c: Sequence, P: HPolytope) -> tuple[str, Fraction | None]:
    """sup of c.x over the closure of P: (status, value)."""
    A = [list(h.a) for h in P.halfspaces]
    b = [h.b for h in P.halfspaces]
    res = maximize(list(c), A, b, free=[True] * P.d)
    return res.status, res.value


def is_bounded(P) -> bool:
    if isinstance(P, (Empty, VPolytope)):
        return True
    if not P.halfspaces:
        return False
    if not lp_feasible(P.halfspaces, P.d):
        return True
    for i in range(P.d):
        for s in (1, -1):
            c = [0] * P.d
            c[i] = s
            status, _ = maximize_over(c, P)
            if status != OPTIMAL:
                return False
    return True


def _hyperplane_through(pts: Sequence[Sequence[Fraction]], d: int):
    """Normal of the hyperplane through d points, or None if degenerate."""
    base = pts[0]
    diffs = [[p[i] - base[i] for i in range(d)] for p in pts[1:]]
    ns = nullspace(diffs, d)
    if len(ns) != 1:
        return None
    return ns[0]


def _full_dim_facets(pts: list[tuple], d: int) -> list[tuple[tuple, Fraction]]:
    """Facet inequalities a.x <= b of a full-dimensional hull, brute force."""
    if d == 1:
        xs = [p[0] for p in pts]
        return [((1,), max(xs)), ((-1,), -min(xs))]
    seen = set()
    out = []
    for combo in combinations(range(len(pts)), d):
        sub = [pts[i] for i in combo]
        a = _hyperplane_through(sub, d)
        if a is None:
            continue
        b = sum((ai * xi for ai, xi in zip(a, sub[0])), Fraction(0))
        vals = [sum((ai * xi for ai, xi in zip(a, p)), Fraction(0)) for p in pts]
        if all(v <= b for v in vals):
            sign = 1
        elif all(v >= b for v in vals):
            sign = -1
        else:
            continue
        key = primitive([sign * v for v in a] + [sign * b])
        if key in seen:
            continue
        seen.add(key)
        out.append((key[:-1], Fraction(key[-1])))
    return out


def vrep_to_hrep(V: VPolytope | Empty, max_dim: int = MAX_VREP_DIM) -> HPolytope | Empty:
    """Exact facet description of conv(points) as a closed H-polytope.

    Lower-dimensional hulls get their affine-hull equalities as pairs of
    opposite inequalities.
    """
    if isinstance(V, Empty):
        return V
    d = V.d
    if d > max_dim:
        raise CapExceededError(
            f"facet enumeration is limited to dimension {max_dim}; "
            "use witness-only verification instead")
    pts = list(dict.fromkeys(V.points))
    p0 = pts[0]
    diffs = [[p[i] - p0[i] for i in range(d)] for p in pts[1:]]
    R, pivots = rref(diffs) if diffs else ([], [])
    k = len(pivots)
    rows: list[tuple[tuple, Fraction]] = []
    # equalities cutting out the affine hull
    for nvec in nullspace(R, d) if R else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]:
        a = primitive(nvec)
        b = sum((ai * xi for ai, xi in zip(a, p0)), Fraction(0))
        rows.append((a, b))
        rows.append((tuple(-v for v in a), -b))
    if k > 0:
        # the pivot coordinates are a faithful chart of the affine hull
        proj = [tuple(p[c] for c in pivots) for p in pts]
        for alpha, beta in _full_dim_facets(proj, k):
            a = [0] * d
            for c, v in zip(pivots, alpha):
                a[c] = v
            rows.append((tuple(a), beta))
    return HPolytope(d, tuple(Halfspace(a, b) for a, b in rows), False)


def as_hpolytope(S, max_dim: int = MAX_VREP_DIM):
    if isinstance(S, VPolytope):
        return vrep_to_hrep(S, max_dim)
    return S


def h_contains(outer: HPolytope, inner: HPolytope) -> bool:
    """Whether closure(inner) lies in closure(outer), via one LP per facet."""
    if not lp_feasible([h.with_strict(False) for h in inner.halfspaces], inner.d):
        return True
    for h in outer.halfspaces:
        status, val = maximize_over(h.a, HPolytope(inner.d, tuple(x.with_strict(False) for x in inner.halfspaces)))
        if status != OPTIMAL or val > h.b:
            return False
    return True
