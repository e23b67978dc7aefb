"""Trimming, closing and inflating realizations with L-infinity balls.

Shrinking a set by an L-infinity ball of radius eps moves each facet
a.x <= b inward to a.x <= b - eps*|a|_1, which keeps everything rational.
"""
from __future__ import annotations

from fractions import Fraction

from ..code import (
    Code,
    is_intersection_complete,
    is_simplicial_complex,
    members,
)
from ..errors import PreconditionError
from .atoms import atom_witnesses, code_of_realization
from .convex import as_hpolytope, is_bounded
from .lp import OPTIMAL, maximize
from .types import CLOSED, OPEN, Empty, Halfspace, HPolytope, Realization, VPolytope, rat

MAX_HALVINGS = 30


def trim(P: HPolytope | Empty, eps) -> HPolytope | Empty:
    eps = rat(eps)
    if eps <= 0:
        raise PreconditionError("trim radius must be positive")
    if isinstance(P, Empty):
        return P
    if isinstance(P, VPolytope):
        raise PreconditionError("trim works on H-polytopes; convert V-polytopes first")
    hs = tuple(Halfspace(h.a, h.b - eps * h.norm1, h.strict) for h in P.halfspaces)
    return HPolytope(P.d, hs, P.open_flag)


def trim_all(R: Realization, eps) -> Realization:
    return Realization(R.d, R.topology, tuple(trim(S, eps) for S in R.sets))


def close_realization(R: Realization) -> Realization:
    """Replace every set by its closure (drop strictness)."""
    if not R.is_open:
        return R
    sets = []
    for S in R.sets:
        if isinstance(S, HPolytope):
            S = HPolytope(S.d, tuple(h.with_strict(False) for h in S.halfspaces), False)
        sets.append(S)
    return Realization(R.d, CLOSED, tuple(sets))


def _depth(S: HPolytope, p) -> Fraction | None:
    """Largest r with the L-infinity r-ball around p inside the closure of S."""
    best = None
    for h in S.halfspaces:
        r = (h.b - h.value(p)) / h.norm1
        best = r if best is None else min(best, r)
    return best


def trim_realization(R: Realization) -> tuple[Realization, Fraction]:
    """Trim an open realization of an intersection complete code, keeping its code.

    eps starts at half the smallest depth of a codeword witness inside its
    sets, and is halved until the trimmed code matches (the loop is a
    safeguard; the witness depth already suffices in the usual case).
    """
    if not R.is_open:
        raise PreconditionError("trim_realization needs an open realization")
    witnesses = atom_witnesses(R)
    if 0 not in witnesses:
        raise PreconditionError("the sets cover all of R^d, so the empty codeword has no atom")
    C = Code(R.n, witnesses.keys())
    if not is_intersection_complete(C):
        raise PreconditionError(
            "code of the realization is not intersection complete; trimming can "
            "create or destroy codewords (e.g. {123, 12, 13, ∅})")
    eps = None
    for c, p in witnesses.items():
        for i in members(c):
            S = R.sets[i - 1]
            if isinstance(S, HPolytope) and S.halfspaces:
                r = _depth(S, p)
                eps = r if eps is None else min(eps, r)
    eps = Fraction(1) if eps is None else eps / 2
    for _ in range(MAX_HALVINGS):
        out = trim_all(R, eps)
        if code_of_realization(out) == C:
            return out, eps
        eps /= 2
    raise PreconditionError("no trimming radius preserved the code")


def _min_inflation(sets) -> Fraction | None:
    """min t >= 0 with the t-inflated closed sets sharing a point (None if never)."""
    d = sets[0].d
    A, b = [], []
    for S in sets:
        for h in S.halfspaces:
            A.append(list(h.a) + [-h.norm1])
            b.append(h.b)
    res = maximize([0] * d + [-1], A, b, free=[True] * d + [False])
    if res.status != OPTIMAL:
        return None
    return -res.value


def inflate(R: Realization, witnesses: dict | None = None) -> Realization:
    """Open realization of the same code, growing each closed set by an L-infinity ball.

    The code must be a simplicial complex and every set bounded.  eps is
    half the smaller of (i) how far each witness sits outside the sets
    that must not contain it and (ii) how much inflation the empty
    intersections of minimal non-faces can absorb.
    """
    if R.is_open:
        raise PreconditionError("inflate needs a closed realization")
    sets = [as_hpolytope(S) for S in R.sets]
    for i, S in enumerate(sets, start=1):
        if not is_bounded(S):
            raise PreconditionError(f"set {i} is unbounded")
    HR = Realization(R.d, CLOSED, tuple(sets))
    if witnesses is None:
        witnesses = atom_witnesses(HR)
    C = Code(R.n, witnesses.keys() | {0})
    if not is_simplicial_complex(C):
        raise PreconditionError("inflate needs a code that is a simplicial complex")
    bounds: list[Fraction] = []
    for c, p in witnesses.items():
        for j in range(R.n):
            if c >> j & 1:
                continue
            S = sets[j]
            if isinstance(S, Empty):
                continue
            r = max((h.value(p) - h.b) / h.norm1 for h in S.halfspaces)
            if r <= 0:
                raise PreconditionError(f"witness for {members(c)} lies in set {j + 1}")
            bounds.append(r)
    words = C.words
    for c in words:
        for j in range(R.n):
            bit = 1 << j
            rho = c | bit
            if c & bit or rho in words:
                continue
            # minimal non-face: every facet of rho is a codeword
            if all((rho & ~(1 << i)) in words for i in range(R.n) if rho >> i & 1):
                group = [sets[i] for i in range(R.n) if rho >> i & 1]
                if any(isinstance(S, Empty) for S in group):
                    continue
                t = _min_inflation(group)
                if t is not None:
                    bounds.append(t)
    eps = min(bounds) / 2 if bounds else Fraction(1)
    out = []
    for S in sets:
        if isinstance(S, Empty):
            out.append(S)
            continue
        hs = tuple(Halfspace(h.a, h.b + eps * h.norm1, True) for h in S.halfspaces)
        out.append(HPolytope(S.d, hs, True))
    result = Realization(R.d, OPEN, tuple(out))
    got = code_of_realization(result)
    if got != C:
        raise PreconditionError(f"inflation changed the code: {C} became {got}")
    return result
