"""Embedding-dimension bounds for codes, with the reason for each bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .code import (
    Code,
    full_mask,
    is_intersection_complete,
    is_simplicial_complex,
    maximal_codewords,
    members,
    popcount,
)
from .errors import PreconditionError
from .families import make_S_C_over_D, make_T_n, minimal_nonempty

# exact open embedding dimensions of the tangled sunflower codes T_1..T_5
T_N_TABLE = (1, 2, 3, 3, 4)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class BoundReport:
    n: int
    num_maximal: int          # this is m+1 in the max{2, m} bound
    dim: int
    intersection_complete: bool
    odim_lower: int = 0
    odim_upper: Optional[int] = None   # None = no finite bound known
    cdim_lower: int = 0
    cdim_upper: Optional[int] = None
    exact_odim: Optional[int] = None
    family: Optional[str] = None
    reasons: list = field(default_factory=list)

    def note(self, text: str, tag: str) -> None:
        self.reasons.append((text, tag))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "num_maximal": self.num_maximal,
            "dim": self.dim,
            "intersection_complete": self.intersection_complete,
            "odim_lower": self.odim_lower,
            "odim_upper": self.odim_upper,
            "cdim_lower": self.cdim_lower,
            "cdim_upper": self.cdim_upper,
            "exact_odim": self.exact_odim,
            "family": self.family,
            "reasons": [{"bound": t, "tag": g} for t, g in self.reasons],
        }


def t_n_bounds(n: int) -> tuple[int, int, Optional[int]]:
    """(lower, upper, exact) for the open embedding dimension of T_n."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"n must be a positive integer, got {n!r}")
    if n <= len(T_N_TABLE):
        v = T_N_TABLE[n - 1]
        return v, v, v
    lower = max(_ceil_div(n, 2), T_N_TABLE[-1])
    upper = T_N_TABLE[-1] + (n - len(T_N_TABLE))
    return lower, upper, None


def compute_k(C: Code, D: Code) -> int:
    """Largest number of maximal codewords of D whose union lies in a codeword of C.

    A union lies in the simplicial complex of C exactly when it lies in
    some codeword, so it is enough to count, for each c in C, the maximal
    codewords of D contained in c.
    """
    if C.n != D.n:
        raise PreconditionError("C and D must share n")
    if not D.words <= C.words:
        raise PreconditionError("D is not contained in C")
    facets = maximal_codewords(D)
    return max(sum(1 for F in facets if F & c == F) for c in C.words)


def scd_bounds(C: Code, D: Code) -> tuple[int, int]:
    """(lower, upper) on the open embedding dimension of S_{C/D}."""
    m = len(maximal_codewords(D))
    if m < 2:
        raise PreconditionError("the bound needs D to have at least 2 maximal codewords")
    k = compute_k(C, D)
    return _ceil_div(m, k), m


def binomial_extremal(n: int) -> int:
    """Largest facet count of a complex on n-1 vertices with no facet containing another."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    return comb(n - 1, (n - 1) // 2)


def _split_apex(C: Code) -> tuple[Code, Code] | None:
    """Read C as S_{C'/D} with the last neuron as apex; None if it is not of that form."""
    N = C.n
    if N < 2:
        return None
    n = N - 1
    apex = 1 << n
    base = {w for w in C.words if not w & apex}
    glued = {w & ~apex for w in C.words if w & apex}
    if full_mask(n) not in base or not glued:
        return None
    Cb, Db = Code(n, base), Code(n, glued | {0})
    if 0 not in glued:
        return None
    if not glued <= base or not is_intersection_complete(Cb) or not is_intersection_complete(Db):
        return None
    if make_S_C_over_D(Cb, Db) != C:
        return None
    return Cb, Db


def _swap_last(C: Code, i: int) -> Code:
    """Relabel by swapping neuron i (0-based bit) with the last neuron."""
    last = C.n - 1
    if i == last:
        return C
    out = set()
    for w in C.words:
        bi, bl = w >> i & 1, w >> last & 1
        w &= ~((1 << i) | (1 << last))
        out.add(w | (bl << i) | (bi << last))
    return Code(C.n, out)


def _relabel_T(C: Code) -> tuple[int, Code] | None:
    """Relabel C to look like T_n, if it has the tangled structure."""
    if C.n % 2 or C.n < 4:
        return None
    n = C.n // 2
    maxi = maximal_codewords(C)
    big = [w for w in maxi if popcount(w) == n]
    pairs = [w for w in maxi if popcount(w) == 2]
    if n == 2:
        big = pairs
    for a in big:
        b = full_mask(C.n) ^ a
        if b not in maxi or a == b:
            continue
        ps = [p for p in pairs if p not in (a, b) and popcount(p & a) == 1]
        if len(ps) != n:
            continue
        perm = {}
        for k, p in enumerate(sorted(ps)):
            (x,), (y,) = members(p & a), members(p & b)
            perm[x] = 2 * k + 1
            perm[y] = 2 * k + 2
        if len(perm) != C.n:
            continue
        words = set()
        for w in C.words:
            m = 0
            for i in members(w):
                m |= 1 << (perm[i] - 1)
            words.add(m)
        cand = Code(C.n, words)
        if cand == make_T_n(n):
            return n, cand
    return None


def _apply_family(rep: BoundReport, C: Code, permute: bool) -> None:
    # tangled sunflowers
    tn = None
    if C.n % 2 == 0 and C == make_T_n(C.n // 2):
        tn = C.n // 2
    elif permute:
        hit = _relabel_T(C)
        if hit:
            tn = hit[0]
    if tn is not None and tn >= 2:
        lo, hi, ex = t_n_bounds(tn)
        rep.family = f"T_{tn}"
        rep.odim_lower = max(rep.odim_lower, lo)
        rep.odim_upper = hi if rep.odim_upper is None else min(rep.odim_upper, hi)
        if ex is not None:
            rep.exact_odim = ex
            rep.note(f"odim = {ex}", "tangled-sunflower-table")
        else:
            rep.note(f"odim >= {lo}", "tangled-sunflower-half-lower")
            rep.note(f"odim <= {hi}", "tangled-sunflower-step-upper")
        return

    candidates = [C]
    if permute:
        candidates += [_swap_last(C, i) for i in range(C.n - 1)]
    for X in candidates:
        split = _split_apex(X)
        if split is None:
            continue
        Cb, Db = split
        n = Cb.n
        facets = maximal_codewords(Db)
        m = len(facets)
        top = full_mask(n)
        if top not in Db.words and Cb.words == Db.words | {top} and is_simplicial_complex(Db):
            # S_Delta for a proper complex Delta with m facets
            rep.family = f"S_Delta(m={m})"
            if m >= 2:
                rep.exact_odim = m
                rep.odim_lower = max(rep.odim_lower, m)
                rep.note(f"odim = {m}", "S_Delta-facet-count")
                if all(popcount(f) == 1 for f in facets) and m == n:
                    rep.family = f"S_{n}"
                    rep.note(f"odim = {n}", "sunflower-code-S_n")
            return
        singles = all((1 << i) in Cb.words for i in range(n))
        if singles and Db.words == minimal_nonempty(Cb) | {0}:
            k = max((popcount(w) for w in Cb.words if w != full_mask(n)), default=1)
            k = max(k, 1)
            lo = _ceil_div(n, k)
            rep.family = "S_C/min"
            rep.odim_lower = max(rep.odim_lower, lo)
            rep.note(f"odim >= ceil({n}/{k}) = {lo}", "S_C/min-flexible-sunflower")
            return
        if m >= 2:
            k = compute_k(Cb, Db)
            lo = _ceil_div(m, k)
            rep.family = "S_C/D"
            rep.odim_lower = max(rep.odim_lower, lo)
            rep.odim_upper = m if rep.odim_upper is None else min(rep.odim_upper, m)
            rep.note(f"{m} >= odim >= ceil({m}/{k}) = {lo}", "S_C/D-morphism-to-S_E/min")
            return


def bound_report(C: Code, permute: bool = False) -> BoundReport:
    """Collect every applicable bound on odim and cdim of C.

    Bounds that need intersection completeness are suppressed for other
    codes.  ``permute`` lets family recognition try relabelings.
    """
    maxi = maximal_codewords(C)
    ic = is_intersection_complete(C)
    rep = BoundReport(C.n, len(maxi), C.dim, ic)
    trivial = C.words == {0}
    rep.cdim_lower = rep.odim_lower = 0 if trivial else 1
    if trivial:
        rep.odim_upper = rep.cdim_upper = rep.exact_odim = 0
        rep.note("odim = cdim = 0", "only-empty-codeword")
        return rep
    if not ic:
        rep.note("no upper bound: not intersection complete", "general-code")
        return rep
    m = len(maxi) - 1
    rep.odim_upper = max(2, m)
    rep.note(f"odim <= max(2, {m})", "intersection-complete-max-codewords")
    cd = rep.odim_upper
    rep.note("cdim <= odim", "closed-le-open")
    d = C.dim
    if C.n >= 2:
        geo = min(2 * d + 1, C.n - 1)
        rep.note(f"cdim <= min(2*{d}+1, {C.n}-1) = {geo}", "cyclic-polytope-construction")
        cd = min(cd, geo)
    rep.cdim_upper = cd
    _apply_family(rep, C, permute)
    if is_simplicial_complex(C):
        rep.note("odim = cdim", "simplicial-complex")
        rep.odim_upper = min(rep.odim_upper, rep.cdim_upper)
        rep.cdim_lower = max(rep.cdim_lower, rep.odim_lower)
    if rep.exact_odim is None and rep.odim_upper == rep.odim_lower:
        rep.exact_odim = rep.odim_lower
    return rep
