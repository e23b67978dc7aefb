"""Constructors for the named code families: S_n, S_Delta, T_n and S_{C/D}."""
from __future__ import annotations

from .code import (
    Code,
    SimplicialComplex,
    full_mask,
    is_intersection_complete,
    is_simplicial_complex,
    maximal_codewords,
    members,
    popcount,
)
from .errors import PreconditionError


def _singletons(n: int) -> set[int]:
    return {1 << i for i in range(n)}


def make_S_n(n: int) -> Code:
    """Sunflower code on n+1 neurons: [n], all singletons, {i, n+1}, and the empty word."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"S_n needs n >= 1, got {n!r}")
    apex = 1 << n
    words = {full_mask(n), 0} | _singletons(n + 1) | {(1 << i) | apex for i in range(n)}
    return Code(n + 1, words)


def make_S_Delta(delta: Code) -> Code:
    """Cone over ``delta`` with apex n+1, together with the codeword [n]."""
    if not is_simplicial_complex(delta):
        raise PreconditionError("S_Delta needs a simplicial complex")
    n = delta.n
    apex = 1 << n
    words = set(delta.words) | {w | apex for w in delta.words} | {full_mask(n)}
    return Code(n + 1, words)


def sdelta_facet_count(delta: Code) -> int:
    """Number of facets m of ``delta``; the degenerate complex {∅} counts as m = 1."""
    return len(maximal_codewords(delta))


def make_T_n(n: int) -> Code:
    """Tangled sunflower code on 2n neurons."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"T_n needs n >= 1, got {n!r}")
    odd = sum(1 << (2 * k) for k in range(n))
    even = odd << 1
    pairs = {0b11 << (2 * k) for k in range(n)}
    return Code(2 * n, pairs | {odd, even, 0} | _singletons(2 * n))


def make_S_C_over_D(C: Code, D: Code) -> Code:
    """Glue a flexible sunflower on C to a new neuron n+1 along the codewords of D."""
    if D.n != C.n:
        raise PreconditionError(f"C and D must share n (got {C.n} and {D.n})")
    if not D.words <= C.words:
        extra = sorted(members(w) for w in D.words - C.words)
        raise PreconditionError(f"D is not contained in C: {extra} not in C")
    if not is_intersection_complete(C):
        raise PreconditionError("C is not intersection complete")
    if not is_intersection_complete(D):
        raise PreconditionError("D is not intersection complete")
    n = C.n
    apex = 1 << n
    words = set(C.words) | {full_mask(n)} | {d | apex for d in D.words}
    return Code(n + 1, words)


def minimal_nonempty(C: Code) -> set[int]:
    nonempty = sorted((w for w in C.words if w), key=popcount)
    out: list[int] = []
    for w in nonempty:
        if not any(m & w == m for m in out):
            out.append(w)
    return set(out)


def make_S_C_over_min(C: Code) -> Code:
    """S_{C/D} where D holds the minimal nonempty codewords of C (plus ∅)."""
    D = Code(C.n, minimal_nonempty(C) | {0})
    return make_S_C_over_D(C, D)


def singletons_code(n: int) -> Code:
    return Code(n, _singletons(n) | {0})


def complex_from_facets(n: int, facets) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n, facets)
