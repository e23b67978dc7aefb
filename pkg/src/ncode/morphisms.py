"""Trunk-determined morphisms between codes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Mapping

from .code import (
    Code,
    full_mask,
    is_simplicial_complex,
    maximal_codewords,
    members,
    to_mask,
    trunk,
)
from .errors import PreconditionError
from .families import make_S_Delta


def trunk_apex(S: Iterable[int]) -> int:
    """Intersection of all codewords in S (the largest sigma S could be the trunk of)."""
    it = iter(S)
    try:
        acc = next(it)
    except StopIteration:
        return 0
    for c in it:
        acc &= c
    return acc


def is_trunk(C: Code, S: Iterable) -> bool:
    S = frozenset(to_mask(c) for c in S)
    if not S:
        return True
    if not S <= C.words:
        return False
    return trunk(C, trunk_apex(S)) == S


@dataclass(frozen=True)
class TrunkMorphism:
    """The morphism c -> {i | c in T_i} for trunks T_1..T_m of ``source``."""

    source: Code
    trunks: tuple

    def __post_init__(self):
        ts = tuple(frozenset(to_mask(c) for c in T) for T in self.trunks)
        object.__setattr__(self, "trunks", ts)

    @property
    def m(self) -> int:
        return len(self.trunks)

    def validate(self) -> None:
        for i, T in enumerate(self.trunks, start=1):
            if not is_trunk(self.source, T):
                raise PreconditionError(f"T_{i} is not a trunk of the source code")

    def __call__(self, c: int) -> int:
        out = 0
        for i, T in enumerate(self.trunks):
            if c in T:
                out |= 1 << i
        return out

    @classmethod
    def from_sigmas(cls, source: Code, sigmas) -> "TrunkMorphism":
        """Trunks Tk(sigma) for each sigma; ``None`` stands for the empty trunk."""
        ts = [frozenset() if s is None else trunk(source, s) for s in sigmas]
        return cls(source, tuple(ts))


def apply_morphism(f: TrunkMorphism) -> Code:
    f.validate()
    return Code(f.m, {f(c) for c in f.source.words} | {0})


def is_morphism_map(C: Code, D: Code, f: Mapping[int, int] | Callable[[int], int]) -> bool:
    """Whether preimages of all trunks of D are trunks of C.

    General trunks are intersections of simple ones and trunks are closed
    under intersection, so the simple trunks Tk_D(i) are enough.
    """
    get = f.__getitem__ if isinstance(f, Mapping) else f
    image = {c: to_mask(get(c)) for c in C.words}
    for c, v in image.items():
        if v not in D.words:
            raise PreconditionError(f"{members(c)} maps outside the target code")
    for i in range(D.n):
        pre = {c for c, v in image.items() if v >> i & 1}
        if not is_trunk(C, pre):
            return False
    return True


def restriction(C: Code, sigma) -> Code:
    """Image of c -> c & sigma, relabeled onto 1..|sigma| in order."""
    s = to_mask(sigma)
    if s & ~full_mask(C.n):
        raise PreconditionError(f"{members(s)} is not a subset of [1..{C.n}]")
    keep = members(s)
    f = TrunkMorphism.from_sigmas(C, [[i] for i in keep])
    return apply_morphism(f)


def sdelta_to_sm(delta: Code) -> TrunkMorphism:
    """Surjection from S_Delta onto S_m, m = number of facets of delta."""
    if not is_simplicial_complex(delta):
        raise PreconditionError("sdelta_to_sm needs a simplicial complex")
    if full_mask(delta.n) in delta.words:
        raise PreconditionError("the complex must be a proper subcomplex of the full simplex")
    S = make_S_Delta(delta)
    facets = sorted(maximal_codewords(delta), key=lambda w: (bin(w).count("1"), w))
    return TrunkMorphism.from_sigmas(S, facets + [1 << delta.n])


def scd_to_semin(C: Code, D: Code) -> tuple[Code, TrunkMorphism]:
    """E and the surjection S_{C/D} -> S_{E/min}."""
    from .families import make_S_C_over_D

    S = make_S_C_over_D(C, D)
    facets = sorted(maximal_codewords(D), key=lambda w: (bin(w).count("1"), w))
    m = len(facets)
    if m < 2:
        raise PreconditionError("D needs at least 2 maximal codewords")
    on_c = TrunkMorphism.from_sigmas(C, facets)
    E = apply_morphism(on_c)
    f = TrunkMorphism.from_sigmas(S, facets + [1 << C.n])
    return E, f


def normalize_unique_minimal(C: Code) -> Code:
    """Delete the neurons of the unique minimal nonempty codeword, if there is one.

    Codewords not containing them are kept; the remaining neurons are
    relabeled in order.
    """
    if 0 in C.words or not C.words:
        return C
    meet = trunk_apex(C.words)
    if not meet or meet not in C.words:
        return C
    keep = full_mask(C.n) & ~meet
    return restriction(C, keep) if keep else Code(0, {0})


def _all_trunks(C: Code) -> list[frozenset]:
    seen = {frozenset()}
    for sigma in range(1 << C.n):
        seen.add(trunk(C, sigma))
    return sorted(seen, key=lambda T: (len(T), sorted(T)))


def images(C: Code, m: int) -> set[Code]:
    """Every image of C under a trunk list of length m."""
    ts = _all_trunks(C)
    out = set()
    for combo in product(ts, repeat=m):
        f = TrunkMorphism(C, combo)
        out.add(Code(m, {f(c) for c in C.words} | {0}))
    return out


def is_minor(target: Code, source: Code, depth: int = 3, max_n: int = 5) -> bool:
    """Bounded search for a chain of images and trunk restrictions from source to target."""
    if source.n > max_n or target.n > max_n:
        raise PreconditionError(f"minor search is limited to n <= {max_n}")
    frontier = {source}
    seen = {source}
    for _ in range(depth + 1):
        if target in frontier:
            return True
        nxt = set()
        for X in frontier:
            for img in images(X, target.n):
                if img == target:
                    return True
            for T in _all_trunks(X):
                if T and len(T) < len(X.words):
                    Y = normalize_unique_minimal(Code(X.n, T))
                    if Y not in seen:
                        nxt.add(Y)
        seen |= nxt
        frontier = nxt
    return False
