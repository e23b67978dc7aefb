"""Atoms of a realization and the code they carry."""
from __future__ import annotations

import os
from typing import Sequence

from ..code import Code
from ..errors import CapExceededError, PreconditionError
from .convex import as_hpolytope, solve_strict
from .linalg import primitive
from .types import Empty, HPolytope, Realization

DEFAULT_MAX_HYPERPLANES = 24


def max_hyperplanes() -> int:
    env = os.environ.get("NCODE_MAX_HYPERPLANES")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PreconditionError(f"NCODE_MAX_HYPERPLANES must be an integer, got {env!r}")
    return DEFAULT_MAX_HYPERPLANES


def hyperplane_count(sets: Sequence) -> int:
    """Number of distinct (unoriented) hyperplanes bounding the sets."""
    seen = set()
    for S in sets:
        if isinstance(S, HPolytope):
            for h in S.halfspaces:
                key = primitive(list(h.a) + [h.b])
                neg = tuple(-v for v in key)
                seen.add(max(key, neg))
    return len(seen)


def _h_sets(R: Realization) -> list:
    return [as_hpolytope(S) for S in R.sets]


def atom_witnesses(R: Realization, cap: int | None = None) -> dict[int, tuple]:
    """Map each codeword mask with a nonempty atom to a point of that atom.

    Depth-first over neurons.  A running feasible point decides most
    branches for free; the "outside U_j" branch splits over which facet is
    violated, and the splits are made disjoint (violate facet t, satisfy
    facets before t) to avoid revisiting the same region.
    """
    sets = _h_sets(R)
    cap = max_hyperplanes() if cap is None else cap
    count = hyperplane_count(sets)
    if count > cap:
        raise CapExceededError(
            f"realization has {count} distinct hyperplanes, over the cap of {cap} "
            "(set NCODE_MAX_HYPERPLANES to override)")
    d = R.d
    closed = not R.is_open
    n = len(sets)

    def inside(h):
        key = primitive(list(h.a) + [h.b])
        return (key[:-1], key[-1], not closed)

    def outside(h):
        # negation of the membership inequality
        key = primitive(list(h.a) + [h.b])
        return (tuple(-v for v in key[:-1]), -key[-1], closed)

    def holds(row, x):
        a, b, strict = row
        v = sum(ai * xi for ai, xi in zip(a, x))
        return v < b if strict else v <= b

    found: dict[int, tuple] = {}

    def lp(rows):
        return solve_strict(rows, d)

    def rec(j: int, mask: int, rows: list, x: tuple):
        if j == n:
            found.setdefault(mask, x)
            return
        S = sets[j]
        if isinstance(S, Empty):
            rec(j + 1, mask, rows, x)
            return
        hs = S.halfspaces
        if not hs:
            rec(j + 1, mask | (1 << j), rows, x)
            return
        in_rows = [inside(h) for h in hs]
        x_in = all(holds(r, x) for r in in_rows)
        # branch: j in the codeword
        new = rows + in_rows
        y = x if x_in else lp(new)
        if y is not None:
            rec(j + 1, mask | (1 << j), new, y)
        # branch: j outside, split by first violated facet
        for t, h in enumerate(hs):
            new = rows + in_rows[:t] + [outside(h)]
            y = x if (not x_in and all(holds(r, x) for r in new[len(rows):])) else lp(new)
            if y is not None:
                rec(j + 1, mask, new, y)

    start = tuple([0] * d)
    rec(0, 0, [], start)
    return found


def code_of_realization(R: Realization, cap: int | None = None) -> Code:
    """The code {sigma | atom sigma nonempty}; requires an uncovered point."""
    found = atom_witnesses(R, cap)
    if 0 not in found:
        raise PreconditionError("the sets cover all of R^d, so the empty codeword has no atom")
    return Code(len(R.sets), found.keys())
