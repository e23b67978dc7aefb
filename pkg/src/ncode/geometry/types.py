"""Exact geometric primitives: rationals, halfspaces, polytopes, realizations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ..errors import PreconditionError

Rational = Fraction
Point = tuple  # tuple[Fraction, ...]

OPEN = "open"
CLOSED = "closed"


def rat(value) -> Fraction:
    """Parse an int, Fraction or a string like ``"3"``, ``"-1/2"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        # floats are accepted only when they are exact binary values
        return Fraction(value)
    raise PreconditionError(f"not a rational: {value!r}")


def rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def point(coords: Iterable) -> Point:
    return tuple(rat(c) for c in coords)


@dataclass(frozen=True)
class Halfspace:
    """The set {x | a.x <= b}, or {x | a.x < b} when ``strict``."""

    a: tuple
    b: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", point(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if all(v == 0 for v in self.a):
            raise PreconditionError("halfspace normal must be nonzero")

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def norm1(self) -> Fraction:
        return sum((abs(v) for v in self.a), Fraction(0))

    def value(self, x: Sequence) -> Fraction:
        return sum((ai * xi for ai, xi in zip(self.a, x)), Fraction(0))

    def contains(self, x: Sequence) -> bool:
        v = self.value(x)
        return v < self.b if self.strict else v <= self.b

    def with_strict(self, strict: bool) -> "Halfspace":
        return Halfspace(self.a, self.b, strict)


@dataclass(frozen=True)
class HPolytope:
    """Intersection of halfspaces in R^d; all strict (open) or all closed.

    With no halfspaces it is the whole space, which is both open and
    closed; ``is_open`` then follows the ``open_flag`` hint.
    """

    d: int
    halfspaces: tuple = ()
    open_flag: bool = False

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        object.__setattr__(self, "halfspaces", hs)
        if self.d < 1:
            raise PreconditionError("dimension must be at least 1")
        for h in hs:
            if h.d != self.d:
                raise PreconditionError(
                    f"halfspace of dimension {h.d} in a polytope of dimension {self.d}")
        if hs:
            flags = {h.strict for h in hs}
            if len(flags) > 1:
                raise PreconditionError("mixed strict and non-strict halfspaces")
            object.__setattr__(self, "open_flag", flags.pop())

    @property
    def is_open(self) -> bool:
        return self.open_flag

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    @classmethod
    def from_rows(cls, rows, strict: bool = False, d: int | None = None) -> "HPolytope":
        """Build from ``[(a, b), ...]`` pairs."""
        hs = [Halfspace(a, b, strict) for a, b in rows]
        if d is None:
            if not hs:
                raise PreconditionError("dimension needed for a polytope without halfspaces")
            d = hs[0].d
        return cls(d, tuple(hs), strict)

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence, strict: bool = False) -> "HPolytope":
        d = len(lo)
        rows = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            rows.append((tuple(e), rat(hi[i])))
            e = [0] * d
            e[i] = -1
            rows.append((tuple(e), -rat(lo[i])))
        return cls.from_rows(rows, strict, d)


@dataclass(frozen=True)
class VPolytope:
    """Closed convex hull of finitely many points."""

    d: int
    points: tuple = ()

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise PreconditionError("a V-polytope needs at least one point; use Empty")
        for p in pts:
            if len(p) != self.d:
                raise PreconditionError(f"point {p} does not have dimension {self.d}")


@dataclass(frozen=True)
class Empty:
    d: int

    def contains(self, x) -> bool:
        return False


ConvexSet = Union[HPolytope, VPolytope, Empty]


@dataclass(frozen=True)
class Realization:
    """Sets U_1..U_n in R^d, all open or all closed."""

    d: int
    topology: str
    sets: tuple = field(default_factory=tuple)

    def __post_init__(self):
        sets = tuple(self.sets)
        object.__setattr__(self, "sets", sets)
        if self.topology not in (OPEN, CLOSED):
            raise PreconditionError(f"topology must be 'open' or 'closed', got {self.topology!r}")
        for i, s in enumerate(sets, start=1):
            if s.d != self.d:
                raise PreconditionError(f"set {i} has dimension {s.d}, expected {self.d}")
            if isinstance(s, VPolytope) and self.topology == OPEN:
                raise PreconditionError(f"set {i} is a closed V-polytope in an open realization")
            if isinstance(s, HPolytope) and s.halfspaces and s.is_open != (self.topology == OPEN):
                raise PreconditionError(f"set {i} strictness disagrees with topology {self.topology}")

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def is_open(self) -> bool:
        return self.topology == OPEN
