"""Flexible sunflowers of open convex sets and Tverberg partitions."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .code import Code, full_mask, popcount
from .errors import PreconditionError
from .geometry.atoms import code_of_realization
from .geometry.convex import hull_meets, solve_strict
from .geometry.types import OPEN, Halfspace, HPolytope, Realization, point

HALF = Fraction(1, 2)
DEFAULT_LENGTH = 10
CERTIFY_CAP = 64
MAX_TVERBERG_POINTS = 12


@dataclass
class SunflowerSpec:
    d: int
    k: int
    petals: tuple
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.petals)

    @property
    def center(self) -> HPolytope:
        hs = tuple(h for P in self.petals for h in P.halfspaces)
        return HPolytope(self.d, hs, True)

    def realization(self) -> Realization:
        return Realization(self.d, OPEN, self.petals)


def is_k_flexible(C: Code) -> Optional[int]:
    """Smallest k making C a k-flexible sunflower code, or None if [n] is missing."""
    top = full_mask(C.n)
    if top not in C.words:
        return None
    return max((popcount(w) for w in C.words if w != top), default=0)


def _unit(d: int, i: int, scale=1) -> list:
    e = [0] * d
    e[i] = scale
    return e


def sheared_petal(d: int, axis: int, sign: int, length, shear_axis: int | None = None,
                  shear=Fraction(0)) -> HPolytope:
    """Open cube (-1/2, 1/2)^d swept along [0, length*v], v = sign*e_axis - shear*e_shear_axis."""
    L = Fraction(length)
    s = Fraction(shear)
    hs = []
    for o in range(d):
        if o == axis or (s and o == shear_axis):
            continue
        hs.append(Halfspace(_unit(d, o), HALF, True))
        hs.append(Halfspace(_unit(d, o, -1), HALF, True))
    # along the sweep axis
    if sign > 0:
        hs.append(Halfspace(_unit(d, axis), L + HALF, True))
        hs.append(Halfspace(_unit(d, axis, -1), HALF, True))
    else:
        hs.append(Halfspace(_unit(d, axis), HALF, True))
        hs.append(Halfspace(_unit(d, axis, -1), L + HALF, True))
    if s:
        l = shear_axis
        hs.append(Halfspace(_unit(d, l), HALF, True))
        hs.append(Halfspace(_unit(d, l, -1), HALF + s * L, True))
        # edges parallel to the sweep direction: |s*x_axis*sign + x_l| < (1+s)/2
        a = [0] * d
        a[axis] = s * sign
        a[l] = 1
        hs.append(Halfspace(a, (1 + s) / 2, True))
        hs.append(Halfspace([-v for v in a], (1 + s) / 2, True))
    return HPolytope(d, tuple(hs), True)


def build_counterexample(d: int, k: int = 1, skew: bool = False, length=DEFAULT_LENGTH,
                         delta=None) -> tuple[SunflowerSpec, list]:
    """A k-flexible sunflower of n = d*k petals in R^d whose petal tips miss the center.

    Petal (i, j) sweeps the open unit cube along [0, M v], with
    v = e_i - j*delta*e_{i+1 mod d} when ``skew`` (j = 0..k-1) and
    v = e_i otherwise; the chosen point is the tip M v.
    """
    if d < 2:
        raise PreconditionError("no counterexample exists in dimension 1 (needs d >= 2)")
    if k < 1:
        raise PreconditionError("k must be at least 1")
    M = Fraction(length)
    delta = Fraction(1, 4 * k) if delta is None else Fraction(delta)
    petals, points = [], []
    for i in range(d):
        l = (i + 1) % d
        for j in range(k):
            s = j * delta if skew else Fraction(0)
            petals.append(sheared_petal(d, i, 1, M, l, s))
            tip = [Fraction(0)] * d
            tip[i] = M
            tip[l] -= s * M
            points.append(tuple(tip))
    spec = SunflowerSpec(d, k, tuple(petals), {"skew": skew, "length": str(M), "delta": str(delta)})
    return spec, points


@dataclass
class Certificate:
    flexible_k: Optional[int]
    hull_misses_center: bool
    code_checked: bool

    @property
    def ok(self) -> bool:
        return self.hull_misses_center and self.flexible_k is not None


def certify(spec: SunflowerSpec, points: Sequence, k: int | None = None,
            cap: int = CERTIFY_CAP) -> Certificate:
    """Exact check that the petals form a k-flexible sunflower whose points miss the center."""
    k = spec.k if k is None else k
    C = code_of_realization(spec.realization(), cap=cap)
    fk = is_k_flexible(C)
    flexible = fk if fk is not None and fk <= k else None
    miss = not hull_meets(points, spec.center)
    return Certificate(flexible, miss, True)


def weight_k_census(spec: SunflowerSpec, k: int | None = None, cap: int = CERTIFY_CAP) -> int:
    """Number of weight-k codewords of the petal code."""
    k = spec.k if k is None else k
    C = code_of_realization(spec.realization(), cap=cap)
    return sum(1 for w in C.words if popcount(w) == k and w != full_mask(C.n))


def _random_rational(rng: random.Random, lo: int, hi: int, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_affine(d: int, rng: random.Random):
    """Random invertible rational matrix (entries in [-3, 3], denominators <= 4) and shift."""
    from .geometry.linalg import rank
    while True:
        A = [[_random_rational(rng, -3, 3, 4) for _ in range(d)] for _ in range(d)]
        if rank(A) == d:
            break
    t = [_random_rational(rng, -3, 3, 4) for _ in range(d)]
    return A, t


def _inverse_transpose(A):
    from .geometry.linalg import solve
    d = len(A)
    At = [[A[j][i] for j in range(d)] for i in range(d)]
    cols = [solve(At, [Fraction(int(i == j)) for i in range(d)]) for j in range(d)]
    # column j of (A^T)^-1
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _map_polytope(P: HPolytope, Ainvt, t) -> HPolytope:
    hs = []
    for h in P.halfspaces:
        a = [sum((Ainvt[i][j] * h.a[j] for j in range(P.d)), Fraction(0)) for i in range(P.d)]
        b = h.b + sum((ai * ti for ai, ti in zip(a, t)), Fraction(0))
        hs.append(Halfspace(a, b, h.strict))
    return HPolytope(P.d, tuple(hs), P.open_flag)


def _map_point(p, A, t):
    d = len(p)
    return tuple(sum((A[i][j] * p[j] for j in range(d)), Fraction(0)) + t[i] for i in range(d))


def random_sunflower(d: int, k: int, n: int, rng: random.Random,
                     max_den: int = 8) -> tuple[SunflowerSpec, list]:
    """Random k-flexible sunflower with one sampled point per petal.

    Petals sweep the unit cube along one of the 2d signed axis directions,
    at most k per direction, with random lengths in 5..20; a random
    rational affine map is applied to everything.  Points are drawn on a
    grid of the given denominator inside each petal before mapping.
    """
    if n > 2 * d * k:
        raise PreconditionError(f"at most {2 * d * k} petals fit {k} per signed direction in R^{d}")
    capacity = {(i, s): k for i in range(d) for s in (1, -1)}
    petals, pts, faces = [], [], []
    for _ in range(n):
        open_faces = sorted(f for f, c in capacity.items() if c > 0)
        face = rng.choice(open_faces)
        capacity[face] -= 1
        i, s = face
        M = rng.randint(5, 20)
        petals.append(sheared_petal(d, i, s, M))
        p = []
        for o in range(d):
            if o == i:
                lo, hi = (-HALF, M + HALF) if s > 0 else (-M - HALF, HALF)
            else:
                lo, hi = -HALF, HALF
            # grid points strictly inside (lo, hi)
            a = int(lo * max_den) + 1
            b = int(hi * max_den) - (1 if (hi * max_den).denominator == 1 else 0)
            p.append(Fraction(rng.randint(a, b), max_den))
        pts.append(tuple(p))
        faces.append(face)
    A, t = random_affine(d, rng)
    Ainvt = _inverse_transpose(A)
    petals = [_map_polytope(P, Ainvt, t) for P in petals]
    pts = [_map_point(p, A, t) for p in pts]
    meta = {"faces": [[i + 1, s] for i, s in faces], "flexibility": "by construction"}
    return SunflowerSpec(d, k, tuple(petals), meta), pts


def flexible_trial(d: int, k: int, n: int, seed: int, verify_code: bool = False) -> bool:
    """Does the hull of one point per petal of a random k-flexible sunflower meet the center?"""
    rng = random.Random(seed)
    spec, pts = random_sunflower(d, k, n, rng)
    if verify_code:
        fk = is_k_flexible(code_of_realization(spec.realization(), cap=CERTIFY_CAP))
        if fk is None or fk > k:
            raise AssertionError("generated arrangement is not a k-flexible sunflower")
    return hull_meets(pts, spec.center)


def center_hit(spec: SunflowerSpec, points: Sequence) -> bool:
    return hull_meets(points, spec.center)


def run_trials(d: int, k: int, n: int, trials: int, seed: int = 0, threads: int = 1,
               verify_code: bool = False) -> list[bool]:
    seeds = [seed + i for i in range(trials)]
    if threads <= 1:
        return [flexible_trial(d, k, n, s, verify_code) for s in seeds]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(flexible_trial, [d] * trials, [k] * trials, [n] * trials, seeds,
                           [verify_code] * trials, chunksize=max(1, trials // (4 * threads))))


def set_partitions(n: int, r: int) -> Iterator[list[list[int]]]:
    """Partitions of range(n) into exactly r nonempty blocks (restricted growth strings)."""
    labels = [0] * n

    def rec(i: int, used: int):
        if n - i < r - used:
            return
        if i == n:
            if used == r:
                blocks = [[] for _ in range(r)]
                for idx, b in enumerate(labels):
                    blocks[b].append(idx)
                yield blocks
            return
        for b in range(min(used + 1, r)):
            labels[i] = b
            yield from rec(i + 1, max(used, b + 1))

    if n == 0:
        return
    yield from rec(0, 0)


def common_point(points: Sequence, blocks: Sequence[Sequence[int]]) -> tuple | None:
    """A point in the intersection of the hulls of the blocks, or None."""
    pts = [point(p) for p in points]
    d = len(pts[0])
    N = len(pts)
    # variables: lambda_0..lambda_{N-1} (>= 0), x (free)
    eq = []
    for B in blocks:
        for c in range(d):
            row = [0] * (N + d)
            for i in B:
                row[i] = pts[i][c]
            row[N + c] = -1
            eq.append((row, 0))
        row = [0] * (N + d)
        for i in B:
            row[i] = 1
        eq.append((row, 1))
    sol = solve_strict([], N + d, [False] * N + [True] * d, eq)
    return None if sol is None else tuple(sol[N:])


def tverberg_partition(points: Sequence, r: int) -> Optional[list[list[int]]]:
    """First partition (in restricted-growth order) into r parts with intersecting hulls."""
    if len(points) > MAX_TVERBERG_POINTS:
        raise PreconditionError(f"brute force is limited to {MAX_TVERBERG_POINTS} points")
    if r < 1 or r > len(points):
        raise PreconditionError("need 1 <= r <= number of points")
    for blocks in set_partitions(len(points), r):
        if common_point(points, blocks) is not None:
            return blocks
    return None
