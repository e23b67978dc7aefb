"""Closed convex realizations of intersection complete codes from polytopes.

Route: a neighborly cyclic polytope Q in R^{m+1} with n+1 vertices, its
polar dual Q*, and the Schlegel diagram of Q* based at the facet dual to
vertex n+1.  The images P_1..P_n of the other facets form a polytopal
complex in R^m in which any d+1 cells meet in a single face P_sigma.
A relative interior point p_sigma is chosen in each face, and
V_i = conv{p_c | c a codeword containing i}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .code import (
    Code,
    completion_membership,
    format_word,
    full_mask,
    intersection_completion,
    is_intersection_complete,
    members,
)
from .errors import CapExceededError, PreconditionError
from .geometry.atoms import code_of_realization, hyperplane_count
from .geometry.convex import point_in_vpolytope, vrep_to_hrep
from .geometry.linalg import rank, solve
from .geometry.types import CLOSED, Empty, Realization, VPolytope

MAX_CYCLIC_DIM = 8
MAX_CYCLIC_VERTICES = 12
MAX_DEEP_DIM = 3
MAX_COMBINATORIAL_N = 20


def moment_curve(D: int, N: int) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(t ** k) for k in range(1, D + 1)) for t in range(1, N + 1)]


def gale_evenness(S: Sequence[int], N: int) -> bool:
    """Every pair of non-members is separated by an even number of members."""
    inside = set(S)
    outside = [i for i in range(1, N + 1) if i not in inside]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for s in inside if a < s < b) % 2:
            return False
    return True


def cyclic_facets(D: int, N: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic polytope C(D, N) as sorted 1-indexed vertex tuples."""
    if not 2 <= D <= MAX_CYCLIC_DIM:
        raise CapExceededError(f"cyclic polytopes are supported for 2 <= D <= {MAX_CYCLIC_DIM}")
    if N > MAX_CYCLIC_VERTICES:
        raise CapExceededError(f"cyclic polytopes are supported for N <= {MAX_CYCLIC_VERTICES}")
    if N < D + 1:
        raise PreconditionError("a cyclic polytope needs at least D+1 vertices")
    return [S for S in combinations(range(1, N + 1), D) if gale_evenness(S, N)]


def centroid(points: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    k = len(points)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*points))


def polar_dual(points: Sequence[Sequence], facets: Sequence[Sequence[int]]) -> list[tuple]:
    """Vertices of the polar of conv(points) about its vertex centroid.

    ``facets`` lists 0-indexed vertex indices of each simplicial facet; the
    dual vertex of a facet is the unique a with a.(v - c) = 1 on it.
    """
    pts = [tuple(Fraction(v) for v in p) for p in points]
    c = centroid(pts)
    shifted = [tuple(x - y for x, y in zip(p, c)) for p in pts]
    D = len(c)
    out = []
    for F in facets:
        rows = [shifted[j] for j in F]
        if len(rows) != D:
            raise PreconditionError("polar_dual expects simplicial facets")
        a = solve(rows, [1] * D)
        if a is None:
            raise AssertionError("singular facet system")
        out.append(tuple(a))
    return out


@dataclass
class Schlegel:
    viewpoint: tuple
    dropped: int             # coordinate removed after projecting into the base hyperplane
    images: list             # projected point for every input point, in R^{D-1}


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def schlegel(vertices: Sequence[Sequence], ineqs: Sequence[tuple], base: int) -> Schlegel:
    """Schlegel projection of a polytope given by vertices and facet inequalities.

    ``ineqs`` are (normal, level) pairs with the polytope = {y | normal.y <= level};
    ``base`` indexes the base facet.  Every vertex is centrally projected
    from the viewpoint onto the base hyperplane, then one coordinate with
    nonzero normal component is dropped.
    """
    verts = [tuple(Fraction(v) for v in p) for p in vertices]
    h, g_level = ineqs[base]
    h = tuple(Fraction(v) for v in h)
    on_base = [p for p in verts if _dot(h, p) == g_level]
    if not on_base:
        raise AssertionError("base facet has no vertices")
    g = centroid(on_base)
    lam = Fraction(1)
    for _ in range(200):
        x = tuple(gi + lam * hi for gi, hi in zip(g, h))
        if all(_dot(a, x) < b for j, (a, b) in enumerate(ineqs) if j != base):
            break
        lam /= 2
    else:
        raise AssertionError("no valid Schlegel viewpoint found")
    hx = _dot(h, x)
    k = next(i for i, v in enumerate(h) if v != 0)
    images = []
    for y in verts:
        t = (g_level - hx) / (_dot(h, y) - hx)
        z = tuple(xi + t * (yi - xi) for xi, yi in zip(x, y))
        images.append(z[:k] + z[k + 1:])
    return Schlegel(x, k, images)


@dataclass
class RealizationPlan:
    code: Code
    m: int
    route: str                         # "simplex", "cyclic" or "trivial"
    facets: list                       # facets of the neighborly polytope (masks over [n+1])
    dual_vertices: dict                # facet mask -> point in R^{m+1} (cyclic route)
    images: dict                       # facet mask -> Schlegel image in R^m
    points: dict                       # codeword mask -> p_c in R^m
    sets: list                         # V_1..V_n
    warning: Optional[str] = None

    @property
    def n(self) -> int:
        return self.code.n

    def face_point(self, sigma: int) -> tuple:
        """Vertex barycenter of the face P_sigma."""
        verts = [p for T, p in self.images.items() if T & sigma == sigma]
        if not verts:
            raise PreconditionError(f"{members(sigma)} does not index a face")
        return centroid(verts)

    def cell(self, i: int) -> VPolytope:
        """The maximal cell P_i (1-indexed)."""
        bit = 1 << (i - 1)
        return VPolytope(self.m, tuple(p for T, p in self.images.items() if T & bit))

    def realization(self) -> Realization:
        return Realization(self.m, CLOSED, tuple(self.sets))


def _simplex_images(n: int) -> dict:
    """Schlegel images for the simplex route: base simplex plus its barycenter."""
    N = n + 1
    m = n - 1
    allmask = full_mask(N)
    images = {}
    for j in range(1, n):
        e = [Fraction(0)] * m
        e[j - 1] = Fraction(1)
        images[allmask & ~(1 << (j - 1))] = tuple(e)
    images[allmask & ~(1 << (n - 1))] = tuple([Fraction(0)] * m)
    images[allmask & ~(1 << (N - 1))] = tuple([Fraction(1, n)] * m)
    return images


def _cyclic_images(n: int, m: int) -> tuple[list, dict, dict]:
    D, N = m + 1, n + 1
    verts = moment_curve(D, N)
    facets = cyclic_facets(D, N)
    dual = polar_dual(verts, [[j - 1 for j in F] for F in facets])
    c = centroid(verts)
    masks = [sum(1 << (j - 1) for j in F) for F in facets]
    # Q* = {y | y.(v_j - c) <= 1}; facet j of Q* holds the duals of facets containing j
    ineqs = [(tuple(v - ci for v, ci in zip(verts[j], c)), Fraction(1)) for j in range(N)]
    sch = schlegel(dual, ineqs, N - 1)
    dual_by_mask = dict(zip(masks, dual))
    images = dict(zip(masks, sch.images))
    return masks, dual_by_mask, images


def realize_closed(C: Code, complete: bool = False) -> tuple[Realization, RealizationPlan]:
    """Closed realization of an intersection complete code in R^min(2d+1, n-1).

    With ``complete=True`` a non-IC code is replaced by its intersection
    completion (the plan carries a warning); otherwise it is rejected.
    """
    warning = None
    if not is_intersection_complete(C):
        if not complete:
            raise PreconditionError(
                "code is not intersection complete; the construction would realize "
                "its intersection completion instead")
        C = intersection_completion(C)
        warning = "input was not intersection complete; realized its intersection completion"
    n = C.n
    if n < 2:
        raise PreconditionError("the construction needs n >= 2")
    if C.words == {0}:
        sets = [Empty(1) for _ in range(n)]
        plan = RealizationPlan(C, 1, "trivial", [], {}, {}, {}, sets, warning)
        return plan.realization(), plan
    d = C.dim
    m = min(2 * d + 1, n - 1)
    if m == n - 1:
        route = "simplex"
        images = _simplex_images(n)
        facets = sorted(images)
        dual = {}
    else:
        route = "cyclic"
        facets, dual, images = _cyclic_images(n, m)
    points = {}
    for c in C.words:
        if c:
            verts = [p for T, p in images.items() if T & c == c]
            if not verts:
                raise AssertionError(f"codeword {members(c)} is not a face of the complex")
            points[c] = centroid(verts)
    sets = []
    for i in range(n):
        bit = 1 << i
        pts = [points[c] for c in sorted(points) if c & bit]
        sets.append(VPolytope(m, tuple(pts)) if pts else Empty(m))
    plan = RealizationPlan(C, m, route, facets, dual, images, points, sets, warning)
    return plan.realization(), plan


@dataclass
class VerifyReport:
    layers: dict = field(default_factory=dict)   # name -> "pass" | "fail" | "skipped"
    failed_layer: Optional[str] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failed_layer is None

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, layer: str, detail: str) -> "VerifyReport":
        self.layers[layer] = "fail"
        self.failed_layer = layer
        self.detail = detail
        return self

    def as_dict(self) -> dict:
        return {"ok": self.ok, "layers": dict(self.layers),
                "failed_layer": self.failed_layer, "detail": self.detail}


def _fmt(c: int, n: int) -> str:
    return format_word(c, n)


def verify_plan(C: Code, plan: RealizationPlan, deep: bool = False) -> VerifyReport:
    """Check a plan against C in up to three layers.

    (a) combinatorial: every intersection of codewords of C is itself a
        codeword, decided by the trunk criterion;
    (b) witness: p_c lies in V_i exactly when i is in c;
    (c) deep (optional, m <= 3, within the hyperplane cap): the code of the
        realization, computed from facet descriptions, equals C.
    """
    rep = VerifyReport()
    if C.n != len(plan.sets):
        return rep.fail("a", f"code has n = {C.n} but the plan has {len(plan.sets)} sets")
    if C.n > MAX_COMBINATORIAL_N:
        raise CapExceededError(f"combinatorial layer is limited to n <= {MAX_COMBINATORIAL_N}")
    for sigma in sorted(intersection_completion(C).words):
        if completion_membership(C, sigma) != (sigma in C.words):
            return rep.fail("a", f"{_fmt(sigma, C.n)} is an intersection of codewords but not a codeword")
    rep.layers["a"] = "pass"

    for c in sorted(C.words):
        if not c:
            continue
        p = plan.points.get(c)
        if p is None:
            return rep.fail("b", f"no witness point for codeword {_fmt(c, C.n)}")
        for i, V in enumerate(plan.sets):
            inside = point_in_vpolytope(p, V)
            if inside != bool(c >> i & 1):
                word = "outside" if inside is False else "inside"
                return rep.fail("b", f"witness of {_fmt(c, C.n)} is {word} V_{i + 1}")
    rep.layers["b"] = "pass"

    if not deep:
        rep.layers["c"] = "skipped"
        return rep
    if plan.m > MAX_DEEP_DIM:
        rep.layers["c"] = "skipped"
        rep.detail = f"deep check needs m <= {MAX_DEEP_DIM}"
        return rep
    R = Realization(plan.m, CLOSED, tuple(vrep_to_hrep(V) for V in plan.sets))
    try:
        got = code_of_realization(R)
    except CapExceededError as exc:
        rep.layers["c"] = "skipped"
        rep.detail = str(exc)
        return rep
    if got != C:
        return rep.fail("c", f"realization has code {got}, expected {C}")
    rep.layers["c"] = "pass"
    return rep


def deep_check_size(plan: RealizationPlan) -> int:
    """Distinct hyperplanes the deep layer would need."""
    return hyperplane_count([vrep_to_hrep(V) for V in plan.sets])


def affine_dim(V) -> int:
    if isinstance(V, Empty):
        return -1
    p0 = V.points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in V.points[1:]]) if len(V.points) > 1 else 0
