import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncode import CapExceededError, Code, PreconditionError, parse_code
from ncode.code import is_simplicial_complex
from ncode.geometry import (
    CLOSED,
    OPEN,
    Empty,
    Halfspace,
    HPolytope,
    Realization,
    VPolytope,
    as_hpolytope,
    close_realization,
    code_of_realization,
    h_contains,
    hull_meets,
    hyperplane_count,
    inflate,
    is_bounded,
    lp_feasible,
    point_in_vpolytope,
    rat,
    trim,
    trim_all,
    trim_realization,
    vrep_to_hrep,
)
from ncode.morphisms import restriction

from oracles import (
    box_sweep_code,
    boxes_realization,
    interval_sweep_code,
    intervals_realization,
    random_box,
    random_interval,
)

F = Fraction


def H(a, b, strict=False):
    return Halfspace(tuple(a), b, strict)


def triangle():
    return VPolytope(2, ((0, 0), (2, 0), (1, 2)))


# rationals and types

def test_rat_parsing():
    assert rat("-1/2") == F(-1, 2) and rat(3) == 3 and rat("4") == 4
    for bad in ("x", "1/0", True, None):
        with pytest.raises(PreconditionError):
            rat(bad)


def test_type_invariants():
    with pytest.raises(PreconditionError):
        H((0, 0), 1)
    with pytest.raises(PreconditionError):
        VPolytope(2, ())
    with pytest.raises(PreconditionError):
        HPolytope(1, (H((1,), 0, True), H((-1,), 0, False)), True)
    with pytest.raises(PreconditionError):
        Realization(2, OPEN, (triangle(),))
    with pytest.raises(PreconditionError):
        Realization(2, CLOSED, (Empty(1),))


# LP predicates

def test_lp_feasible_examples():
    assert not lp_feasible([H((1,), 1), H((-1,), -2)], 1)
    assert lp_feasible([H((1,), 1, True), H((-1,), 0, True)], 1)
    assert not lp_feasible([H((1,), 0, True), H((-1,), 0, True)], 1)
    assert lp_feasible([H((1,), 0), H((-1,), 0)], 1)
    with pytest.raises(PreconditionError):
        lp_feasible([H((1, 1), 0)], 1)


def test_point_in_vpolytope_examples():
    T = triangle()
    assert point_in_vpolytope((1, 1), T)
    assert point_in_vpolytope((2, 0), T)
    assert not point_in_vpolytope((3, 3), T)
    assert not point_in_vpolytope((0, 0), Empty(2))


def test_hull_meets_examples():
    square = HPolytope.box((F(-1, 2), F(-1, 2)), (F(1, 2), F(1, 2)), strict=True)
    assert hull_meets([(-1, -1), (1, 1)], square)
    assert not hull_meets([(10, 0), (0, 10)], square)
    assert hull_meets([(0, 0)], square)
    assert not hull_meets([(F(1, 2), 0)], square)
    assert hull_meets([(F(1, 2), 0)], close_realization(Realization(2, OPEN, (square,))).sets[0])
    assert hull_meets([(0, 3), (3, 0)], triangle())
    assert not hull_meets([(0, 3), (-1, 0)], triangle())


# V to H

def test_vrep_to_hrep_examples():
    seg = vrep_to_hrep(VPolytope(2, ((0, 0), (1, 0))))
    assert seg.contains((F(1, 2), 0)) and not seg.contains((F(1, 2), F(1, 100)))
    assert not seg.contains((F(11, 10), 0))
    sq = vrep_to_hrep(VPolytope(2, ((0, 0), (1, 0), (0, 1), (1, 1))))
    assert len(sq.halfspaces) == 4
    simplex = vrep_to_hrep(VPolytope(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0))))
    assert len(set(simplex.halfspaces)) == 4
    assert isinstance(vrep_to_hrep(Empty(2)), Empty)
    with pytest.raises(CapExceededError):
        vrep_to_hrep(VPolytope(5, ((0,) * 5, (1,) * 5)))


def _brute_facets_3d(points):
    """Facet planes of a full-dimensional 3-polytope by checking every triple."""
    planes = set()
    for p, q, r in itertools.combinations(points, 3):
        u = [q[i] - p[i] for i in range(3)]
        v = [r[i] - p[i] for i in range(3)]
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if n == (0, 0, 0):
            continue
        b = sum(n[i] * p[i] for i in range(3))
        side = {(sum(n[i] * x[i] for i in range(3)) > b) - (sum(n[i] * x[i] for i in range(3)) < b)
                for x in points} - {0}
        if len(side) == 1:
            s = 1 if side == {-1} else -1
            g = max(abs(v) for v in n)
            planes.add((tuple(F(s * v, g) for v in n), F(s * b, g)))
    return planes


def test_vrep_to_hrep_matches_brute_force_facets():
    rng = random.Random(3)
    for _ in range(25):
        pts = [tuple(F(rng.randint(-4, 4)) for _ in range(3)) for _ in range(rng.randint(4, 8))]
        brute = _brute_facets_3d(pts)
        if len(brute) < 4:
            continue
        P = vrep_to_hrep(VPolytope(3, pts))
        got = {(tuple(F(v) / max(abs(w) for w in h.a) for v in h.a), h.b / max(abs(w) for w in h.a))
               for h in P.halfspaces}
        assert got == brute


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5),
       st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)), min_size=1, max_size=6))
def test_vrep_to_hrep_membership_agrees(points, probes):
    V = VPolytope(2, points)
    P = vrep_to_hrep(V)
    for x in probes:
        q = (F(x[0], 2), F(x[1], 2))
        assert P.contains(q) == point_in_vpolytope(q, V)


# code of a realization

def test_code_of_intervals_examples():
    R = intervals_realization([(0, 2), (1, 4), (3, 6)], open_=False)
    assert code_of_realization(R) == parse_code("1 12 2 23 3", 3)
    R = intervals_realization([(1, 2), (1, 4), (2, 6)], open_=False)
    assert code_of_realization(R) == interval_sweep_code([(1, 2), (1, 4), (2, 6)], False)
    assert code_of_realization(R) == parse_code("123 12 23 3", 3)


def test_single_open_square():
    R = Realization(2, OPEN, (HPolytope.box((0, 0), (1, 1), strict=True),))
    assert code_of_realization(R) == Code(1, {0, 1})


def test_empty_sets_and_unbounded_sets():
    R = Realization(1, CLOSED, (Empty(1), HPolytope(1, (H((1,), 0),))))
    assert code_of_realization(R) == Code(2, {0, 2})


def test_covering_realization_is_rejected():
    R = Realization(1, CLOSED, (HPolytope(1, (H((1,), 0),)), HPolytope(1, (H((-1,), 0),))))
    with pytest.raises(PreconditionError):
        code_of_realization(R)


def test_hyperplane_cap(monkeypatch):
    boxes = [((i, 0), (i + F(1, 2), 1)) for i in range(7)]
    R = boxes_realization(boxes, open_=True)
    assert hyperplane_count(R.sets) == 16
    monkeypatch.setenv("NCODE_MAX_HYPERPLANES", "8")
    with pytest.raises(CapExceededError):
        code_of_realization(R)
    monkeypatch.setenv("NCODE_MAX_HYPERPLANES", "64")
    assert len(code_of_realization(R)) == 8


def test_interval_realizations_match_sweep():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 5)
        ivs = [random_interval(rng) if rng.random() > 0.1 else None for _ in range(n)]
        open_ = rng.random() < 0.5
        R = intervals_realization(ivs, open_)
        assert code_of_realization(R) == interval_sweep_code(ivs, open_)


def test_box_realizations_match_sweep():
    rng = random.Random(6)
    for _ in range(30):
        boxes = [random_box(rng) for _ in range(rng.randint(1, 4))]
        open_ = rng.random() < 0.5
        assert code_of_realization(boxes_realization(boxes, open_)) == box_sweep_code(boxes, open_)


def test_deleting_a_set_restricts_the_code():
    rng = random.Random(8)
    for _ in range(30):
        boxes = [random_box(rng) for _ in range(rng.randint(2, 4))]
        open_ = rng.random() < 0.5
        C = code_of_realization(boxes_realization(boxes, open_))
        assert 0 in C.words
        i = rng.randrange(len(boxes))
        rest = boxes[:i] + boxes[i + 1:]
        keep = [j + 1 for j in range(len(boxes)) if j != i]
        assert code_of_realization(boxes_realization(rest, open_)) == restriction(C, keep)


# trim, close, inflate

def test_trim_examples():
    assert trim(HPolytope.box((0,), (4,)), 1) == HPolytope.box((1,), (3,))
    assert trim(HPolytope.box((0, 0), (2, 2)), F(1, 2)) == HPolytope.box((F(1, 2),) * 2, (F(3, 2),) * 2)
    half = HPolytope(2, (H((1, 1), 2),))
    assert trim(half, 1).halfspaces[0].b == 0
    assert trim(Empty(2), 1) == Empty(2)
    with pytest.raises(PreconditionError):
        trim(half, 0)


def _random_hpoly(rng, d, strict=False):
    rows = []
    for _ in range(rng.randint(d + 1, d + 3)):
        a = tuple(rng.randint(-3, 3) for _ in range(d))
        if any(a):
            rows.append(H(a, rng.randint(1, 6), strict))
    lo = [rng.randint(-5, -1) for _ in range(d)]
    hi = [rng.randint(1, 5) for _ in range(d)]
    return HPolytope(d, tuple(rows) + HPolytope.box(lo, hi, strict).halfspaces, strict)


def test_trim_commutes_with_intersection_and_is_monotone():
    rng = random.Random(9)
    for _ in range(40):
        d = rng.randint(1, 3)
        U, V = _random_hpoly(rng, d), _random_hpoly(rng, d)
        eps = F(rng.randint(1, 4), rng.randint(2, 6))
        UV = HPolytope(d, U.halfspaces + V.halfspaces)
        lhs, rhs = trim(UV, eps), HPolytope(d, trim(U, eps).halfspaces + trim(V, eps).halfspaces)
        assert h_contains(lhs, rhs) and h_contains(rhs, lhs)
        assert h_contains(U, trim(U, eps))
        assert h_contains(trim(U, eps), trim(UV, eps))


def test_close_realization():
    R = intervals_realization([(0, 2), (1, 3)], open_=True)
    C = close_realization(R)
    assert C.topology == CLOSED and code_of_realization(C) == code_of_realization(R)
    assert close_realization(C) is C
    # open boxes sharing a face: disjoint, but their closures meet
    R = boxes_realization([((0, 0), (1, 1)), ((1, 0), (2, 1))], open_=True)
    assert code_of_realization(R) == parse_code("1 2", 2)
    assert code_of_realization(close_realization(R)) == parse_code("12 1 2", 2)


def test_trim_realization_preserves_code_and_halving():
    R = intervals_realization([(0, 4), (2, 6), (5, 8)], open_=True)
    T, eps = trim_realization(R)
    C = code_of_realization(R)
    assert code_of_realization(T) == C
    assert code_of_realization(close_realization(T)) == C
    assert code_of_realization(trim_all(R, eps / 2)) == C


def test_trim_realization_rejects_non_ic():
    # U_1 is covered by U_2 and U_3, so 1 alone is never a codeword
    R = boxes_realization([((0, 0), (4, 4)), ((0, 0), (3, 4)), ((1, 0), (4, 4))], open_=True)
    assert code_of_realization(R) == parse_code("123 12 13", 3)
    with pytest.raises(PreconditionError, match="intersection complete"):
        trim_realization(R)


def test_trim_realization_needs_open_input():
    with pytest.raises(PreconditionError):
        trim_realization(intervals_realization([(0, 1)], open_=False))


def test_inflate_examples():
    R = intervals_realization([(0, 1), (2, 3)], open_=False)
    O = inflate(R)
    assert O.topology == OPEN and code_of_realization(O) == parse_code("1 2", 2)
    nested = boxes_realization([((1, 1), (2, 2)), ((0, 0), (3, 3))], open_=False)
    # {12, 2, ∅} is not a simplicial complex, so it is refused
    with pytest.raises(PreconditionError):
        inflate(nested)


def test_inflate_rebuilds_planar_complex():
    boxes = [((0, 0), (4, 4)), ((2, 0), (6, 4)), ((1, 2), (5, 6)), ((8, 0), (9, 1))]
    R = boxes_realization(boxes, open_=False)
    C = code_of_realization(R)
    assert is_simplicial_complex(C)
    assert code_of_realization(inflate(R)) == C


def test_inflate_handles_touching_sets():
    # closed segments touching at a point: the code has 12, inflation must keep it
    R = intervals_realization([(0, 1), (1, 2)], open_=False)
    assert code_of_realization(inflate(R)) == parse_code("12 1 2", 2)


def test_inflate_preconditions():
    with pytest.raises(PreconditionError, match="simplicial complex"):
        inflate(intervals_realization([(0, 4), (1, 2)], open_=False))
    with pytest.raises(PreconditionError, match="unbounded"):
        inflate(Realization(1, CLOSED, (HPolytope(1, (H((1,), 0),)),)))
    with pytest.raises(PreconditionError):
        inflate(intervals_realization([(0, 1)], open_=True))


def test_is_bounded_and_as_hpolytope():
    assert is_bounded(HPolytope.box((0,), (1,)))
    assert not is_bounded(HPolytope(2, (H((1, 0), 0),)))
    assert isinstance(as_hpolytope(triangle()), HPolytope)
