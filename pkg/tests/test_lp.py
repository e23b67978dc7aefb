import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncode.geometry.linalg import nullspace, primitive, rank, rref, solve
from ncode.geometry.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible, maximize, maximize_free

scipy_optimize = pytest.importorskip("scipy.optimize")


def scipy_max(c, A, b, free):
    bounds = [(None, None) if f else (0, None) for f in free]
    res = scipy_optimize.linprog([-float(v) for v in c], A_ub=[[float(v) for v in r] for r in A],
                                 b_ub=[float(v) for v in b], bounds=bounds, method="highs")
    return res


def random_lp(rng, nvar, nrows, box=True):
    A = [[rng.randint(-5, 5) for _ in range(nvar)] for _ in range(nrows)]
    b = [rng.randint(-6, 10) for _ in range(nrows)]
    if box:
        for j in range(nvar):
            e = [0] * nvar
            e[j] = 1
            A.append(e)
            b.append(10)
            A.append([-v for v in e])
            b.append(10)
    c = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nvar)]
    return c, A, b


def test_textbook_problem():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.status == OPTIMAL
    assert res.x == (2, 6) and res.value == 36


def test_infeasible_and_unbounded():
    assert maximize([1], [[1], [-1]], [1, -2]).status == INFEASIBLE
    assert maximize([1], [[-1]], [0]).status == UNBOUNDED
    assert maximize([1, 1], [[1, -1]], [0], free=[True, True]).status == UNBOUNDED


def test_equality_constraints_and_free_variables():
    res = maximize([1, 0], A_eq=[[1, 1]], b_eq=[Fraction(1, 3)], A_ub=[[0, -1]], b_ub=[0],
                   free=[True, True])
    assert res.value == Fraction(1, 3)
    assert feasible(A_eq=[[1, 1], [1, 1]], b_eq=[1, 2]).status == INFEASIBLE


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
         [Fraction(1, 2), -90, Fraction(-1, 50), 3],
         [0, 0, 1, 0]]
    res = maximize(c, A, [0, 0, 1])
    assert res.status == OPTIMAL and res.value == Fraction(1, 20)


def test_matches_scipy_on_random_bounded_problems():
    rng = random.Random(7)
    for _ in range(300):
        nvar, nrows = rng.randint(1, 4), rng.randint(1, 6)
        c, A, b = random_lp(rng, nvar, nrows)
        free = [rng.random() < 0.5 for _ in range(nvar)]
        mine = maximize(c, A, b, free=free)
        ref = scipy_max(c, A, b, free)
        if ref.status == 2:
            assert mine.status == INFEASIBLE
        else:
            assert ref.status == 0 and mine.status == OPTIMAL
            assert abs(float(mine.value) + ref.fun) < 1e-7
            for row, bb in zip(A, b):
                assert sum(Fraction(a) * x for a, x in zip(row, mine.x)) <= bb
            assert all(x >= 0 for x, f in zip(mine.x, free) if not f)


def test_dual_route_agrees_with_primal_route():
    rng = random.Random(11)
    for _ in range(300):
        nvar, nrows = rng.randint(1, 4), rng.randint(1, 10)
        c, A, b = random_lp(rng, nvar, nrows, box=rng.random() < 0.7)
        p = maximize(c, A, b, free=[True] * nvar)
        q = maximize_free(c, A, b)
        assert p.status == q.status
        if p.status == OPTIMAL:
            assert p.value == q.value
            assert all(sum(Fraction(a) * x for a, x in zip(r, q.x)) <= bb for r, bb in zip(A, b))


def test_shape_errors():
    with pytest.raises(ValueError):
        maximize([1, 2], [[1]], [1])
    with pytest.raises(ValueError):
        maximize([1], [[1]], [1, 2])


# linear algebra helpers

def test_rref_rank_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    R, piv = rref(rows)
    assert piv == [0, 1] and rank(rows) == 2
    for v in nullspace(rows, 3):
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == 0 for r in rows)
    assert len(nullspace(rows, 3)) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_square_systems(A, b):
    x = solve(A, b)
    if rank(A) < 3:
        assert x is None
    else:
        assert [sum(Fraction(a) * v for a, v in zip(r, x)) for r in A] == b


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(3, 4)]) == (2, 3)
    assert primitive([0, -4, 6]) == (0, -2, 3)
