"""End-to-end acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line with its wall time; the lines
are printed in the terminal summary so they show up under output capture.
"""
import functools
import itertools
import random
import time
from fractions import Fraction

import pytest

from ncode import PreconditionError, SimplicialComplex, parse_code
from ncode.bounds import binomial_extremal, bound_report, t_n_bounds
from ncode.code import full_mask, is_intersection_complete, is_simplicial_complex, maximal_codewords
from ncode.families import make_S_Delta, make_S_n, make_T_n
from ncode.geometry import (
    close_realization,
    code_of_realization,
    inflate,
    max_hyperplanes,
    trim_realization,
)
from ncode.morphisms import apply_morphism, restriction, sdelta_to_sm
from ncode.realize import affine_dim, deep_check_size, realize_closed, verify_plan
from ncode.sunflower import build_counterexample, certify, flexible_trial, tverberg_partition

from oracles import (
    ACCEPTANCE_LINES,
    box_sweep_code,
    boxes_realization,
    interval_sweep_code,
    intervals_realization,
    random_box,
    random_complex_facets,
    random_ic_code,
    random_interval,
)


def _report(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


def criterion(num, title, budget):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                dt = time.perf_counter() - t0
                _report(f"[FAIL] criterion {num:>2}: {title} ({dt:.2f}s): {exc!r}")
                raise
            dt = time.perf_counter() - t0
            ok = dt <= budget
            tag = "PASS" if ok else "FAIL"
            _report(f"[{tag}] criterion {num:>2}: {title} ({dt:.2f}s, budget {budget}s)")
            assert ok, f"took {dt:.1f}s, budget {budget}s"
        return run
    return wrap


@criterion(1, "family listings S_1..S_3, T_1..T_4", 1)
def test_family_listings():
    S = {1: "12 1 2", 2: "12 13 23 1 2 3", 3: "123 14 24 34 1 2 3 4"}
    T = {1: "12 1 2", 2: "13 24 12 34 1 2 3 4", 3: "135 246 12 34 56 1 2 3 4 5 6",
         4: "1357 2468 12 34 56 78 1 2 3 4 5 6 7 8"}
    for n, text in S.items():
        assert make_S_n(n) == parse_code(text, n + 1)
    for n, text in T.items():
        assert make_T_n(n) == parse_code(text, 2 * n)


@criterion(2, "S_Delta is IC with m+1 maximal codewords (500 complexes)", 10)
def test_s_delta_maximal_count():
    rng = random.Random(2)
    done = 0
    while done < 500:
        n = rng.randint(1, 6)
        D = SimplicialComplex.from_facets(n, random_complex_facets(rng, n, 6))
        if full_mask(n) in D.words:
            continue
        S = make_S_Delta(D)
        assert is_intersection_complete(S)
        assert len(maximal_codewords(S)) == len(D.facets) + 1
        done += 1


@criterion(3, "realize_closed + verify_plan on 200 IC codes", 300)
def test_realization_pipeline():
    rng = random.Random(3)
    deep_runs = 0
    for _ in range(200):
        n = rng.randint(2, 6)
        C = random_ic_code(rng, n)
        R, plan = realize_closed(C)
        assert plan.m == min(2 * C.dim + 1, n - 1) and R.d == plan.m
        rep = verify_plan(C, plan)
        assert rep.layers["a"] == "pass" and rep.layers["b"] == "pass", rep.detail
        if plan.m <= 3 and deep_check_size(plan) <= max_hyperplanes():
            rep = verify_plan(C, plan, deep=True)
            assert rep.layers["c"] == "pass", rep.detail
            deep_runs += 1
    assert deep_runs > 100


@criterion(4, "example code {123,12,1,2,3}: m=2, V_1,V_2 triangles, V_3 a segment", 1)
def test_example_realization():
    C = parse_code("123 12 1 2 3", 3)
    R, plan = realize_closed(C)
    assert plan.m == 2
    assert affine_dim(R.sets[0]) == affine_dim(R.sets[1]) == 2
    assert len(R.sets[0].points) >= 3 and len(R.sets[1].points) >= 3
    assert affine_dim(R.sets[2]) == 1 and len(set(R.sets[2].points)) == 2
    assert verify_plan(C, plan, deep=True).ok


def _random_boxes(rng, n, d):
    if d == 1:
        return [(tuple([a]), tuple([b])) for a, b in (random_interval(rng) for _ in range(n))]
    return [random_box(rng) for _ in range(n)]


@criterion(5, "inflate (complexes) and trim->close (IC) keep the code; non-IC rejected", 60)
def test_open_closed_pipelines():
    rng = random.Random(5)
    done = 0
    while done < 100:
        d = rng.randint(1, 2)
        R = boxes_realization(_random_boxes(rng, rng.randint(2, 4), d), open_=False)
        C = code_of_realization(R)
        if not is_simplicial_complex(C):
            continue
        assert code_of_realization(inflate(R)) == C
        done += 1
    done = 0
    while done < 100:
        d = rng.randint(1, 2)
        R = boxes_realization(_random_boxes(rng, rng.randint(2, 4), d), open_=True)
        C = code_of_realization(R)
        if not is_intersection_complete(C):
            continue
        T, eps = trim_realization(R)
        assert eps > 0
        assert code_of_realization(close_realization(T)) == C
        done += 1
    R = boxes_realization([((0, 0), (4, 4)), ((0, 0), (3, 4)), ((1, 0), (4, 4))], open_=True)
    assert code_of_realization(R) == parse_code("123 12 13", 3)
    with pytest.raises(PreconditionError):
        trim_realization(R)


@criterion(6, "center hit for 3x1000 random flexible sunflowers; counterexamples certified", 300)
def test_flexible_sunflowers():
    for d, k, n in [(2, 1, 3), (2, 2, 5), (3, 1, 4)]:
        misses = [s for s in range(1000) if not flexible_trial(d, k, n, s)]
        assert not misses, f"(d,k,n)=({d},{k},{n}) missed at seeds {misses[:5]}"
    for d, k in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        spec, pts = build_counterexample(d, k)
        cert = certify(spec, pts)
        assert cert.ok and cert.flexible_k <= k and cert.hull_misses_center


def _random_points(rng, count):
    return [(Fraction(rng.randint(-40, 40), rng.randint(1, 6)),
             Fraction(rng.randint(-40, 40), rng.randint(1, 6))) for _ in range(count)]


@criterion(7, "Tverberg r=3 on 200 7-point sets, Radon on 200 4-point sets", 120)
def test_tverberg():
    rng = random.Random(7)
    for _ in range(200):
        assert tverberg_partition(_random_points(rng, 7), 3) is not None
    for _ in range(200):
        assert tverberg_partition(_random_points(rng, 4), 2) is not None


@criterion(8, "t_n table 1,2,3,3,4 and t_6 in [4,5]", 1)
def test_t_n_table():
    assert [t_n_bounds(n)[2] for n in range(1, 6)] == [1, 2, 3, 3, 4]
    assert all(t_n_bounds(n)[0] == t_n_bounds(n)[1] for n in range(1, 6))
    assert t_n_bounds(6) == (4, 5, None)


@criterion(9, "S_Delta -> S_m surjection (100 complexes); T_{n+1} restricts to T_n", 10)
def test_morphisms():
    rng = random.Random(9)
    done = 0
    while done < 100:
        n = rng.randint(2, 6)
        D = SimplicialComplex.from_facets(n, random_complex_facets(rng, n, 6))
        m = len(D.facets)
        if not 2 <= m <= 5 or full_mask(n) in D.words:
            continue
        assert apply_morphism(sdelta_to_sm(D)) == make_S_n(m)
        done += 1
    for n in range(1, 6):
        assert restriction(make_T_n(n + 1), range(1, 2 * n + 1)) == make_T_n(n)


@criterion(10, "code_of_realization = sweep oracle (200 interval, 100 box realizations)", 60)
def test_oracle_equivalence():
    rng = random.Random(10)
    for _ in range(200):
        ivs = [random_interval(rng) for _ in range(rng.randint(1, 5))]
        open_ = rng.random() < 0.5
        assert code_of_realization(intervals_realization(ivs, open_)) == interval_sweep_code(ivs, open_)
    for _ in range(100):
        boxes = [random_box(rng) for _ in range(rng.randint(1, 4))]
        open_ = rng.random() < 0.5
        assert code_of_realization(boxes_realization(boxes, open_)) == box_sweep_code(boxes, open_)


@criterion(11, "binomial counts 2,6,70 and exact odim = m with cdim_upper <= n", 5)
def test_binomial_gap():
    assert [binomial_extremal(n) for n in (3, 5, 9)] == [2, 6, 70]
    for n in (3, 5, 9):
        v = n - 1
        facets = [sum(1 << i for i in c) for c in itertools.combinations(range(v), v // 2)]
        S = make_S_Delta(SimplicialComplex.from_facets(v, facets))
        assert S.n == n
        rep = bound_report(S)
        assert rep.exact_odim == binomial_extremal(n)
        assert rep.cdim_upper <= n
    assert rep.cdim_upper < rep.exact_odim
