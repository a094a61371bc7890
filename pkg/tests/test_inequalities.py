import logging
import random
from fractions import Fraction
from math import factorial

import pytest

from conftest import cross_polytope, cube, segment, triangle
from diffbody.constructions import diagonal_section_and_projection, product_hull
from diffbody.errors import EngineInconsistency, IndexOutOfRange, LambdaOutOfRange
from diffbody.geometry import convex_hull
from diffbody.inequalities import (POTENTIAL_COUNTEREXAMPLE, InequalityReport, aefo_check,
                                   dim45_reduction_check, gen_rs_check, gen_rs_slope_at_zero,
                                   godbersen_report, lambda_grid, polar_hull_check,
                                   rogers_shephard_check, settle, theorem_sum_check,
                                   unbalanced_rs_check, unbalanced_rs_rhs, verify_body)
from diffbody.mixed import difference_body, self_mixed_volumes
from diffbody.rational import binom
from diffbody.search import random_polytope, standard_simplex

F = Fraction
GRID = lambda_grid(12)


def test_report_fields():
    r = InequalityReport("x", 2, {"lambda": F(1, 3), "j": 1}, F(1, 2), F(2, 3))
    assert r.gap == F(1, 6) and r.satisfied
    assert r.csv_row() == {"name": "x", "n": 2, "lambda": "1/3", "j": 1, "lhs": "1/2",
                           "rhs": "2/3", "gap": "1/6", "satisfied": "true"}


def test_proven_violation_aborts_with_dump():
    bad = InequalityReport("theorem_sum", 2, {}, F(2), F(1))
    with pytest.raises(EngineInconsistency) as info:
        settle(bad, cube(2))
    assert info.value.dump["body"]["dim"] == 2


def test_conjectural_violation_is_logged(caplog):
    bad = InequalityReport("unbalanced_rs", 6, {}, F(2), F(1), conjectural=True)
    with caplog.at_level(logging.WARNING):
        assert settle(bad) is bad
    assert POTENTIAL_COUNTEREXAMPLE in caplog.text


# godbersen

@pytest.mark.parametrize("n", range(2, 6))
def test_godbersen_simplex(n):
    rep = godbersen_report(standard_simplex(n))
    assert all(r == 1 for r in rep.ratios)
    assert rep.mean_ratio == rep.max_ratio == rep.median_ratio == 1


@pytest.mark.parametrize("n", range(2, 5))
def test_godbersen_cube(n):
    rep = godbersen_report(cube(n))
    assert rep.ratios == tuple(F(1, binom(n, j)) for j in range(n + 1))
    assert rep.max_ratio == 1
    assert rep.mean_ratio <= 1


def test_godbersen_triangle():
    rep = godbersen_report(triangle())
    assert rep.ratios == (1, 1, 1) and rep.mean_ratio == 1


# theorem on the sum

@pytest.mark.parametrize("n", range(2, 6))
def test_theorem_sum_simplex_equality(n):
    for lam in GRID:
        assert theorem_sum_check(standard_simplex(n), lam).gap == 0


def test_theorem_sum_examples():
    r = theorem_sum_check(cube(2), F(1, 2))
    assert (r.lhs, r.rhs, r.gap) == (F(3, 4), 1, F(1, 4))
    k = random_polytope(3, 7, 1)
    r = theorem_sum_check(k, 0)
    assert r.lhs == k.volume and r.gap == 0


# generalized Rogers-Shephard

def test_gen_rs_simplex_chu_vandermonde():
    assert gen_rs_check(standard_simplex(3), F(2, 5)).gap == 0
    for n in (2, 3, 4):
        for lam in GRID:
            assert gen_rs_check(standard_simplex(n), lam).gap == 0


@pytest.mark.parametrize("k", [cube(2), cross_polytope(3), random_polytope(3, 8, 2),
                               random_polytope(2, 6, 3)], ids=repr)
def test_gen_rs_endpoints(k):
    n = k.dim
    assert gen_rs_check(k, 0).gap == 0
    r = gen_rs_check(k, 1)
    assert r.lhs == F(factorial(n) ** 2, factorial(2 * n)) * difference_body(k).volume
    assert all(gen_rs_check(k, lam).satisfied for lam in GRID)


@pytest.mark.parametrize("k", [cube(3), triangle(), standard_simplex(3), random_polytope(3, 7, 9)],
                         ids=repr)
def test_gen_rs_slope_and_j1_bound(k):
    assert gen_rs_slope_at_zero(k) <= 0
    mv = self_mixed_volumes(k)
    assert mv.values[1] <= k.dim * k.volume
    # corollary average
    assert sum(v / binom(mv.n, j) for j, v in enumerate(mv.values)) / (mv.n + 1) <= k.volume


# Rogers-Shephard, unbalanced RS, aefo

def test_rogers_shephard_examples():
    assert rogers_shephard_check(standard_simplex(3)).gap == 0
    r = rogers_shephard_check(cube(3))
    assert (r.lhs, r.rhs, r.gap) == (8, 20, 12)
    r = rogers_shephard_check(triangle())
    assert (r.lhs, r.rhs, r.gap) == (3, 3, 0)


def test_unbalanced_rs_examples():
    for lam in GRID:
        assert unbalanced_rs_check(standard_simplex(3), lam).gap == 0
    r = unbalanced_rs_check(cube(2), F(1, 2))
    assert (r.lhs, r.rhs, r.gap) == (1, F(3, 2), F(1, 2))
    r = unbalanced_rs_check(random_polytope(3, 7, 4), 0)
    assert (r.lhs, r.rhs) == (1, 1)
    assert unbalanced_rs_rhs(4, F(1, 2)) == F(35, 8)


def test_unbalanced_rs_direct_matches_bernstein():
    k = random_polytope(3, 7, 12)
    for lam in (F(1, 4), F(1, 2), F(5, 6)):
        assert unbalanced_rs_check(k, lam).lhs == unbalanced_rs_check(k, lam, direct=True).lhs


def test_aefo_examples():
    r = aefo_check(standard_simplex(2), 1, F(1, 2))
    assert (r.lhs, r.rhs) == (F(1, 4), F(1, 2))
    for lam in (0, 1):
        assert aefo_check(random_polytope(3, 6, 1), 1, lam).lhs == 0
    r = aefo_check(cube(4), 2, F(1, 2))
    assert (r.lhs, r.rhs) == (F(1, 16), 1)
    with pytest.raises(IndexOutOfRange):
        aefo_check(cube(2), 3, F(1, 2))
    with pytest.raises(LambdaOutOfRange):
        aefo_check(cube(2), 1, F(-1, 2))


# polar hull

def test_polar_hull_examples():
    sq = cube(2, -1, 1)
    r = polar_hull_check(sq, sq)
    assert (r.lhs, r.rhs, r.gap) == (4, 16, 12)
    r = polar_hull_check(segment(-1, 1), segment(-1, 1))
    assert (r.lhs, r.rhs, r.gap) == (2, 4, 2)


def test_polar_hull_anchor():
    # hand computation: (K° + L°)° has vertices (±1/2,0), (0,±1/2), (±1/3,±1/3), area 2/3;
    # conv(K u -L) is the square, area 4
    sq, cp = cube(2, -1, 1), cross_polytope(2)
    r = polar_hull_check(sq, cp)
    assert (r.lhs, r.rhs, r.gap) == (F(8, 3), 8, F(16, 3))
    sl = diagonal_section_and_projection(product_hull(sq, cp), sq, cp)
    assert sl.section.value * sl.projection.value == r.lhs
    assert sl.section.sqrt2_power + sl.projection.sqrt2_power == 0


def test_polar_hull_random_pairs():
    rng = random.Random(0)
    for _ in range(10):
        pts = lambda: [(F(rng.randint(1, 9), 4) * a, F(rng.randint(1, 9), 4) * b)
                       for a, b in ((1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1))]
        k, l = convex_hull(pts()), convex_hull(pts())
        r = polar_hull_check(k, l)
        assert r.satisfied
        assert product_hull(k, l).volume == k.volume * l.volume / 6


# dimension 4 and 5 reduction

def test_dim45_examples():
    assert dim45_reduction_check(F(1, 2), 5, 5, 10).gap == 0
    r = dim45_reduction_check(F(1, 3), 5, 5, 10)
    assert r.identity_ok and r.combined_ok
    lam = F(1, 3)
    alpha = lam ** 4 * (1 - lam) + lam * (1 - lam) ** 4
    beta = lam ** 2 * (1 - lam) ** 3 + lam ** 3 * (1 - lam) ** 2
    assert alpha - beta == F(2, 81)
    assert dim45_reduction_check(F(1, 2), 4, 4, 6).identity_ok


@pytest.mark.parametrize("n", [4, 5])
def test_dim45_on_bodies(n):
    for k in (standard_simplex(n), cube(n) if n == 4 else cross_polytope(n)):
        v = self_mixed_volumes(k).normalized()
        for lam in GRID[1:-1]:
            r = dim45_reduction_check(lam, n, v[1], v[2])
            assert r.identity_ok and r.combined_ok and r.gap >= 0


def test_dim45_rejects_other_dimensions():
    with pytest.raises(IndexOutOfRange):
        dim45_reduction_check(F(1, 3), 3, 3, 3)


# full sweep

@pytest.mark.parametrize("k", [cube(2), triangle(), random_polytope(3, 7, 6)], ids=repr)
def test_verify_body_all_satisfied(k):
    reports = verify_body(k, 6)
    assert reports and all(r.satisfied for r in reports)
