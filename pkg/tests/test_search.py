import json
import logging
from fractions import Fraction

import pytest

from conftest import cube
from diffbody.errors import DegenerateInput, EngineInconsistency, IndexOutOfRange, LambdaOutOfRange
from diffbody.geometry import affine_map
from diffbody.inequalities import POTENTIAL_COUNTEREXAMPLE
from diffbody.search import (COORD_DENOM, SNAP_DENOM, Objective, SearchConfig, evaluate_objective,
                             hill_climb, multi_start, perturbed_simplex_points, random_polytope,
                             standard_simplex)
import diffbody.search as search

F = Fraction
OBJECTIVES = ["unbalanced_rs_ratio(1/2)", "unbalanced_rs_ratio(1/3)", "rs_ratio",
              "godbersen_ratio(1)", "godbersen_ratio(2)"]


def test_random_polytope_contract():
    t = random_polytope(2, 3, 7)
    assert len(t.vertices) == 3
    s = random_polytope(3, 4, 11)
    assert len(s.vertices) == 4
    assert random_polytope(3, 9, 5).vertices == random_polytope(3, 9, 5).vertices
    assert random_polytope(3, 9, 5).vertices != random_polytope(3, 9, 6).vertices
    for v in random_polytope(4, 10, 1).vertices:
        assert all(abs(c) <= 1 and (c * COORD_DENOM).denominator == 1 for c in v)
    with pytest.raises(ValueError):
        random_polytope(3, 3, 0)


def test_objective_parse():
    assert Objective.parse("unbalanced_rs_ratio(1/3)") == Objective("unbalanced_rs_ratio", F(1, 3))
    assert str(Objective.parse("godbersen_ratio( 2 )")) == "godbersen_ratio(2)"
    assert Objective.parse("rs_ratio").has_ceiling_theorem
    for bad in ("volume", "godbersen_ratio", "unbalanced_rs_ratio(2)"):
        with pytest.raises((ValueError, LambdaOutOfRange)):
            Objective.parse(bad)


def test_objective_examples():
    assert evaluate_objective(standard_simplex(4), "unbalanced_rs_ratio(1/2)") == F(35, 8)
    assert evaluate_objective(standard_simplex(3), "rs_ratio") == 1
    for j in range(4):
        assert evaluate_objective(cube(3), f"godbersen_ratio({j})") == F(1, [1, 3, 3, 1][j])
    with pytest.raises(IndexOutOfRange):
        evaluate_objective(cube(2), "godbersen_ratio(3)")


@pytest.mark.parametrize("obj", OBJECTIVES)
def test_objective_invariance(obj):
    k = random_polytope(3, 7, 21)
    base = evaluate_objective(k, obj)
    for s in (F(1, 2), F(3)):
        for neg in (False, True):
            img = affine_map(k, s, neg, (F(2, 7), F(-1, 3), 5))
            assert evaluate_objective(img, obj) == base


def test_climb_from_simplex_is_stuck():
    cfg = SearchConfig(n=4, m=5, objective=Objective.parse("unbalanced_rs_ratio(1/2)"),
                       iterations=40, seed=3)
    res = hill_climb(cfg, standard_simplex(4))
    assert res.best_value == F(35, 8)
    assert res.accepted == 0


def test_climb_from_cube_rs_ratio():
    cfg = SearchConfig(n=3, m=8, objective=Objective.parse("rs_ratio"), iterations=60, seed=1)
    res = hill_climb(cfg, cube(3))
    values = [v for _, v in res.trace]
    assert values[0] == F(2, 5)
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert res.best_value > F(2, 5) and res.best_value <= 1
    assert res.accepted > 0


def test_zero_iterations():
    k = random_polytope(3, 6, 2)
    cfg = SearchConfig(n=3, m=6, objective=Objective.parse("rs_ratio"), iterations=0)
    res = hill_climb(cfg, k)
    assert res.best == k and res.best_value == evaluate_objective(k, "rs_ratio")
    assert res.trace == [(0, res.best_value)]


def test_climb_deterministic_and_snapped():
    pts = perturbed_simplex_points(3, seed=4)
    cfg = SearchConfig(n=3, m=len(pts), objective=Objective.parse("unbalanced_rs_ratio(1/2)"),
                       iterations=30, seed=4)
    a, b = hill_climb(cfg, pts), hill_climb(cfg, pts)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    for p in pts + a.best_points:
        assert all((c * SNAP_DENOM).denominator == 1 for c in p)


def test_perturbed_simplex_is_not_a_simplex():
    for n in (3, 4, 5):
        body = search.convex_hull(perturbed_simplex_points(n, seed=0))
        assert body.dim == n and len(body.vertices) == n + 2


def test_multi_start_tie_break_by_seed():
    cfg = SearchConfig(n=3, m=4, objective=Objective.parse("rs_ratio"), iterations=5)
    start = standard_simplex(3)
    best, results = multi_start(cfg, [start] * 3, [9, 4, 7])
    assert [r.config.seed for r in results] == [9, 4, 7]
    assert best.config.seed == 4 and best.best_value == 1


def test_config_validation():
    obj = Objective.parse("rs_ratio")
    with pytest.raises(ValueError):
        SearchConfig(n=3, m=3, objective=obj)
    with pytest.raises(ValueError):
        SearchConfig(n=3, m=5, objective=obj, step_initial=F(0))
    with pytest.raises(DegenerateInput):
        hill_climb(SearchConfig(n=3, m=4, objective=obj), cube(2))


def test_ceiling_breach_handling(monkeypatch, tmp_path, caplog):
    # pretend the simplex value is tiny so that any accepted move breaches it
    monkeypatch.setattr(Objective, "simplex_value", lambda self, n: F(0))
    obj = Objective.parse("rs_ratio")
    start = perturbed_simplex_points(3, seed=1)
    with pytest.raises(EngineInconsistency):
        hill_climb(SearchConfig(n=3, m=len(start), objective=obj, iterations=20, seed=1), start)
    monkeypatch.setattr(search, "CEILING_MAX_DIM", 2)
    cfg = SearchConfig(n=3, m=len(start), objective=obj, iterations=20, seed=1, dump_dir=str(tmp_path))
    with caplog.at_level(logging.WARNING):
        res = hill_climb(cfg, start)
    assert res.potential_counterexamples == res.accepted > 0
    assert POTENTIAL_COUNTEREXAMPLE in caplog.text
    assert len(list(tmp_path.iterdir())) == res.potential_counterexamples
