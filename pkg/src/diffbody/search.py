"""Random polytopes and hill climbing over vertex positions.

Climbs probe whether the simplex maximizes the volume ratios of the
difference-body family. Everything is exact and reproducible per seed.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import DegenerateInput, EngineInconsistency, IndexOutOfRange, RankFailure
from .geometry import Polytope, convex_hull
from .inequalities import (POTENTIAL_COUNTEREXAMPLE, gen_rs_check, lambda_grid,
                           theorem_sum_check, unbalanced_rs_rhs)
from .io import polytope_to_json, dump_polytope
from .mixed import difference_body, self_mixed_volumes, unbalanced_difference_body
from .rational import binom, check_lambda, format_rational, parse_rational
from .rng import Stream

log = logging.getLogger(__name__)

COORD_DENOM = 1024
SNAP_DENOM = 2 ** 16
MAX_DRAWS = 100
MOVE_RETRIES = 10
# values above the simplex for these objectives would contradict a theorem when n <= 5
CEILING_MAX_DIM = 5


def random_points(n: int, m: int, stream: Stream) -> list:
    return [tuple(Fraction(stream.integer(-COORD_DENOM, COORD_DENOM), COORD_DENOM)
                  for _ in range(n)) for _ in range(m)]


def random_polytope(n: int, m: int, seed: int) -> Polytope:
    """Hull of m points with coordinates k/1024, k uniform in [-1024, 1024]."""
    if m < n + 1:
        raise ValueError("need m >= n + 1 points")
    stream = Stream(seed)
    for _ in range(MAX_DRAWS):
        try:
            return convex_hull(random_points(n, m, stream))
        except DegenerateInput:
            continue
    raise RankFailure(f"no full-dimensional draw in {MAX_DRAWS} attempts")


def standard_simplex(n: int) -> Polytope:
    return convex_hull([(Fraction(0),) * n] + [tuple(Fraction(int(i == k)) for k in range(n))
                                               for i in range(n)])


def perturbed_simplex_points(n: int, seed: int, extra: int = 1) -> list:
    """Standard simplex with jittered vertices plus ``extra`` points just outside
    the facet opposite the origin, so the hull is close to but not a simplex."""
    stream = Stream(seed, stream=1)
    jitter = Fraction(1, 16)
    pts = []
    for i in range(n + 1):
        base = [Fraction(0)] * n if i == 0 else [Fraction(int(i - 1 == k)) for k in range(n)]
        pts.append(tuple(c + jitter * Fraction(stream.integer(-COORD_DENOM, COORD_DENOM), COORD_DENOM)
                         for c in base))
    for _ in range(extra):
        weights = [stream.integer(1, COORD_DENOM) for _ in range(n)]
        total = sum(weights)
        push = Fraction(stream.integer(1, COORD_DENOM), 8 * COORD_DENOM)
        centre = [sum(Fraction(w, total) * pts[i + 1][k] for i, w in enumerate(weights))
                  for k in range(n)]
        pts.append(tuple(_snap(c + push) for c in centre))
    return pts


_OBJ_RE = re.compile(r"^(unbalanced_rs_ratio|godbersen_ratio|rs_ratio)(?:\(([^)]*)\))?$")


@dataclass(frozen=True)
class Objective:
    kind: str
    param: object = None

    @classmethod
    def parse(cls, text: str) -> "Objective":
        m = _OBJ_RE.match(text.replace(" ", ""))
        if m is None:
            raise ValueError(f"unknown objective {text!r}")
        kind, arg = m.groups()
        if kind == "unbalanced_rs_ratio":
            return cls(kind, check_lambda(parse_rational(arg or "1/2")))
        if kind == "godbersen_ratio":
            if arg is None:
                raise ValueError("godbersen_ratio needs an index j")
            return cls(kind, int(arg))
        return cls(kind)

    def __str__(self):
        if self.kind == "unbalanced_rs_ratio":
            return f"{self.kind}({format_rational(self.param)})"
        if self.kind == "godbersen_ratio":
            return f"{self.kind}({self.param})"
        return self.kind

    def simplex_value(self, n: int) -> Fraction:
        if self.kind == "unbalanced_rs_ratio":
            return unbalanced_rs_rhs(n, self.param)
        return Fraction(1)

    @property
    def has_ceiling_theorem(self) -> bool:
        return self.kind in ("unbalanced_rs_ratio", "rs_ratio")


def evaluate_objective(k: Polytope, objective) -> Fraction:
    """Scale- and translation-invariant volume ratio of ``k``."""
    if isinstance(objective, str):
        objective = Objective.parse(objective)
    n = k.dim
    if objective.kind == "unbalanced_rs_ratio":
        return unbalanced_difference_body(k, objective.param).volume / k.volume
    if objective.kind == "rs_ratio":
        return difference_body(k).volume / (binom(2 * n, n) * k.volume)
    j = objective.param
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"j={j} outside 0..{n}")
    mv = self_mixed_volumes(k)
    return mv.values[j] / (binom(n, j) * mv.vol)


@dataclass(frozen=True)
class SearchConfig:
    n: int
    m: int
    objective: Objective
    iterations: int = 500
    step_initial: Fraction = Fraction(1, 8)
    step_decay: Fraction = Fraction(199, 200)
    seed: int = 0
    safety_grid: int = 4
    dump_dir: str | None = None

    def __post_init__(self):
        if self.m < self.n + 1:
            raise ValueError("m must be at least n + 1")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")
        if self.step_initial <= 0 or not 0 < self.step_decay <= 1:
            raise ValueError("step schedule must be positive")

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "objective": str(self.objective),
                "iterations": self.iterations,
                "step": [format_rational(self.step_initial), format_rational(self.step_decay)],
                "seed": self.seed}


@dataclass
class ClimbResult:
    config: SearchConfig
    best: Polytope
    best_points: list
    best_value: Fraction
    trace: list = field(default_factory=list)
    accepted: int = 0
    potential_counterexamples: int = 0

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "best_vertices": polytope_to_json(self.best)["vertices"],
            "best_value": format_rational(self.best_value),
            "trace": [[i, format_rational(v)] for i, v in self.trace],
        }


def _snap(q: Fraction) -> Fraction:
    return Fraction(round(q * SNAP_DENOM), SNAP_DENOM)


def _check_rails(k: Polytope, grid: int) -> None:
    for lam in lambda_grid(grid):
        theorem_sum_check(k, lam)
        gen_rs_check(k, lam)


def hill_climb(config: SearchConfig, start) -> ClimbResult:
    """Strict-improvement climb moving one point per iteration.

    ``start`` is a Polytope or a list of points (the moving point set).
    """
    points = list(start.vertices if isinstance(start, Polytope) else start)
    body = convex_hull(points)
    if body.dim != config.n:
        raise DegenerateInput("start body has the wrong dimension")
    n = config.n
    objective = config.objective
    value = evaluate_objective(body, objective)
    ceiling = objective.simplex_value(n) if objective.has_ceiling_theorem else None
    stream = Stream(config.seed, stream=2)
    result = ClimbResult(config, body, list(points), value, [(0, value)])
    step = config.step_initial
    for it in range(1, config.iterations + 1):
        candidate = None
        for _ in range(MOVE_RETRIES):
            i = stream.integer(0, len(points) - 1)
            moved = tuple(_snap(c + step * Fraction(stream.integer(-COORD_DENOM, COORD_DENOM), COORD_DENOM))
                          for c in points[i])
            trial = points[:i] + [moved] + points[i + 1:]
            try:
                candidate = (trial, convex_hull(trial))
                break
            except DegenerateInput:
                continue
        if candidate is None:
            log.warning("RankFailure at iteration %d; shrinking step", it)
            step /= 2
            result.trace.append((it, value))
            continue
        trial, trial_body = candidate
        trial_value = evaluate_objective(trial_body, objective)
        if trial_value > value:
            _check_rails(trial_body, config.safety_grid)
            if ceiling is not None and trial_value > ceiling:
                _report_ceiling(config, trial_body, trial_value, ceiling, result)
            points, body, value = trial, trial_body, trial_value
            result.accepted += 1
            result.best, result.best_points, result.best_value = body, list(points), value
        result.trace.append((it, value))
        step = _snap(step * config.step_decay) or Fraction(1, SNAP_DENOM)
    return result


def _report_ceiling(config, body, value, ceiling, result):
    dump = {"config": config.to_json(), "body": polytope_to_json(body),
            "value": format_rational(value), "simplex_value": format_rational(ceiling)}
    if config.n <= CEILING_MAX_DIM:
        raise EngineInconsistency("climb exceeded the simplex value in a proven dimension", dump)
    log.warning("%s %s", POTENTIAL_COUNTEREXAMPLE, dump)
    result.potential_counterexamples += 1
    if config.dump_dir:
        path = Path(config.dump_dir) / f"counterexample-seed{config.seed}-{result.potential_counterexamples}.json"
        path.write_text(dump_polytope(body))


def multi_start(config: SearchConfig, starts, seeds) -> tuple:
    """Independent climbs; returns (best result, all results).

    The best is the highest value, ties broken by the smaller seed, so the
    choice does not depend on completion order.
    """
    results = []
    for start, seed in zip(starts, seeds):
        cfg = SearchConfig(**{**config.__dict__, "seed": seed})
        results.append(hill_climb(cfg, start))
    best = min(results, key=lambda r: (-r.best_value, r.config.seed))
    return best, results
