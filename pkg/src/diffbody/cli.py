"""Command-line front end: ``diffbody <command> [options]``.

Exit status is 0 on success, 2 when a conjectured inequality produced a
POTENTIAL-COUNTEREXAMPLE, and 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .constructions import (cone_body, cone_volume_from_mixed, diagonal_section_and_projection,
                            join_body, join_volume_formula, product_hull, steiner_check,
                            MAX_JOIN_DIM, MAX_PRODUCT_DIM)
from .errors import EngineInconsistency, GeometryError
from .geometry import Polytope, convex_hull, translate
from .inequalities import lambda_grid, polar_hull_check, verify_body
from .io import parse_polytope, polytope_to_json, reports_to_csv, write_atomic
from .mixed import self_mixed_volumes
from .rational import format_rational, parse_rational
from .search import Objective, SearchConfig, hill_climb, perturbed_simplex_points, standard_simplex

COMMANDS = ("mixvol", "verify", "constructions", "steiner", "search", "builtin")
BUILTINS = ("simplex", "cube", "crosspoly")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    builtin: str | None = None
    n: int = 2
    grid: int = 12
    lam: Fraction = Fraction(1, 2)
    j: int = 1
    seed: int = 0
    samples: int = 1_000_000
    out: str | None = None
    fmt: str | None = None
    objective: str = "unbalanced_rs_ratio(1/2)"
    iterations: int = 500
    m: int | None = None
    error_json: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.grid < 1:
            raise ValueError("grid density must be >= 1")
        if self.fmt not in (None, "csv", "json"):
            raise ValueError("format must be csv or json")


def builtin_body(name: str, n: int) -> Polytope:
    if name == "simplex":
        return standard_simplex(n)
    if name == "cube":
        return convex_hull(list(product((0, 1), repeat=n)))
    if name == "crosspoly":
        pts = []
        for i in range(n):
            for s in (1, -1):
                pts.append(tuple(s if k == i else 0 for k in range(n)))
        return convex_hull(pts)
    raise ValueError(f"unknown builtin body {name!r}")


def _bodies(cfg: RunConfig) -> list:
    bodies = []
    if cfg.builtin:
        bodies.append((cfg.builtin, builtin_body(cfg.builtin, cfg.n)))
    for path in cfg.inputs:
        with open(path, "rb") as fh:
            bodies.append((path, parse_polytope(fh.read())))
    if not bodies:
        raise ValueError("no input body: give --builtin or --input")
    return bodies


def _centered(body: Polytope) -> Polytope:
    c = body.centroid
    return translate(body, tuple(-x for x in c))


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_mixvol(cfg):
    out = []
    for name, body in _bodies(cfg):
        mv = self_mixed_volumes(body)
        out.append((name, mv))
    if cfg.fmt == "csv":
        lines = ["body,n,j,V"]
        for name, mv in out:
            lines += [f"{name},{mv.n},{j},{format_rational(v)}" for j, v in enumerate(mv.values)]
        return "\n".join(lines) + "\n", 0
    payload = [mv.to_json() for _, mv in out]
    return _dumps(payload[0] if len(payload) == 1 else payload), 0


def _cmd_verify(cfg):
    reports = []
    for _, body in _bodies(cfg):
        reports.extend(verify_body(body, cfg.grid))
    status = 0 if all(r.satisfied for r in reports) else 2
    if cfg.fmt == "json":
        return _dumps([r.to_json() for r in reports]), status
    return reports_to_csv(reports), status


def _cmd_constructions(cfg):
    payload = []
    for name, body in _bodies(cfg):
        n = body.dim
        mv = self_mixed_volumes(body)
        entry = {"body": name, "n": n, "cone": []}
        for lam in lambda_grid(cfg.grid):
            vol = cone_body(body, lam).volume
            entry["cone"].append({
                "lambda": format_rational(lam),
                "volume": format_rational(vol),
                "fubini": format_rational(cone_volume_from_mixed(mv, lam)),
                "bound": format_rational(body.volume / (n + 1)),
            })
            if vol != cone_volume_from_mixed(mv, lam) or vol > body.volume / (n + 1):
                raise EngineInconsistency("cone body volume identity or bound failed",
                                          {"body": polytope_to_json(body)})
        if n <= MAX_JOIN_DIM:
            vol = join_body(body, body).volume
            entry["join"] = {"volume": format_rational(vol),
                             "formula": format_rational(join_volume_formula(body, body))}
        if n <= MAX_PRODUCT_DIM:
            k = _centered(body)
            c = product_hull(k, k)
            slices = diagonal_section_and_projection(c, k, k)
            rep = polar_hull_check(k, k)
            entry["product_hull"] = {
                "volume": format_rational(c.volume),
                "section": [format_rational(slices.section.value), slices.section.sqrt2_power],
                "projection": [format_rational(slices.projection.value), slices.projection.sqrt2_power],
                "polar_hull": rep.to_json(),
            }
        payload.append(entry)
    return _dumps(payload), 0


def _cmd_steiner(cfg):
    payload = []
    for _, body in _bodies(cfg):
        payload.append(steiner_check(body, cfg.lam, cfg.samples, cfg.seed).to_json())
    return _dumps(payload[0] if len(payload) == 1 else payload), 0


def _cmd_search(cfg):
    name = cfg.objective
    if name == "godbersen_ratio":
        name = f"godbersen_ratio({cfg.j})"
    objective = Objective.parse(name)
    if cfg.builtin or cfg.inputs:
        start = list(_bodies(cfg)[0][1].vertices)
    else:
        start = perturbed_simplex_points(cfg.n, cfg.seed)
    n = len(start[0])
    config = SearchConfig(n=n, m=cfg.m or len(start), objective=objective,
                          iterations=cfg.iterations, seed=cfg.seed)
    result = hill_climb(config, start)
    return _dumps(result.to_json()), (2 if result.potential_counterexamples else 0)


def _cmd_builtin(cfg):
    return _dumps(polytope_to_json(builtin_body(cfg.builtin or "simplex", cfg.n))), 0


def run(cfg: RunConfig) -> int:
    handler = globals()[f"_cmd_{cfg.command}"]
    try:
        text, status = handler(cfg)
    except (GeometryError, ValueError, OSError) as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, EngineInconsistency):
            payload["dump"] = e.dump
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        if cfg.error_json:
            sys.stdout.write(json.dumps(payload) + "\n")
        return 1
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diffbody", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--builtin", choices=BUILTINS)
    p.add_argument("--input", action="append", default=[], metavar="FILE")
    p.add_argument("--lambda", dest="lam", type=parse_rational, default=Fraction(1, 2), metavar="P/Q")
    p.add_argument("--grid", type=int, default=12, metavar="D")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"))
    p.add_argument("--objective", default="unbalanced_rs_ratio(1/2)")
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--m", type=int)
    p.add_argument("--error-json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors; 2 is reserved for counterexamples
        return 0 if e.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(command=args.command, inputs=args.input, builtin=args.builtin, n=args.n,
                        grid=args.grid, lam=args.lam, j=args.j, seed=args.seed,
                        samples=args.samples, out=args.out, fmt=args.fmt,
                        objective=args.objective, iterations=args.iterations, m=args.m,
                        error_json=args.error_json)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
