"""Auxiliary bodies and scalar fields built from a body K.

* cone body   C = conv({0} x (1-lam)K  u  {1} x (-lam K))       in R^(n+1)
* join body   T = conv({(0,0,y): y in K2} u {(1,x,-x): x in K1}) in R^(2n+1)
* product hull  conv(K x {0} u {0} x L)                          in R^(2n)
* gauge distance d_B(x, K'), the unbalanced covariogram and the local
  Steiner Monte-Carlo cross-check.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import (DegenerateInput, DimensionMismatch, DimensionTooLarge,
                     LambdaOutOfRange, OriginNotInterior, SampleCountTooSmall)
from .geometry import (Polytope, as_point, convex_hull, intersect, minkowski_sum,
                       polar, polytope_from_halfspaces, Halfspace)
from .lp import OPTIMAL, solve_standard
from .mixed import difference_body, self_mixed_volumes
from .rational import binom, check_lambda, format_rational
from .rng import uniform_block

log = logging.getLogger(__name__)

MAX_JOIN_DIM = 2
MAX_PRODUCT_DIM = 3


def _zero(n):
    return (Fraction(0),) * n


def cone_body(k: Polytope, lam) -> Polytope:
    lam = check_lambda(lam)
    bottom = [(Fraction(0),) + tuple((1 - lam) * c for c in v) for v in k.vertices]
    top = [(Fraction(1),) + tuple(-lam * c for c in v) for v in k.vertices]
    return convex_hull(bottom + top)


def cone_volume_from_mixed(mv, lam) -> Fraction:
    """(1/(n+1)) sum_j lam^j (1-lam)^(n-j) V_j, the Fubini value of Vol(C)."""
    lam = Fraction(lam)
    n = mv.n
    return sum(lam ** j * (1 - lam) ** (n - j) * mv.values[j] for j in range(n + 1)) / (n + 1)


def join_body(k1: Polytope, k2: Polytope) -> Polytope:
    if k1.dim != k2.dim:
        raise DimensionMismatch("join body needs bodies of equal dimension")
    n = k1.dim
    if n > MAX_JOIN_DIM:
        raise DimensionTooLarge(f"join body lives in R^{2 * n + 1}; n <= {MAX_JOIN_DIM} supported")
    pts = [(Fraction(0),) + _zero(n) + y for y in k2.vertices]
    pts += [(Fraction(1),) + x + tuple(-c for c in x) for x in k1.vertices]
    return convex_hull(pts)


def join_volume_formula(k1: Polytope, k2: Polytope) -> Fraction:
    n = k1.dim
    return Fraction(factorial(n) ** 2, factorial(2 * n + 1)) * k1.volume * k2.volume


def product_hull(k: Polytope, l: Polytope) -> Polytope:
    if k.dim != l.dim:
        raise DimensionMismatch("product hull needs bodies of equal dimension")
    n = k.dim
    if n > MAX_PRODUCT_DIM:
        raise DimensionTooLarge(f"product hull lives in R^{2 * n}; n <= {MAX_PRODUCT_DIM} supported")
    return convex_hull([x + _zero(n) for x in k.vertices] + [_zero(n) + y for y in l.vertices])


@dataclass(frozen=True)
class Sqrt2Scaled:
    """The real number ``value * sqrt(2) ** sqrt2_power``, kept exact."""

    value: Fraction
    sqrt2_power: int

    def __mul__(self, other):
        return Sqrt2Scaled(self.value * other.value, self.sqrt2_power + other.sqrt2_power)

    def rational(self) -> Fraction:
        if self.sqrt2_power % 2:
            raise ValueError("odd power of sqrt(2) is irrational")
        return self.value * Fraction(2) ** (self.sqrt2_power // 2)

    def __float__(self):
        return float(self.value) * 2.0 ** (self.sqrt2_power / 2)


@dataclass(frozen=True)
class DiagonalSlices:
    section: Sqrt2Scaled      # Vol_n(C n E), E the diagonal
    projection: Sqrt2Scaled   # Vol_n of C projected onto the antidiagonal

    def product(self) -> Fraction:
        return (self.section * self.projection).rational()


def _require_origin_interior(*bodies):
    for b in bodies:
        if not b.contains(_zero(b.dim), strict=True):
            raise OriginNotInterior("origin must be an interior point")


def polar_sum_polar(k: Polytope, l: Polytope) -> Polytope:
    """(K° + L°)°."""
    return polar(minkowski_sum(polar(k), polar(l)))


def diagonal_section_and_projection(c: Polytope, k: Polytope, l: Polytope) -> DiagonalSlices:
    """Section of ``c`` by the diagonal and its projection onto the antidiagonal.

    Both are computed from ``c`` itself (vertex enumeration of the section,
    hull of projected vertices) and then checked against the closed forms
    (K° + L°)° and conv(K u -L).
    """
    _require_origin_interior(k, l)
    n = k.dim
    if c.dim != 2 * n:
        raise DimensionMismatch("c must live in R^(2n)")
    # (x, x) in C  <=>  (a1 + a2).x <= b for every facet (a1, a2).x <= b
    diag = [Halfspace(tuple(h.normal[i] + h.normal[n + i] for i in range(n)), h.offset)
            for h in c.facets]
    section = polytope_from_halfspaces(diag, n)
    # (p, q) projects to ((p-q)/2, -(p-q)/2); measured in E-perp this scales by sqrt2^n
    proj = convex_hull({tuple((v[i] - v[n + i]) / 2 for i in range(n)) for v in c.vertices})

    expected_section = polar_sum_polar(k, l)
    expected_proj = convex_hull(list(k.vertices) + [tuple(-x for x in v) for v in l.vertices])
    if not isinstance(section, Polytope) or section != expected_section:
        raise AssertionError("diagonal section disagrees with (K° + L°)°")
    if proj.volume * 2 ** n != expected_proj.volume:
        raise AssertionError("antidiagonal projection disagrees with conv(K u -L)")
    return DiagonalSlices(Sqrt2Scaled(section.volume, n), Sqrt2Scaled(expected_proj.volume, -n))


class GaugeField:
    """``x -> d_B(x, K')`` = least r >= 0 with x in K' + rB.

    ``base`` may be a Polytope or any nonempty list of points (a single point
    gives the gauge of B itself).
    """

    def __init__(self, base, gauge_body: Polytope):
        pts = base.vertices if isinstance(base, Polytope) else [as_point(p) for p in base]
        if not pts:
            raise DegenerateInput("empty base")
        if any(len(p) != gauge_body.dim for p in pts):
            raise DimensionMismatch("base and gauge body differ in dimension")
        _require_origin_interior(gauge_body)
        self.dim = gauge_body.dim
        self.base_points = tuple(pts)
        self.gauge_body = gauge_body
        self._table = None

    def distance(self, x) -> Fraction:
        return gauge_distance(self, x)

    def _normals(self):
        """Facet normals u of K' + B with h_K'(u) and h_B(u)."""
        if self._table is None:
            base = convex_hull_any(self.base_points, self.dim)
            rows = []
            for h in base_plus(base, self.gauge_body).facets:
                u = h.normal
                hk = max(sum(a * b for a, b in zip(u, p)) for p in self.base_points)
                rows.append((u, hk, self.gauge_body.support(u)))
            self._table = rows
        return self._table

    def distance_by_facets(self, x) -> Fraction:
        """Exact d_B via the common normal fan of K' + rB (r > 0)."""
        x = as_point(x)
        best = Fraction(0)
        for u, hk, hb in self._normals():
            r = (sum(a * b for a, b in zip(u, x)) - hk) / hb
            if r > best:
                best = r
        return best

    def distance_array(self, xs: np.ndarray) -> np.ndarray:
        """Float evaluation of d_B on an (N, n) array; for Monte-Carlo only."""
        table = self._normals()
        u = np.array([[float(a) for a in row[0]] for row in table])
        hk = np.array([float(row[1]) for row in table])
        hb = np.array([float(row[2]) for row in table])
        r = (xs @ u.T - hk) / hb
        return np.maximum(r.max(axis=1), 0.0)


def convex_hull_any(points, dim):
    """Hull if full-dimensional, otherwise the raw point list."""
    try:
        return convex_hull(points)
    except DegenerateInput:
        return list(points)


def base_plus(base, body: Polytope) -> Polytope:
    if isinstance(base, Polytope):
        return minkowski_sum(base, body)
    return convex_hull({tuple(a + b for a, b in zip(p, v)) for p in base for v in body.vertices})


def gauge_distance(field: GaugeField, x) -> Fraction:
    """Exact LP: minimize r with x = sum a_i v_i + sum g_j w_j, sum a_i = 1, sum g_j = r."""
    x = as_point(x)
    n = field.dim
    vs = field.base_points
    ws = field.gauge_body.vertices
    m, k = len(vs), len(ws)
    rows = [[v[i] for v in vs] + [w[i] for w in ws] for i in range(n)]
    rows.append([1] * m + [0] * k)
    rhs = list(x) + [1]
    res = solve_standard([0] * m + [1] * k, rows, rhs)
    if res.status != OPTIMAL:
        raise AssertionError(f"gauge LP returned {res.status}")
    return res.value


def gauge(body: Polytope, z) -> Fraction:
    """Minkowski functional of ``body`` (origin interior)."""
    return GaugeField([_zero(body.dim)], body).distance_by_facets(z)


def covariogram(k: Polytope, lam, x) -> Fraction:
    """Unnormalized Vol((lam K + x) n K)."""
    lam = check_lambda(lam)
    if lam == 0:
        raise LambdaOutOfRange("lambda must be in (0, 1]")
    x = as_point(x)
    moved = convex_hull([tuple(lam * c + t for c, t in zip(v, x)) for v in k.vertices])
    return intersect(moved, k).volume


def gen_rs_value(mv, lam) -> Fraction:
    """sum_m (n!)^2/((2n-m)! m!) (1-lam)^m lam^(n-m) sum_j binom(n-m,j) V(K[n-j],-K[j])."""
    lam = Fraction(lam)
    n = mv.n
    total = Fraction(0)
    for m in range(n + 1):
        inner = sum(binom(n - m, j) * mv.values[n - j] for j in range(n - m + 1))
        total += (Fraction(factorial(n) ** 2, factorial(2 * n - m) * factorial(m))
                  * (1 - lam) ** m * lam ** (n - m) * inner)
    return total


@dataclass(frozen=True)
class SteinerReport:
    lam: Fraction
    samples: int
    seed: int
    mc_estimate: float
    exact_value: Fraction

    @property
    def rel_err(self) -> float:
        return abs(self.mc_estimate - float(self.exact_value)) / float(self.exact_value)

    def to_json(self) -> dict:
        return {"lambda": format_rational(self.lam), "samples": self.samples, "seed": self.seed,
                "mc": self.mc_estimate, "exact": format_rational(self.exact_value),
                "rel_err": self.rel_err}


STEINER_CHUNK = 100_000


def steiner_check(k: Polytope, lam, samples: int = 1_000_000, seed: int = 0,
                  chunk: int = STEINER_CHUNK) -> SteinerReport:
    """Monte-Carlo value of the integral of (1 - d_B(x, K'))^n over K' + B.

    K' = (1-lam)K and B = lam(K-K). The exact side comes from the self-mixed
    volumes. Sample i always uses words i*n .. i*n+n-1 of the seeded stream,
    so the estimate is independent of ``chunk``.
    """
    lam = check_lambda(lam)
    if lam == 0:
        raise LambdaOutOfRange("lambda must be in (0, 1]")
    if samples < 1000:
        raise SampleCountTooSmall("need at least 1000 samples")
    n = k.dim
    inner = convex_hull([tuple((1 - lam) * c for c in v) for v in k.vertices])
    ball = convex_hull([tuple(lam * c for c in v) for v in difference_body(k).vertices])
    field = GaugeField(inner, ball)
    outer = minkowski_sum(inner, ball)
    lo = np.array([float(min(v[i] for v in outer.vertices)) for i in range(n)])
    hi = np.array([float(max(v[i] for v in outer.vertices)) for i in range(n)])
    box_volume = float(np.prod(hi - lo))

    values = []
    for start in range(0, samples, chunk):
        count = min(chunk, samples - start)
        xs = lo + uniform_block(seed, start, count, n) * (hi - lo)
        d = field.distance_array(xs)
        values.append(np.where(d <= 1.0, (1.0 - np.minimum(d, 1.0)) ** n, 0.0))
    # fsum is correctly rounded, so the total does not depend on chunking
    estimate = box_volume * math.fsum(np.concatenate(values).tolist()) / samples
    exact = gen_rs_value(self_mixed_volumes(k), lam)
    return SteinerReport(lam, samples, seed, estimate, exact)
