"""Exact polytopes: hull, volume, Minkowski sum, affine maps, polar, intersection.

Points are plain tuples of :class:`~fractions.Fraction`. A :class:`Polytope`
is always full-dimensional and is only built through :func:`convex_hull`
(or the helpers here that call it), which computes vertices, facets and a
triangulation up front. Polytopes are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, lcm
from operator import mul

from .errors import DegenerateInput, DimensionMismatch, EmptyInput, OriginNotInterior
from .hull import int_hull
from .linalg import det
from .lp import OPTIMAL, maximize_free
from .rational import as_rational

Point = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= offset``; ``incident`` lists the vertex indices on the boundary."""

    normal: tuple
    offset: Fraction
    incident: tuple = ()

    def contains(self, x) -> bool:
        return sum(a * b for a, b in zip(self.normal, x)) <= self.offset


class Empty:
    """Result of an intersection with no common points."""

    volume = Fraction(0)

    def __repr__(self):
        return "Empty()"


@dataclass(frozen=True)
class Degenerate:
    """Nonempty intersection of affine rank below the ambient dimension."""

    dim: int
    witness: tuple
    volume = Fraction(0)


def as_point(coords) -> Point:
    return tuple(as_rational(c) for c in coords)


def _scale_points(points):
    scale = lcm(1, *(c.denominator for p in points for c in p))
    ints = [tuple(c.numerator * (scale // c.denominator) for c in p) for p in points]
    return ints, scale


def _dedup(ints):
    seen = {}
    for p in ints:
        seen.setdefault(p, len(seen))
    return list(seen)


class Polytope:
    """Full-dimensional convex polytope in V-representation with hull data."""

    __slots__ = ("dim", "vertices", "facets", "triangulation", "volume",
                 "_ints", "_scale", "_boundary")

    def __init__(self, int_points, scale):
        """Build from integer points ``int_points / scale``; prefer :func:`convex_hull`."""
        hull = int_hull(int_points)
        d = hull.dim
        order = hull.vertices
        index = {old: new for new, old in enumerate(order)}
        ints = [int_points[i] for i in order]
        self.dim = d
        self._scale = scale
        self._ints = tuple(ints)
        self.vertices = tuple(tuple(Fraction(c, scale) for c in p) for p in ints)

        facets = []
        for normal, offset in sorted(hull.planes):
            inc = tuple(k for k, p in enumerate(ints) if sum(map(mul, normal, p)) == offset)
            facets.append(Halfspace(tuple(Fraction(a) for a in normal),
                                    Fraction(offset, scale), inc))
        self.facets = tuple(facets)
        boundary = [tuple(sorted(index[v] for v in s)) for s in hull.simplices]
        planes = hull.simplex_planes
        self._boundary = tuple(boundary)

        # pulling triangulation from the lexicographically least vertex
        anchor = min(range(len(ints)), key=lambda k: self.vertices[k])
        tri = []
        total = 0
        base = ints[anchor]
        for s, (normal, offset) in zip(boundary, planes):
            if sum(map(mul, normal, base)) == offset:
                continue
            tri.append((anchor,) + s)
            total += abs(det([[x - y for x, y in zip(ints[v], base)] for v in s]))
        self.triangulation = tuple(tri)
        self.volume = Fraction(total, factorial(d) * scale ** d)

    @classmethod
    def _from_ints(cls, ints, scale):
        ints = _dedup(ints)
        if not ints:
            raise EmptyInput("no points")
        return cls(ints, scale)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, volume={self.volume})"

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertex_set() == other.vertex_set()

    def __hash__(self):
        return hash((self.dim, self.vertex_set()))

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def centroid(self) -> Point:
        """Vertex centroid (not the center of mass)."""
        m = len(self.vertices)
        return tuple(sum(p[k] for p in self.vertices) / m for k in range(self.dim))

    def contains(self, x, strict=False) -> bool:
        x = as_point(x)
        for h in self.facets:
            s = sum(a * b for a, b in zip(h.normal, x))
            if s > h.offset or (strict and s == h.offset):
                return False
        return True

    def support(self, u) -> Fraction:
        """Support function value max over vertices of ``u . v``."""
        return max(sum(a * b for a, b in zip(u, v)) for v in self.vertices)


def convex_hull(points) -> Polytope:
    pts = [as_point(p) for p in points]
    if not pts:
        raise EmptyInput("no points")
    d = len(pts[0])
    if d < 1 or any(len(p) != d for p in pts):
        raise DimensionMismatch("points do not share one positive dimension")
    ints, scale = _scale_points(pts)
    return Polytope._from_ints(ints, scale)


def volume(body) -> Fraction:
    """Exact volume; :class:`Empty` and :class:`Degenerate` read as 0."""
    return body.volume


def _check_dims(p, q):
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim} differ")


def _common_ints(p, q):
    scale = lcm(p._scale, q._scale)
    fp, fq = scale // p._scale, scale // q._scale
    a = [tuple(c * fp for c in v) for v in p._ints]
    b = [tuple(c * fq for c in v) for v in q._ints]
    return a, b, scale


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    _check_dims(p, q)
    a, b, scale = _common_ints(p, q)
    return Polytope._from_ints([tuple(x + y for x, y in zip(u, v)) for u in a for v in b], scale)


def linear_combination(terms) -> Polytope:
    """Hull of ``sum_i c_i P_i`` for ``(c_i, P_i)`` pairs, any signs of ``c_i``."""
    pts = [()]
    for coef, body in terms:
        coef = as_rational(coef)
        scaled = [tuple(coef * c for c in v) for v in body.vertices]
        pts = [p + (v,) for p in pts for v in scaled]
    dim = terms[0][1].dim
    summed = {tuple(sum(v[k] for v in combo) for k in range(dim)) for combo in pts}
    return convex_hull(sorted(summed))


def affine_map(p: Polytope, scale=1, negate=False, shift=None) -> Polytope:
    """Image of ``p`` under ``x -> scale * (+-x) + shift``."""
    s = as_rational(scale)
    if negate:
        s = -s
    if shift is None:
        shift = (Fraction(0),) * p.dim
    shift = as_point(shift)
    if len(shift) != p.dim:
        raise DimensionMismatch("shift has the wrong dimension")
    if s == 0:
        raise DegenerateInput("scale 0 collapses the body to a point")
    return convex_hull([tuple(s * c + t for c, t in zip(v, shift)) for v in p.vertices])


def negate(p: Polytope) -> Polytope:
    return affine_map(p, 1, negate=True)


def translate(p: Polytope, shift) -> Polytope:
    return affine_map(p, 1, shift=shift)


def polar(p: Polytope) -> Polytope:
    """``{y : y.x <= 1 for x in p}``; needs the origin strictly inside."""
    if any(h.offset <= 0 for h in p.facets):
        raise OriginNotInterior("origin is not an interior point")
    return convex_hull([tuple(a / h.offset for a in h.normal) for h in p.facets])


def convex_hull_union(*bodies) -> Polytope:
    pts = []
    for b in bodies:
        pts.extend(b.vertices)
    return convex_hull(pts)


def halfspaces_interior_point(halfspaces, dim):
    """Return ``(slack, x)`` maximizing the common slack of ``a.x + t <= b``.

    ``slack > 0`` means ``x`` is interior, ``slack == 0`` means the set is
    nonempty but has no interior, ``slack < 0`` (or None) means it is empty.
    """
    rows = [list(h.normal) + [1] for h in halfspaces] + [[0] * dim + [1]]
    rhs = [h.offset for h in halfspaces] + [1]
    res = maximize_free([0] * dim + [1], rows, rhs)
    if res.status != OPTIMAL:
        return None, None
    return res.value, res.x[:dim]


def polytope_from_halfspaces(halfspaces, dim):
    """Vertex enumeration by dualizing about an interior point.

    Returns a :class:`Polytope`, :class:`Degenerate` or :class:`Empty`.
    """
    halfspaces = list(halfspaces)
    slack, x0 = halfspaces_interior_point(halfspaces, dim)
    if slack is None or slack < 0:
        return Empty()
    if slack == 0:
        return Degenerate(dim, tuple(x0))
    dual = []
    for h in halfspaces:
        rhs = h.offset - sum(a * c for a, c in zip(h.normal, x0))
        dual.append(tuple(a / rhs for a in h.normal))
    dual_hull = convex_hull(dual)
    verts = [tuple(c + a / g.offset for c, a in zip(x0, g.normal)) for g in dual_hull.facets]
    return convex_hull(verts)


def intersect(p: Polytope, q: Polytope):
    """Exact intersection: a :class:`Polytope`, :class:`Degenerate` or :class:`Empty`."""
    _check_dims(p, q)
    return polytope_from_halfspaces(p.facets + q.facets, p.dim)


def box(lo, hi) -> Polytope:
    """Axis-parallel box with corners ``lo`` and ``hi``."""
    lo, hi = as_point(lo), as_point(hi)
    return convex_hull(list(product(*zip(lo, hi))))
