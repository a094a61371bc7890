"""Exact beneath-beyond convex hull on integer points.

The kernel never sees a Fraction: callers scale every point by a common
denominator first. Facets are kept as simplices (d point indices each) so
that coplanar input does not need special casing; coplanar simplices are
merged into true facets afterwards.
"""

from __future__ import annotations

from operator import mul

from .errors import DegenerateInput, EmptyInput
from .linalg import normal_vector, primitive, rank


class IntHull:
    """Result of :func:`int_hull`.

    ``vertices`` are indices into the input list (extreme points only, in
    input order). ``simplices`` is the triangulated boundary, each entry a
    tuple of d input indices. ``planes`` maps a primitive ``(normal, offset)``
    pair to the simplices lying in it.
    """

    __slots__ = ("dim", "vertices", "simplices", "simplex_planes", "planes")

    def __init__(self, dim, vertices, simplices, simplex_planes, planes):
        self.dim = dim
        self.vertices = vertices
        self.simplices = simplices
        self.simplex_planes = simplex_planes
        self.planes = planes


def _dot(a, b):
    return sum(map(mul, a, b))


def _processing_order(points):
    # Far points first: they are likely extreme, so later interior points are
    # rejected after a single facet scan.
    n = len(points)
    d = len(points[0])
    total = [sum(p[k] for p in points) for k in range(d)]

    def key(i):
        p = points[i]
        return (-sum((n * p[k] - total[k]) ** 2 for k in range(d)), i)

    return sorted(range(n), key=key)


def _initial_simplex(points, order, d):
    base = points[order[0]]
    chosen = [order[0]]
    echelon = []  # (pivot column, row)
    for i in order[1:]:
        v = [x - y for x, y in zip(points[i], base)]
        for c, row in echelon:
            if v[c]:
                a, b = row[c], v[c]
                v = primitive([x * a - y * b for x, y in zip(v, row)])
        if not any(v):
            continue
        c = next(k for k, x in enumerate(v) if x)
        echelon.append((c, v))
        chosen.append(i)
        if len(chosen) == d + 1:
            return chosen
    raise DegenerateInput(f"affine rank {len(chosen) - 1} < dimension {d}")


def _hull_1d(points):
    lo = min(range(len(points)), key=lambda i: (points[i][0], i))
    hi = max(range(len(points)), key=lambda i: (points[i][0], -i))
    if points[lo][0] == points[hi][0]:
        raise DegenerateInput("affine rank 0 < dimension 1")
    vertices = sorted((lo, hi))
    lo_plane = ((-1,), -points[lo][0])
    hi_plane = ((1,), points[hi][0])
    simplices = [(lo,), (hi,)]
    planes = {lo_plane: [(lo,)], hi_plane: [(hi,)]}
    return IntHull(1, vertices, simplices, [lo_plane, hi_plane], planes)


def _beneath_beyond(points, d):
    order = _processing_order(points)
    init = _initial_simplex(points, order, d)
    interior = [sum(points[i][k] for i in init) for k in range(d)]
    weight = d + 1

    facets = {}  # id -> (verts, normal, offset)
    ridges = {}  # sorted tuple of d-1 indices -> list of facet ids
    next_id = 0

    def make_facet(verts):
        nonlocal next_id
        q0 = points[verts[0]]
        vecs = [[x - y for x, y in zip(points[v], q0)] for v in verts[1:]]
        a = primitive(normal_vector(vecs))
        b = _dot(a, q0)
        side = _dot(a, interior) - weight * b
        if side > 0:
            a = [-x for x in a]
            b = -b
        elif side == 0:
            raise AssertionError("reference point fell on a facet plane")
        fid = next_id
        next_id += 1
        facets[fid] = (verts, a, b)
        for k in range(d):
            ridges.setdefault(verts[:k] + verts[k + 1:], []).append(fid)
        return fid

    init_sorted = tuple(sorted(init))
    for k in range(d + 1):
        make_facet(init_sorted[:k] + init_sorted[k + 1:])

    in_init = set(init)
    for i in order:
        if i in in_init:
            continue
        p = points[i]
        visible = [fid for fid, (_, a, b) in facets.items() if sum(map(mul, a, p)) > b]
        if not visible:
            continue
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for k in range(d):
                ridge = verts[:k] + verts[k + 1:]
                owners = ridges[ridge]
                other = owners[0] if owners[1] == fid else owners[1]
                if other not in vis:
                    horizon.append(ridge)
        for fid in visible:
            verts = facets.pop(fid)[0]
            for k in range(d):
                ridge = verts[:k] + verts[k + 1:]
                owners = ridges[ridge]
                owners.remove(fid)
                if not owners:
                    del ridges[ridge]
        for ridge in horizon:
            make_facet(tuple(sorted(ridge + (i,))))
    return list(facets.values())


def int_hull(points: list[tuple[int, ...]]) -> IntHull:
    """Convex hull of integer points that span their ambient space."""
    if not points:
        raise EmptyInput("no points")
    d = len(points[0])
    if d == 1:
        return _hull_1d(points)

    raw = _beneath_beyond(points, d)
    simplices = [verts for verts, _, _ in raw]
    simplex_planes = [(tuple(a), b) for _, a, b in raw]
    planes = {}
    for s, key in zip(simplices, simplex_planes):
        planes.setdefault(key, []).append(s)

    incident = {}
    for s, key in zip(simplices, simplex_planes):
        for v in s:
            incident.setdefault(v, set()).add(key)
    extreme = sorted(v for v, keys in incident.items()
                     if len(keys) >= d and rank([list(k[0]) for k in keys]) == d)
    if len(extreme) < len(incident):
        # A boundary point that is not a vertex slipped into the triangulation;
        # rebuild from the extreme points so simplices use vertices only.
        sub = int_hull([points[i] for i in extreme])
        remap = extreme
        return IntHull(
            d,
            [remap[i] for i in sub.vertices],
            [tuple(remap[i] for i in s) for s in sub.simplices],
            sub.simplex_planes,
            {k: [tuple(remap[i] for i in s) for s in ss] for k, ss in sub.planes.items()},
        )
    return IntHull(d, extreme, simplices, simplex_planes, planes)
