from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from diffbody.geometry import convex_hull
from diffbody.search import standard_simplex


def shoelace(poly):
    """Exact area of a simple polygon given in boundary order."""
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        s += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return abs(s) / 2


def cube(n, lo=0, hi=1):
    return convex_hull(list(product((lo, hi), repeat=n)))


def cross_polytope(n):
    pts = []
    for i in range(n):
        for s in (1, -1):
            pts.append(tuple(s if k == i else 0 for k in range(n)))
    return convex_hull(pts)


def triangle():
    return convex_hull([(0, 0), (1, 0), (0, 1)])


def segment(a=0, b=1):
    return convex_hull([(a,), (b,)])


rationals = st.builds(Fraction, st.integers(-12, 12), st.sampled_from([1, 2, 3, 4]))


def point_sets(dim, min_size=None, max_size=8):
    return st.lists(st.tuples(*[rationals] * dim), min_size=min_size or dim + 1,
                    max_size=max_size, unique=True)


@pytest.fixture
def simplex3():
    return standard_simplex(3)
