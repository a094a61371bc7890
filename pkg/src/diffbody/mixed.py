"""Self-mixed volumes V(K[j], -K[n-j]) and unbalanced difference bodies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .geometry import Polytope
from .linalg import solve
from .rational import binom, check_lambda, format_rational


@dataclass(frozen=True)
class MixedVolumeVector:
    """``values[j] = V(K[j], -K[n-j])``; ``vol = Vol(K)``."""

    n: int
    values: tuple
    vol: Fraction

    def __getitem__(self, j):
        return self.values[j]

    def normalized(self) -> tuple:
        return tuple(v / self.vol for v in self.values)

    def to_json(self) -> dict:
        return {"n": self.n, "vol": format_rational(self.vol),
                "V": [format_rational(v) for v in self.values]}


def _combination(k: Polytope, a, b) -> Polytope:
    """``a*K + b*(-K)`` for rational ``a, b >= 0``, built on the integer vertices."""
    a, b = Fraction(a), Fraction(b)
    den = lcm(a.denominator, b.denominator)
    an, bn = a.numerator * (den // a.denominator), b.numerator * (den // b.denominator)
    ints = k._ints
    pts = [tuple(an * x - bn * y for x, y in zip(u, v)) for u in ints for v in ints]
    return Polytope._from_ints(pts, k._scale * den)


def difference_body(k: Polytope) -> Polytope:
    return _combination(k, 1, 1)


@lru_cache(maxsize=512)
def self_mixed_volumes(k: Polytope) -> MixedVolumeVector:
    """Exact V_0..V_n by interpolating t -> Vol(K + t(-K)) at t = 0..n.

    Results are memoized per vertex set; polytopes are immutable.
    """
    n = k.dim
    samples = [k.volume] + [_combination(k, 1, t).volume for t in range(1, n + 1)]
    vander = [[Fraction(t) ** e for e in range(n + 1)] for t in range(n + 1)]
    coeffs = solve(vander, samples)
    # coefficient of t^i is binom(n, i) V(K[n-i], -K[i]) = binom(n, i) V_{n-i}
    values = tuple(coeffs[n - j] / binom(n, n - j) for j in range(n + 1))
    return MixedVolumeVector(n, values, k.volume)


def unbalanced_difference_body(k: Polytope, lam) -> Polytope:
    """``D_lam K = (1 - lam) K + lam (-K)``."""
    lam = check_lambda(lam)
    if lam == 0:
        return k
    if lam == 1:
        return _combination(k, 0, 1)
    return _combination(k, 1 - lam, lam)


def bernstein_volume(mv: MixedVolumeVector, lam) -> Fraction:
    """Vol(D_lam K) from the mixed volumes: sum binom(n,j) lam^j (1-lam)^(n-j) V_j."""
    lam = Fraction(lam)
    n = mv.n
    return sum(binom(n, j) * lam ** j * (1 - lam) ** (n - j) * mv.values[j]
               for j in range(n + 1))


def unbalanced_volume_polynomial(k: Polytope, mv: MixedVolumeVector | None = None) -> tuple:
    """Bernstein coefficients of lam -> Vol(D_lam K) / Vol(K).

    The coefficients are V_j / Vol(K). They are cross-checked against a
    direct hull of D_{1/3} K before being returned.
    """
    if mv is None:
        mv = self_mixed_volumes(k)
    direct = unbalanced_difference_body(k, Fraction(1, 3)).volume
    if direct != bernstein_volume(mv, Fraction(1, 3)):
        raise AssertionError("interpolated mixed volumes disagree with a direct hull")
    return mv.normalized()
