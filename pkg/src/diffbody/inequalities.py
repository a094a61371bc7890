"""Exact evaluation of the inequalities around Godbersen's conjecture.

Every check returns an :class:`InequalityReport`. A negative gap on a proven
inequality raises :class:`EngineInconsistency` with a diagnostic dump; on a
conjectured one (unbalanced Rogers-Shephard for n >= 6, Godbersen's bound
for 2 <= j <= n-2) it is logged as POTENTIAL-COUNTEREXAMPLE and returned.
"""

from __future__ import annotations

import logging
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .constructions import gen_rs_value, polar_sum_polar
from .errors import EngineInconsistency, IndexOutOfRange, LambdaOutOfRange
from .geometry import Polytope, convex_hull
from .io import polytope_to_json
from .mixed import bernstein_volume, difference_body, self_mixed_volumes, unbalanced_difference_body
from .rational import as_rational, binom, check_lambda, format_rational

log = logging.getLogger(__name__)

POTENTIAL_COUNTEREXAMPLE = "POTENTIAL-COUNTEREXAMPLE"


@dataclass(frozen=True)
class InequalityReport:
    """``lhs <= rhs`` evaluated exactly; ``gap = rhs - lhs``."""

    name: str
    n: int
    params: dict
    lhs: Fraction
    rhs: Fraction
    conjectural: bool = False

    @property
    def gap(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def satisfied(self) -> bool:
        return self.gap >= 0

    def csv_row(self) -> dict:
        lam = self.params.get("lambda")
        j = self.params.get("j")
        return {
            "name": self.name,
            "n": self.n,
            "lambda": "" if lam is None else format_rational(lam),
            "j": "" if j is None else j,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "gap": format_rational(self.gap),
            "satisfied": str(self.satisfied).lower(),
        }

    def to_json(self) -> dict:
        out = {k: v for k, v in self.csv_row().items()}
        out["satisfied"] = self.satisfied
        out["conjectural"] = self.conjectural
        return out


def settle(report: InequalityReport, body: Polytope | None = None) -> InequalityReport:
    if report.satisfied:
        return report
    dump = {"report": report.to_json()}
    if body is not None:
        dump["body"] = polytope_to_json(body)
    if report.conjectural:
        log.warning("%s %s %s", POTENTIAL_COUNTEREXAMPLE, report.name, dump)
        return report
    raise EngineInconsistency(f"proven inequality {report.name} violated", dump)


def _mv(k):
    return self_mixed_volumes(k)


@dataclass(frozen=True)
class GodbersenReport:
    ratios: tuple
    max_ratio: Fraction
    mean_ratio: Fraction
    median_ratio: Fraction
    markov_ok: bool
    per_j: tuple = field(default=())

    def to_json(self) -> dict:
        return {"ratios": [format_rational(r) for r in self.ratios],
                "max_ratio": format_rational(self.max_ratio),
                "mean_ratio": format_rational(self.mean_ratio),
                "median_ratio": format_rational(self.median_ratio),
                "markov_ok": self.markov_ok}


def godbersen_report(k: Polytope) -> GodbersenReport:
    """Ratios V_j / (binom(n,j) Vol K) and their mean, median, max.

    The mean over j = 0..n is at most 1 for every body. The median is taken
    over the inner indices 1..n-1; at least half of them have ratio below 2.
    ``markov_ok`` checks that for each k, at least k inner indices have ratio
    at most (n-1)/(n-k).
    """
    mv = _mv(k)
    n = mv.n
    ratios = tuple(mv.values[j] / (binom(n, j) * mv.vol) for j in range(n + 1))
    mean = sum(ratios) / (n + 1)
    inner = ratios[1:n] if n >= 2 else ratios
    median = Fraction(statistics.median(inner))
    markov_ok = all(
        sum(1 for r in inner if r <= Fraction(n - 1, n - kk)) >= kk
        for kk in range(1, n)
    )
    per_j = []
    for j in range(n + 1):
        rep = InequalityReport("godbersen", n, {"j": j}, mv.values[j], binom(n, j) * mv.vol,
                               conjectural=2 <= j <= n - 2)
        per_j.append(settle(rep, k))
    avg = InequalityReport("godbersen_average", n, {}, mean, Fraction(1))
    settle(avg, k)
    if not markov_ok:
        raise EngineInconsistency("Markov corollary violated", {"body": polytope_to_json(k)})
    return GodbersenReport(ratios, max(ratios), mean, median, markov_ok, tuple(per_j))


def theorem_sum_check(k: Polytope, lam) -> InequalityReport:
    lam = check_lambda(lam)
    mv = _mv(k)
    n = mv.n
    lhs = sum(lam ** j * (1 - lam) ** (n - j) * mv.values[j] for j in range(n + 1))
    return settle(InequalityReport("theorem_sum", n, {"lambda": lam}, lhs, mv.vol), k)


def gen_rs_check(k: Polytope, lam) -> InequalityReport:
    lam = check_lambda(lam)
    mv = _mv(k)
    n = mv.n
    lhs = gen_rs_value(mv, lam)
    if lam == 1:
        direct = Fraction(factorial(n) ** 2, factorial(2 * n)) * difference_body(k).volume
        if lhs != direct:
            raise EngineInconsistency("generalized RS at lambda=1 differs from (n!)^2/(2n)! Vol(K-K)",
                                      {"body": polytope_to_json(k)})
    if lam == 0 and lhs != mv.vol:
        raise EngineInconsistency("generalized RS at lambda=0 is not Vol(K)",
                                  {"body": polytope_to_json(k)})
    return settle(InequalityReport("gen_rs", n, {"lambda": lam}, lhs, mv.vol), k)


def gen_rs_slope_at_zero(k: Polytope, eps=Fraction(1, 1000)) -> Fraction:
    """(g(eps) - g(0)) / eps for g the generalized RS left-hand side."""
    mv = _mv(k)
    eps = as_rational(eps)
    return (gen_rs_value(mv, eps) - gen_rs_value(mv, 0)) / eps


def rogers_shephard_check(k: Polytope) -> InequalityReport:
    mv = _mv(k)
    n = mv.n
    lhs = difference_body(k).volume
    if lhs != sum(binom(n, j) * mv.values[j] for j in range(n + 1)):
        raise EngineInconsistency("Vol(K-K) differs from sum binom(n,j) V_j",
                                  {"body": polytope_to_json(k)})
    return settle(InequalityReport("rogers_shephard", n, {}, lhs, binom(2 * n, n) * mv.vol), k)


def unbalanced_rs_rhs(n: int, lam) -> Fraction:
    lam = Fraction(lam)
    return sum(binom(n, j) ** 2 * lam ** j * (1 - lam) ** (n - j) for j in range(n + 1))


def unbalanced_rs_check(k: Polytope, lam, direct: bool = False) -> InequalityReport:
    """Vol(D_lam K)/Vol(K) against the simplex value.

    By default the left side is the Bernstein form of the mixed volumes;
    ``direct=True`` builds D_lam K and takes its hull volume instead.
    """
    lam = check_lambda(lam)
    mv = _mv(k)
    n = mv.n
    if direct:
        lhs = unbalanced_difference_body(k, lam).volume / mv.vol
    else:
        lhs = bernstein_volume(mv, lam) / mv.vol
    rep = InequalityReport("unbalanced_rs", n, {"lambda": lam}, lhs, unbalanced_rs_rhs(n, lam),
                           conjectural=n >= 6)
    return settle(rep, k)


def aefo_check(k: Polytope, j: int, lam) -> InequalityReport:
    lam = check_lambda(lam)
    mv = _mv(k)
    n = mv.n
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"j={j} outside 0..{n}")
    lhs = lam ** j * (1 - lam) ** (n - j) * mv.values[j]
    return settle(InequalityReport("aefo", n, {"lambda": lam, "j": j}, lhs, mv.vol), k)


def polar_hull_check(k: Polytope, l: Polytope) -> InequalityReport:
    """Vol(conv(K u -L)) Vol((K° + L°)°) <= Vol(K) Vol(L)."""
    hull = convex_hull(list(k.vertices) + [tuple(-c for c in v) for v in l.vertices])
    lhs = hull.volume * polar_sum_polar(k, l).volume
    return settle(InequalityReport("polar_hull", k.dim, {}, lhs, k.volume * l.volume), k)


@dataclass(frozen=True)
class ReductionCheck:
    identity_ok: bool
    combined_ok: bool
    gap: Fraction


def dim45_reduction_check(lam, n: int, v1, v2) -> ReductionCheck:
    """Re-derive the n = 4, 5 reduction of unbalanced Rogers-Shephard.

    ``v1, v2`` are normalized mixed volumes V_j / Vol(K). The premises are
    V_1 <= n and the Rogers-Shephard bound; the conclusion is that the
    unbalanced gap is a nonnegative combination of the two premise slacks.
    """
    lam = check_lambda(lam, lo_open=True, hi_open=True)
    v1, v2 = as_rational(v1), as_rational(v2)
    mu = 1 - lam
    if n == 4:
        u = lam / mu + mu / lam
        identity_ok = u >= 2 and u - 2 == (1 - 2 * lam) ** 2 / (lam * mu)
        slack_j1 = 4 - v1
        slack_rs = 68 - 8 * v1 - 6 * v2
        reduced_gap = 16 * u + 36 - 4 * u * v1 - 6 * v2
        combined = 4 * (u - 2) * slack_j1 + slack_rs
        scale = lam ** 2 * mu ** 2
        multipliers_ok = u - 2 >= 0
    elif n == 5:
        alpha = lam ** 4 * mu + lam * mu ** 4
        beta = lam ** 2 * mu ** 3 + lam ** 3 * mu ** 2
        identity_ok = alpha - beta == lam * mu * (1 - 2 * lam) ** 2 and alpha >= beta
        slack_j1 = 5 - v1
        slack_rs = 125 - 5 * v1 - 10 * v2
        reduced_gap = 25 * alpha + 100 * beta - 5 * alpha * v1 - 10 * beta * v2
        combined = 5 * (alpha - beta) * slack_j1 + beta * slack_rs
        scale = Fraction(1)
        multipliers_ok = alpha - beta >= 0 and beta >= 0
    else:
        raise IndexOutOfRange("reduction exists for n = 4 and n = 5 only")
    # full unbalanced gap from the palindromic vector (1, V1, V2, ..., V1, 1)
    vec = [Fraction(1), v1, v2] + ([v2] if n == 5 else []) + [v1, Fraction(1)]
    full_gap = sum(binom(n, j) * lam ** j * mu ** (n - j) * (binom(n, j) - vec[j])
                   for j in range(n + 1))
    combined_ok = (
        combined == reduced_gap
        and full_gap == scale * reduced_gap
        and multipliers_ok
        and slack_j1 >= 0
        and slack_rs >= 0
        and reduced_gap >= 0
    )
    return ReductionCheck(identity_ok, combined_ok, full_gap)


def lambda_grid(density: int = 12) -> list:
    if density < 1:
        raise LambdaOutOfRange("grid density must be >= 1")
    return [Fraction(k, density) for k in range(density + 1)]


def verify_body(k: Polytope, density: int = 12) -> list:
    """Every per-body check over the lambda grid."""
    n = k.dim
    reports = [rogers_shephard_check(k)]
    reports.extend(godbersen_report(k).per_j)
    for lam in lambda_grid(density):
        reports.append(theorem_sum_check(k, lam))
        reports.append(gen_rs_check(k, lam))
        reports.append(unbalanced_rs_check(k, lam))
        for j in range(n + 1):
            reports.append(aefo_check(k, j, lam))
    return reports
