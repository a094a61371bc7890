"""Helpers around :class:`fractions.Fraction`, the scalar type of the package."""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial, lcm

from .errors import LambdaOutOfRange, ParseError

__all__ = [
    "Fraction",
    "as_rational",
    "parse_rational",
    "format_rational",
    "binom",
    "factorial",
    "common_denominator",
    "check_lambda",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction, rejecting zero denominators."""
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def common_denominator(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def check_lambda(lam, lo_open=False, hi_open=False) -> Fraction:
    lam = as_rational(lam)
    if lam < 0 or lam > 1 or (lo_open and lam == 0) or (hi_open and lam == 1):
        raise LambdaOutOfRange(f"lambda={format_rational(lam)} outside the allowed range")
    return lam
