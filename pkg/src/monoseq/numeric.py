"""Outward-rounded rational bounds for sqrt, log2 and exp.

The bound checkers compare exact integer counts against thresholds that
involve sqrt, log2 and exp(-x).  Floats could tip a comparison the wrong
way, so every irrational quantity is replaced by a rational bound rounded
in the direction that makes the reported threshold at least as strong as
the real one.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import ValidationError

_SQRT_SCALE_BITS = 40
_LOG2_DENOM = 64
_EXP_TERMS = 40


def sqrt_upper(x: int) -> Fraction:
    """Rational upper bound on sqrt(x) for a nonnegative integer x."""
    if x < 0:
        raise ValidationError("sqrt_upper: negative argument")
    scale = 1 << _SQRT_SCALE_BITS
    r = isqrt(x * scale * scale)
    if r * r < x * scale * scale:
        r += 1
    return Fraction(r, scale)


def sqrt_lower(x: int) -> Fraction:
    """Rational lower bound on sqrt(x) for a nonnegative integer x."""
    if x < 0:
        raise ValidationError("sqrt_lower: negative argument")
    scale = 1 << _SQRT_SCALE_BITS
    return Fraction(isqrt(x * scale * scale), scale)


def log2_lower(x: int, denom: int = _LOG2_DENOM) -> Fraction:
    """Rational lower bound on log2(x) for a positive integer x.

    Uses 2**a <= x**denom, so the bound is exact for powers of two.
    """
    if x < 1:
        raise ValidationError("log2_lower: argument must be positive")
    a = (x**denom).bit_length() - 1
    return Fraction(a, denom)


def log2_upper(x: int, denom: int = _LOG2_DENOM) -> Fraction:
    """Rational upper bound on log2(x) for a positive integer x."""
    if x < 1:
        raise ValidationError("log2_upper: argument must be positive")
    p = x**denom
    a = p.bit_length() - 1
    if (1 << a) < p:
        a += 1
    return Fraction(a, denom)


def exp_lower(x: Fraction) -> Fraction:
    """Rational lower bound on exp(x) for x >= 0 (truncated Taylor series)."""
    if x < 0:
        raise ValidationError("exp_lower: argument must be nonnegative")
    term = Fraction(1)
    total = Fraction(1)
    for t in range(1, _EXP_TERMS + 1):
        term = term * x / t
        total += term
    return total


def exp_neg_upper(x: Fraction) -> Fraction:
    """Rational upper bound on exp(-x) for x >= 0."""
    return 1 / exp_lower(x)


def ceil_pow2_of_sqrt_minus_one(t: int) -> int:
    """ceil(2 ** (sqrt(t) - 1)) computed exactly for a positive integer t.

    For square t the value is an exact power of two.  Otherwise sqrt(t) is
    irrational, so the ceiling is certified by strict comparisons with
    rational log2 bounds, tightening the precision until they separate.
    """
    if t < 1:
        raise ValidationError("threshold defined for positive t only")
    s = isqrt(t)
    if s * s == t:
        return 1 << (s - 1)

    def certified(c: int, denom: int) -> bool:
        # c is the ceiling iff (log2(c-1)+1)^2 < t < (log2(c)+1)^2.
        above = (log2_lower(c, denom) + 1) ** 2 > t
        below = c == 1 or (log2_upper(c - 1, denom) + 1) ** 2 < t
        return above and below

    c = max(1, round(2.0 ** (t**0.5 - 1.0)))
    denom = _LOG2_DENOM
    while denom <= 1 << 16:
        while (log2_upper(c, denom) + 1) ** 2 < t:
            c += 1
        while c > 1 and (log2_lower(c - 1, denom) + 1) ** 2 > t:
            c -= 1
        if certified(c, denom):
            return c
        denom *= 4
    raise ValidationError("could not certify ceiling at available precision")
