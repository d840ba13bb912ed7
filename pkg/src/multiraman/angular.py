"""Exact Wigner 3-j and 6-j symbols for small angular momenta.

All values are computed from the Racah single-sum formulas using exact
integer factorial arithmetic (``fractions.Fraction``), with a single
square root taken at the very end.  For the j <= 6 range needed by the
geometric dipole factors this eliminates cancellation error; results are
accurate to ~1 ulp.

Angular momenta are stored as doubled integers (``HalfInt``) so that
half-integer values are exact and all selection rules reduce to integer
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["HalfInt", "triangle_ok", "wigner_3j", "wigner_6j"]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer stored exactly as twice its value."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int):
            raise TypeError(f"twice must be int, got {type(self.twice).__name__}")

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce an int, Fraction, float or HalfInt to a HalfInt.

        Floats are accepted only when 2*value is exactly integral, so
        0.5 and 1.5 work but 0.3 raises.
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an angular momentum")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Rational):
            doubled = 2 * Fraction(value)
            if doubled.denominator != 1:
                raise ValueError(f"{value!r} is not an integer or half-integer")
            return cls(int(doubled))
        if isinstance(value, float):
            doubled = 2.0 * value
            if doubled != int(doubled):
                raise ValueError(f"{value!r} is not an integer or half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot interpret {value!r} as an angular momentum")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __repr__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _tj(value) -> int:
    return HalfInt.of(value).twice


def triangle_ok(a, b, c) -> bool:
    """Triangle rule: |a-b| <= c <= a+b with integer perimeter."""
    ta, tb, tc = _tj(a), _tj(b), _tj(c)
    if (ta + tb + tc) % 2 != 0:
        return False
    return abs(ta - tb) <= tc <= ta + tb


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3-j symbol (j1 j2 j3 / m1 m2 m3).

    Returns exactly 0.0 when m1+m2+m3 != 0 or the triangle rule fails.
    Raises ValueError when any (j, m) pair differs by a non-integer or
    |m| > j.
    """
    tj1, tj2, tj3 = _tj(j1), _tj(j2), _tj(j3)
    tm1, tm2, tm3 = _tj(m1), _tj(m2), _tj(m3)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if tj < 0:
            raise ValueError("angular momentum magnitudes must be >= 0")
        if (tj - tm) % 2 != 0:
            raise ValueError(f"j={tj}/2 and m={tm}/2 differ by a non-integer")
        if abs(tm) > tj:
            raise ValueError(f"|m|={abs(tm)}/2 exceeds j={tj}/2")
    return _wigner_3j_core(tj1, tj2, tj3, tm1, tm2, tm3)


@lru_cache(maxsize=None)
def _wigner_3j_core(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> float:
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not triangle_ok(HalfInt(tj1), HalfInt(tj2), HalfInt(tj3)):
        return 0.0

    # All of these are integers once the selection rules hold.
    f = math.factorial
    a1 = (tj1 + tj2 - tj3) // 2
    a2 = (tj1 - tj2 + tj3) // 2
    a3 = (-tj1 + tj2 + tj3) // 2
    radicand = Fraction(f(a1) * f(a2) * f(a3), f((tj1 + tj2 + tj3) // 2 + 1))
    radicand *= (
        f((tj1 + tm1) // 2) * f((tj1 - tm1) // 2)
        * f((tj2 + tm2) // 2) * f((tj2 - tm2) // 2)
        * f((tj3 + tm3) // 2) * f((tj3 - tm3) // 2)
    )

    k_min = max(0, (tj2 - tj3 - tm1) // 2, (tj1 - tj3 + tm2) // 2)
    k_max = min(a1, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        den = (
            f(k)
            * f(a1 - k)
            * f((tj1 - tm1) // 2 - k)
            * f((tj2 + tm2) // 2 - k)
            * f((tj3 - tj2 + tm1) // 2 + k)
            * f((tj3 - tj1 - tm2) // 2 + k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return 0.0

    sign = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    if total < 0:
        sign = -sign
    return sign * math.sqrt(float(radicand * total * total))


def wigner_6j(j1, j2, j3, j4, j5, j6) -> float:
    """Wigner 6-j symbol {j1 j2 j3 / j4 j5 j6}.

    Returns exactly 0.0 when any of the four triads (j1 j2 j3),
    (j1 j5 j6), (j4 j2 j6), (j4 j5 j3) violates the triangle rule.
    """
    tjs = tuple(_tj(j) for j in (j1, j2, j3, j4, j5, j6))
    if any(tj < 0 for tj in tjs):
        raise ValueError("angular momentum magnitudes must be >= 0")
    return _wigner_6j_core(*tjs)


@lru_cache(maxsize=None)
def _wigner_6j_core(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int) -> float:
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    for ta, tb, tc in triads:
        if (ta + tb + tc) % 2 != 0 or not (abs(ta - tb) <= tc <= ta + tb):
            return 0.0

    f = math.factorial
    radicand = Fraction(1)
    for ta, tb, tc in triads:
        radicand *= Fraction(
            f((ta + tb - tc) // 2) * f((ta - tb + tc) // 2) * f((-ta + tb + tc) // 2),
            f((ta + tb + tc) // 2 + 1),
        )

    s1 = (tj1 + tj2 + tj3) // 2
    s2 = (tj1 + tj5 + tj6) // 2
    s3 = (tj4 + tj2 + tj6) // 2
    s4 = (tj4 + tj5 + tj3) // 2
    p1 = (tj1 + tj2 + tj4 + tj5) // 2
    p2 = (tj2 + tj3 + tj5 + tj6) // 2
    p3 = (tj1 + tj3 + tj4 + tj6) // 2

    total = Fraction(0)
    for t in range(max(s1, s2, s3, s4), min(p1, p2, p3) + 1):
        den = (
            f(t - s1) * f(t - s2) * f(t - s3) * f(t - s4)
            * f(p1 - t) * f(p2 - t) * f(p3 - t)
        )
        total += Fraction((-1 if t % 2 else 1) * f(t + 1), den)
    if total == 0:
        return 0.0

    sign = 1 if total > 0 else -1
    return sign * math.sqrt(float(radicand * total * total))
