"""B2 scalars, the exact time axis, parity and windows.

Bits are plain ``int`` values restricted to 0 and 1: ``^`` is the ring sum
and ``&`` the ring product. Abscissas are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

Bit = int
Rational = Fraction
RationalLike = Union[int, str, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?)(\d+)(?:/(\d+)|\.(\d+))?\s*$")


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or DSL literal (``p/q``, ``3``, ``-0.25``) to a Fraction.

    Floats are refused: they would smuggle binary rounding into the time axis.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational literal")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if not m:
            raise ValueError(f"not a rational literal: {value!r}")
        sign, whole, den, frac = m.groups()
        if den is not None:
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            q = Fraction(int(whole), int(den))
        elif frac is not None:
            q = Fraction(int(whole + frac), 10 ** len(frac))
        else:
            q = Fraction(int(whole))
        return -q if sign == "-" else q
    raise TypeError(f"cannot use {type(value).__name__} as an exact abscissa")


def fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def bit(value) -> Bit:
    if value not in (0, 1):
        raise ValueError(f"not a bit: {value!r}")
    return int(value)


def parity(n: int) -> Bit:
    if n < 0:
        raise ValueError("parity is defined on nonnegative integers")
    return n & 1


def parity_additivity_check(m: int, n: int) -> tuple[Bit, Bit]:
    return parity(m + n), parity(m) ^ parity(n)


def mod2_sum(bits: Iterable[Bit]) -> Bit:
    # The empty sum is 0: an empty support counts as even.
    return reduce(lambda a, b: a ^ b, bits, 0)


@dataclass(frozen=True)
class Window:
    """Closed bounded interval ``[lo, hi]`` of the time axis."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"window lower end {self.lo} exceeds upper end {self.hi}")

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi

    def shift(self, tau) -> "Window":
        return Window(self.lo + tau, self.hi + tau)

    def expand(self, margin) -> "Window":
        return Window(self.lo - margin, self.hi + margin)

    def hull(self, other: "Window") -> "Window":
        return Window(min(self.lo, other.lo), max(self.hi, other.hi))


def min_gap(points: Iterable[Fraction]) -> Fraction | None:
    """Smallest positive distance between distinct members, or None if fewer than two."""
    pts = sorted(set(points))
    if len(pts) < 2:
        return None
    return min(b - a for a, b in zip(pts, pts[1:]))
