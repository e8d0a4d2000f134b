"""Interval and point functions attached to a distribution.

For a distribution ``f``:

* ``F(a, b) = <f, chi((a, b))>`` for ``a < b`` (0 otherwise),
* ``F0(t) = <f, chi{t}>``,
* ``F*(t)`` and ``F_*(t)``: the limits of ``F(t - e, t)`` and ``F(t, t + e)``.

These four functions determine ``f`` and decide whether it is regular.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .core import Bit, Window, fmt_rat, min_gap, rat
from .dist import HALF, Distribution, apply
from .errors import LimitNotStabilized, NoVanishingFamily
from .step_fn import StepFunction, chi_interval, chi_point
from .test_fn import as_test_function

F_STAR = "F*"
F_SUBSTAR = "F_*"
F_ZERO = "F0"


@dataclass(frozen=True)
class FundamentalBundle:
    """The four fundamental functions of ``source``.

    Values are memoized per bundle; a cache entry is written once with its
    final value, so concurrent readers can at worst recompute it.
    """

    source: Distribution
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def F_open(self, a, b) -> Bit:
        a, b = rat(a), rat(b)
        if a >= b:
            return 0
        key = ("open", a, b)
        if key not in self._cache:
            self._cache[key] = apply(self.source, chi_interval(a, b))
        return self._cache[key]

    def F_point(self, t) -> Bit:
        key = ("point", rat(t))
        if key not in self._cache:
            self._cache[key] = apply(self.source, chi_point(key[1]))
        return self._cache[key]

    def _eps(self, t: Fraction) -> Fraction:
        crit = self.source.critical(Window(t - 2, t + 2)) | {t}
        gap = min_gap(crit)
        return HALF if gap is None else min(HALF, gap / 2)

    def _side_limit(self, t, left: bool) -> Bit:
        t = rat(t)
        eps = self._eps(t)

        def value(e):
            return self.F_open(t - e, t) if left else self.F_open(t, t + e)

        v1, v2 = value(eps / 2), value(eps / 4)
        if v1 != v2:
            raise LimitNotStabilized(f"interval function did not stabilize at t={fmt_rat(t)}")
        return v1

    def F_star(self, t) -> Bit:
        """Limit of ``F(t - e, t)`` as ``e -> 0+``."""
        return self._side_limit(t, left=True)

    def F_substar(self, t) -> Bit:
        """Limit of ``F(t, t + e)`` as ``e -> 0+``."""
        return self._side_limit(t, left=False)


def bundle(f: Distribution) -> FundamentalBundle:
    return FundamentalBundle(f)


def F_open(b: FundamentalBundle, a, c) -> Bit:
    return b.F_open(a, c)


def F_point(b: FundamentalBundle, t) -> Bit:
    return b.F_point(t)


def F_star(b: FundamentalBundle, t) -> Bit:
    return b.F_star(t)


def F_substar(b: FundamentalBundle, t) -> Bit:
    return b.F_substar(t)


def support_indicator(b: FundamentalBundle, a, c) -> Bit:
    """1 when the pair ``(a, c)`` lies in the support ``{F = 1}``."""
    return b.F_open(a, c)


def _probes(b: FundamentalBundle, w: Window) -> list[Fraction]:
    crit = {c for c in b.source.critical(w) if w.lo <= c <= w.hi} | {w.lo, w.hi}
    pts = sorted(crit)
    mids = [(x + y) / 2 for x, y in zip(pts, pts[1:])]
    return sorted(set(pts) | set(mids))


@dataclass(frozen=True)
class WindowReport:
    window: Window
    probes: tuple[Fraction, ...]
    points: tuple[Fraction, ...]  # F0 = 1
    adjacent_pairs: tuple[tuple[Fraction, Fraction], ...]  # F = 1 on consecutive probes
    pair_count: int  # pairs of probes (any distance) with F = 1


def support_window_report(b: FundamentalBundle, w: Window) -> WindowReport:
    probes = _probes(b, w)
    points = tuple(t for t in probes if b.F_point(t))
    adjacent = tuple((x, y) for x, y in zip(probes, probes[1:]) if b.F_open(x, y))
    count = sum(b.F_open(x, y) for i, x in enumerate(probes) for y in probes[i + 1 :])
    return WindowReport(w, tuple(probes), points, adjacent, count)


def _interior_vanishes(b: FundamentalBundle, lo: Fraction, hi: Fraction) -> bool:
    q1, mid, q3 = lo + (hi - lo) / 4, (lo + hi) / 2, lo + 3 * (hi - lo) / 4
    return not (b.F_open(q1, q3) or b.F_point(mid) or b.F_open(q1, mid) or b.F_open(mid, q3))


def _piece_identity(b: FundamentalBundle, lo: Fraction, hi: Fraction) -> bool:
    """``F(lo, hi) = F_*(lo) + F0(t) + F*(hi)`` at interior probes ``t``."""
    for t in (lo + (hi - lo) / 3, (lo + hi) / 2, lo + 2 * (hi - lo) / 3):
        if b.F_open(lo, hi) != b.F_substar(lo) ^ b.F_point(t) ^ b.F_star(hi):
            return False
    return True


def decompose(b: FundamentalBundle, w: Window, vanishing: bool = True, max_refine: int = 6) -> list[Fraction]:
    """Strictly increasing abscissas of ``w`` that split it into clean pieces.

    On every piece ``(t_i, t_i+1)`` the interval function satisfies
    ``F(t_i, t_i+1) = F_*(t_i) + F0(t) + F*(t_i+1)`` for interior ``t``; such a
    family always exists. With ``vanishing=True`` the pieces must also carry
    nothing in their interior (``F`` and ``F0`` vanish strictly inside), which
    fails for sources spread over whole intervals such as Parity; refinement
    by bisection is attempted before :class:`NoVanishingFamily` is raised.
    """
    pts = sorted({c for c in b.source.critical(w) if w.lo <= c <= w.hi} | {w.lo, w.hi})
    if w.lo == w.hi:
        return pts
    out = [pts[0]]
    stack = [(x, y, 0) for x, y in zip(pts, pts[1:])][::-1]
    while stack:
        lo, hi, depth = stack.pop()
        clean = _piece_identity(b, lo, hi) and (not vanishing or _interior_vanishes(b, lo, hi))
        if clean:
            out.append(hi)
            continue
        if depth >= max_refine:
            raise NoVanishingFamily(
                f"no family with vanishing interior on [{fmt_rat(w.lo)}, {fmt_rat(w.hi)}]: "
                f"F does not vanish inside ({fmt_rat(lo)}, {fmt_rat(hi)})"
            )
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return out


class FundamentalFunctional:
    """A functional rebuilt from an interval function and a point function.

    ``phi`` is split on its own breakpoints ``t_i``; the value is
    ``XOR_i F_point(t_i) phi(t_i)  XOR  XOR_i F_pair(t_i, t_i+1) phi(mid_i)``.
    """

    def __init__(self, F_pair: Callable, F_point: Callable):
        self.F_pair = F_pair
        self.F_point = F_point

    def apply(self, phi: StepFunction) -> Bit:
        as_test_function(phi)
        bps = phi.breakpoints
        out = 0
        for t, v in zip(bps, phi.point_values):
            if v:
                out ^= self.F_point(t)
        for i in range(1, len(bps)):
            if phi.interval_values[i]:
                out ^= self.F_pair(bps[i - 1], bps[i])
        return out

    __call__ = apply


def from_fundamental(F_pair: Callable, F_point: Callable) -> FundamentalFunctional:
    return FundamentalFunctional(F_pair, F_point)


@dataclass(frozen=True)
class RegularOnWindow:
    window: Window

    def __str__(self):
        return f"REGULAR on [{fmt_rat(self.window.lo)}, {fmt_rat(self.window.hi)}]"


@dataclass(frozen=True)
class SingularWitness:
    t: Fraction
    which: str  # F* | F_* | F0

    def __str__(self):
        return f"SINGULAR at t={fmt_rat(self.t)} ({self.which})"


Verdict = Union[RegularOnWindow, SingularWitness]


def regularity_criterion(b: FundamentalBundle, w: Window) -> Verdict:
    """Regular on ``w`` iff F* and F_* vanish and F0 is 1 only at isolated points.

    All four functions change value only at critical abscissas, so probing
    those, the midpoints between them and the window ends is exhaustive.
    """
    crit = {c for c in b.source.critical(w) if w.lo <= c <= w.hi}
    for t in _probes(b, w):
        if b.F_star(t):
            return SingularWitness(t, F_STAR)
        if b.F_substar(t):
            return SingularWitness(t, F_SUBSTAR)
        if t not in crit and b.F_point(t):
            return SingularWitness(t, F_ZERO)
    return RegularOnWindow(w)
