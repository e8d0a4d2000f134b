"""Exact locally finite subsets of the rational time axis.

A :class:`LocallyFiniteSet` is a finite set of isolated points combined with
finitely many arithmetic progressions ``{offset + z*period}`` whose index ``z``
runs over all integers, the nonnegative integers or the nonpositive integers.
Membership is XOR-based, which makes the family closed under symmetric
difference without ever expanding a progression.

Canonical form
--------------
* every progression is stored with one common period ``D`` per set, one
  progression per residue class modulo ``D``, coarsened back to a larger
  period when whole residue families agree;
* ``points`` are added points lying on no progression;
* ``excluded`` are points removed from a progression; a ray never starts at
  an excluded point and is never adjacent to an added point of its class.

Equality is semantic (two sets are equal iff their symmetric difference is
empty), so alternative progression layouts compare equal.
"""
from __future__ import annotations

import enum
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import Window, fmt_rat, rat
from .errors import ZeroPeriod

ALL = "all"
NONNEG = "nonneg"
NONPOS = "nonpos"


class SetClass(enum.Enum):
    FINITE = "Finite"
    INFERIORLY_FINITE = "InferiorlyFinite"
    SUPERIORLY_FINITE = "SuperiorlyFinite"
    LOCALLY_FINITE_ONLY = "LocallyFiniteOnly"


@dataclass(frozen=True, order=True)
class Progression:
    """``{offset + z*period}`` with ``z`` ranging over ``range_``.

    For the half-infinite kinds ``offset`` is the extreme element (the least
    element of a ``nonneg`` ray, the greatest of a ``nonpos`` ray).
    """

    offset: Fraction
    period: Fraction
    range_: str = ALL

    def __post_init__(self):
        object.__setattr__(self, "offset", rat(self.offset))
        object.__setattr__(self, "period", rat(self.period))
        if self.period == 0:
            raise ZeroPeriod("progression period must be nonzero")
        if self.period < 0:
            raise ZeroPeriod("progression period must be positive")
        if self.range_ not in (ALL, NONNEG, NONPOS):
            raise ValueError(f"bad progression range {self.range_!r}")

    def index_of(self, t: Fraction) -> Optional[int]:
        z = (t - self.offset) / self.period
        if z.denominator != 1:
            return None
        z = int(z)
        if self.range_ == NONNEG and z < 0:
            return None
        if self.range_ == NONPOS and z > 0:
            return None
        return z

    def __contains__(self, t) -> bool:
        return self.index_of(rat(t)) is not None

    def z_bounds(self, lo: Optional[Fraction], hi: Optional[Fraction]):
        """Inclusive index bounds for members in ``[lo, hi]``; None means unbounded."""
        zlo = None if lo is None else math.ceil((lo - self.offset) / self.period)
        zhi = None if hi is None else math.floor((hi - self.offset) / self.period)
        if self.range_ == NONNEG:
            zlo = 0 if zlo is None else max(zlo, 0)
        elif self.range_ == NONPOS:
            zhi = 0 if zhi is None else min(zhi, 0)
        return zlo, zhi

    def members(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        zlo, zhi = self.z_bounds(lo, hi)
        return [self.offset + z * self.period for z in range(zlo, zhi + 1)]

    def translate(self, tau: Fraction) -> "Progression":
        return Progression(self.offset + tau, self.period, self.range_)

    def reflect(self) -> "Progression":
        flipped = {ALL: ALL, NONNEG: NONPOS, NONPOS: NONNEG}[self.range_]
        return Progression(-self.offset, self.period, flipped)

    def dsl(self) -> str:
        name = {ALL: "PROG", NONNEG: "PROGP", NONPOS: "PROGM"}[self.range_]
        return f"{name}({fmt_rat(self.offset)}, {fmt_rat(self.period)})"


def _lcm_rational(a: Fraction, b: Fraction) -> Fraction:
    num = a.numerator * b.numerator // math.gcd(a.numerator, b.numerator)
    return Fraction(num, math.gcd(a.denominator, b.denominator))


def _split(p: Progression, big: Fraction) -> list[Progression]:
    """Rewrite ``p`` as progressions of period ``big`` (a multiple of p.period)."""
    m = big / p.period
    assert m.denominator == 1
    m = int(m)
    if p.range_ == ALL:
        return [Progression(p.offset + r * p.period, big, ALL) for r in range(m)]
    if p.range_ == NONNEG:
        return [Progression(p.offset + r * p.period, big, NONNEG) for r in range(m)]
    return [Progression(p.offset - r * p.period, big, NONPOS) for r in range(m)]


def _residue(offset: Fraction, period: Fraction) -> Fraction:
    return offset - period * math.floor(offset / period)


def _canonicalize(progs: Iterable[Progression], toggles: Iterable[Fraction]):
    progs = list(progs)
    toggled = {p for p, c in Counter(toggles).items() if c % 2}
    if not progs:
        return (), tuple(sorted(toggled)), ()

    big = progs[0].period
    for p in progs[1:]:
        big = _lcm_rational(big, p.period)

    # Per residue class: an "all" coefficient and a multiset of up-ray starts
    # (down(k) is rewritten as all ^ up(k+1)).
    all_coef: dict[Fraction, int] = defaultdict(int)
    ups: dict[Fraction, Counter] = defaultdict(Counter)
    for p in progs:
        for q in _split(p, big):
            b = _residue(q.offset, big)
            k = int((q.offset - b) / big)
            if q.range_ == ALL:
                all_coef[b] ^= 1
            elif q.range_ == NONNEG:
                ups[b][k] += 1
            else:
                all_coef[b] ^= 1
                ups[b][k + 1] += 1

    classes: dict[Fraction, tuple[str, int]] = {}
    for b in set(all_coef) | set(ups):
        starts = sorted(k for k, c in ups[b].items() if c % 2)
        # up(k1) ^ up(k2) is the finite run k1 .. k2-1
        while len(starts) >= 2:
            k1, k2 = starts.pop(0), starts.pop(0)
            for k in range(k1, k2):
                toggled ^= {b + k * big}
        a = all_coef[b]
        if starts:
            k = starts[0]
            classes[b] = (NONNEG, k) if not a else (NONPOS, k - 1)
        elif a:
            classes[b] = (ALL, 0)

    result = _coarsen(classes, big)

    points, excluded = [], []
    for t in toggled:
        if any(t in p for p in result):
            excluded.append(t)
        else:
            points.append(t)
    result, points, excluded = _absorb(result, set(points), set(excluded))
    return tuple(sorted(result)), tuple(sorted(points)), tuple(sorted(excluded))


def _coarsen(classes: dict, big: Fraction) -> list[Progression]:
    remaining = dict(classes)
    out: list[Progression] = []
    for m in range(len(remaining), 1, -1):
        period = big / m
        for b in sorted(remaining):
            if b not in remaining or b >= period:
                continue
            family = [b + j * period for j in range(m)]
            if not all(r in remaining for r in family):
                continue
            kinds = {remaining[r][0] for r in family}
            if len(kinds) != 1:
                continue
            kind = kinds.pop()
            if kind == ALL:
                out.append(Progression(b, period, ALL))
            else:
                ends = sorted(r + remaining[r][1] * big for r in family)
                if any(y - x != period for x, y in zip(ends, ends[1:])):
                    continue
                start = ends[0] if kind == NONNEG else ends[-1]
                out.append(Progression(start, period, kind))
            for r in family:
                del remaining[r]
    for b, (kind, k) in remaining.items():
        out.append(Progression(b + k * big, big, kind))
    return out


def _absorb(progs: list[Progression], points: set, excluded: set):
    out = []
    for p in progs:
        if p.range_ == ALL:
            out.append(p)
            continue
        step = p.period if p.range_ == NONNEG else -p.period
        start = p.offset
        while True:
            if start in excluded:
                excluded.discard(start)
                start += step
            elif start - step in points:
                points.discard(start - step)
                start -= step
            else:
                break
        out.append(Progression(start, p.period, p.range_))
    return out, points, excluded


class LocallyFiniteSet:
    """Immutable, window-enumerable locally finite subset of the rationals."""

    __slots__ = ("progressions", "points", "excluded")

    def __init__(self, points: Iterable = (), progressions: Iterable[Progression] = ()):
        progs, pts, exc = _canonicalize(progressions, (rat(p) for p in points))
        self._set(progs, pts, exc)

    def _set(self, progs, pts, exc):
        object.__setattr__(self, "progressions", progs)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "excluded", exc)

    def __setattr__(self, name, value):
        raise AttributeError("LocallyFiniteSet is immutable")

    @classmethod
    def _raw(cls, progs, toggles) -> "LocallyFiniteSet":
        obj = cls.__new__(cls)
        obj._set(*_canonicalize(progs, toggles))
        return obj

    @classmethod
    def prog(cls, offset, period, range_: str = ALL) -> "LocallyFiniteSet":
        return cls(progressions=[Progression(rat(offset), rat(period), range_)])

    empty_set: "LocallyFiniteSet"

    # -- queries ---------------------------------------------------------
    def contains(self, t) -> bool:
        t = rat(t)
        if t in self.points:
            return True
        if t in self.excluded:
            return False
        return any(t in p for p in self.progressions)

    __contains__ = contains

    def enumerate(self, w: Window) -> list[Fraction]:
        found = set(p for p in self.points if w.lo <= p <= w.hi)
        for p in self.progressions:
            found.update(p.members(w.lo, w.hi))
        found.difference_update(self.excluded)
        return sorted(found)

    def is_empty(self) -> bool:
        return not self.progressions and not self.points

    def is_finite(self) -> bool:
        return not self.progressions

    def finite_points(self) -> tuple[Fraction, ...]:
        if self.progressions:
            raise ValueError("set is infinite")
        return self.points

    def classify(self) -> SetClass:
        if not self.progressions:
            return SetClass.FINITE
        kinds = {p.range_ for p in self.progressions}
        if kinds == {NONNEG}:
            return SetClass.INFERIORLY_FINITE
        if kinds == {NONPOS}:
            return SetClass.SUPERIORLY_FINITE
        return SetClass.LOCALLY_FINITE_ONLY

    def lower_bound(self) -> Optional[Fraction]:
        """A lower bound of the set, None if unbounded below or empty."""
        if any(p.range_ != NONNEG for p in self.progressions):
            return None
        cands = list(self.points) + [p.offset for p in self.progressions]
        return min(cands) if cands else None

    def upper_bound(self) -> Optional[Fraction]:
        if any(p.range_ != NONPOS for p in self.progressions):
            return None
        cands = list(self.points) + [p.offset for p in self.progressions]
        return max(cands) if cands else None

    # -- algebra ---------------------------------------------------------
    def _toggles(self):
        return self.points + self.excluded

    def sym_diff(self, other: "LocallyFiniteSet") -> "LocallyFiniteSet":
        return LocallyFiniteSet._raw(
            self.progressions + other.progressions, self._toggles() + other._toggles()
        )

    __xor__ = sym_diff

    def translate(self, tau) -> "LocallyFiniteSet":
        tau = rat(tau)
        return LocallyFiniteSet._raw(
            [p.translate(tau) for p in self.progressions], [t + tau for t in self._toggles()]
        )

    def reflect(self) -> "LocallyFiniteSet":
        return LocallyFiniteSet._raw(
            [p.reflect() for p in self.progressions], [-t for t in self._toggles()]
        )

    def _with_truth(self, backbone: list[Progression], finite: Iterable[Fraction], candidates, truth):
        """Build ``backbone ^ finite`` then repair membership on ``candidates``."""
        draft = LocallyFiniteSet._raw(backbone, list(finite))
        fixes = [c for c in set(candidates) if draft.contains(c) != truth(c)]
        if not fixes:
            return draft
        return draft.sym_diff(LocallyFiniteSet(fixes))

    def intersection(self, other: "LocallyFiniteSet") -> "LocallyFiniteSet":
        candidates = self._toggles() + other._toggles()
        truth = lambda t: self.contains(t) and other.contains(t)  # noqa: E731
        if not self.progressions or not other.progressions:
            finite_side, other_side = (self, other) if not self.progressions else (other, self)
            pts = [p for p in finite_side.points if other_side.contains(p)]
            return LocallyFiniteSet(pts)
        backbone, finite = _intersect_backbones(self.progressions, other.progressions)
        return self._with_truth(backbone, finite, candidates, truth)

    __and__ = intersection

    def union(self, other: "LocallyFiniteSet") -> "LocallyFiniteSet":
        return self.sym_diff(other).sym_diff(self.intersection(other))

    __or__ = union

    def restrict(self, lo=None, hi=None, lo_closed=True, hi_closed=True) -> "LocallyFiniteSet":
        """Intersection with an interval; ``None`` endpoints are infinite."""
        lo = None if lo is None else rat(lo)
        hi = None if hi is None else rat(hi)

        def inside(t):
            if lo is not None and (t < lo or (t == lo and not lo_closed)):
                return False
            if hi is not None and (t > hi or (t == hi and not hi_closed)):
                return False
            return True

        backbone, finite = [], []
        for p in self.progressions:
            zlo, zhi = p.z_bounds(lo, hi)
            if zlo is not None and zhi is not None:
                finite.extend(p.offset + z * p.period for z in range(zlo, zhi + 1))
            elif zlo is not None:
                backbone.append(Progression(p.offset + zlo * p.period, p.period, NONNEG))
            elif zhi is not None:
                backbone.append(Progression(p.offset + zhi * p.period, p.period, NONPOS))
            else:
                backbone.append(p)
        candidates = list(self._toggles()) + [x for x in (lo, hi) if x is not None]
        return self._with_truth(backbone, finite, candidates, lambda t: self.contains(t) and inside(t))

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LocallyFiniteSet):
            return NotImplemented
        if (self.progressions, self.points, self.excluded) == (
            other.progressions,
            other.points,
            other.excluded,
        ):
            return True
        return self.sym_diff(other).is_empty()

    def __hash__(self) -> int:
        # coarse but consistent with semantic equality
        return hash((self.classify(), len(self.points) if not self.progressions else -1))

    def __bool__(self) -> bool:
        return not self.is_empty()

    def dsl(self) -> str:
        terms = []
        if self.points or not self.progressions:
            terms.append("{" + ", ".join(fmt_rat(p) for p in self.points) + "}")
        terms.extend(p.dsl() for p in self.progressions)
        text = " D ".join(terms)
        if self.excluded:
            text += " D {" + ", ".join(fmt_rat(p) for p in self.excluded) + "}"
        return text

    def __repr__(self) -> str:
        return f"LocallyFiniteSet({self.dsl()})"


def _intersect_backbones(pa, pb):
    big = pa[0].period
    for p in list(pa[1:]) + list(pb):
        big = _lcm_rational(big, p.period)

    def classes(progs):
        out = {}
        for p in progs:
            for q in _split(p, big):
                b = _residue(q.offset, big)
                out[b] = (q.range_, int((q.offset - b) / big))
        return out

    ca, cb = classes(pa), classes(pb)
    backbone, finite = [], []
    for b in set(ca) & set(cb):
        (ka, ia), (kb, ib) = ca[b], cb[b]
        if ka == ALL:
            kind, k = kb, ib
        elif kb == ALL:
            kind, k = ka, ia
        elif ka == kb == NONNEG:
            kind, k = NONNEG, max(ia, ib)
        elif ka == kb == NONPOS:
            kind, k = NONPOS, min(ia, ib)
        else:
            up, down = (ia, ib) if ka == NONNEG else (ib, ia)
            finite.extend(b + z * big for z in range(up, down + 1))
            continue
        backbone.append(Progression(b + k * big, big, kind))
    return backbone, finite


LocallyFiniteSet.empty_set = LocallyFiniteSet()
EMPTY = LocallyFiniteSet.empty_set


def enumerate_set(s: LocallyFiniteSet, w: Window) -> list[Fraction]:
    return s.enumerate(w)


def sym_diff(a: LocallyFiniteSet, b: LocallyFiniteSet) -> LocallyFiniteSet:
    return a.sym_diff(b)


def translate_set(s: LocallyFiniteSet, tau) -> LocallyFiniteSet:
    return s.translate(tau)


def reflect_set(s: LocallyFiniteSet) -> LocallyFiniteSet:
    return s.reflect()


def classify(s: LocallyFiniteSet) -> SetClass:
    return s.classify()
