"""Canonical piecewise-constant B2 functions with finitely many breakpoints."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import Bit, Window, fmt_rat, rat
from .errors import EmptyInterval


@dataclass(frozen=True)
class StepFunction:
    """Breakpoints, one value per breakpoint and one per open piece.

    ``interval_values[0]`` is the left tail, ``interval_values[i]`` the value on
    ``(breakpoints[i-1], breakpoints[i])`` and ``interval_values[-1]`` the right
    tail, so ``len(interval_values) == len(breakpoints) + 1``.
    """

    breakpoints: tuple[Fraction, ...] = ()
    point_values: tuple[Bit, ...] = ()
    interval_values: tuple[Bit, ...] = (0,)

    def __post_init__(self):
        n = len(self.breakpoints)
        if len(self.point_values) != n or len(self.interval_values) != n + 1:
            raise ValueError("inconsistent step function layout")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    # -- construction ----------------------------------------------------
    @classmethod
    def build(cls, breakpoints: Sequence, point_values: Sequence[Bit], interval_values: Sequence[Bit]):
        """Build and canonicalize (drop removable breakpoints)."""
        bps = [rat(b) for b in breakpoints]
        pv, iv = list(point_values), list(interval_values)
        keep_b, keep_p, keep_i = [], [], [iv[0]]
        for i, b in enumerate(bps):
            if pv[i] == keep_i[-1] == iv[i + 1]:
                continue
            keep_b.append(b)
            keep_p.append(pv[i])
            keep_i.append(iv[i + 1])
        return cls(tuple(keep_b), tuple(keep_p), tuple(keep_i))

    @classmethod
    def constant(cls, value: Bit) -> "StepFunction":
        return cls((), (), (value,))

    @classmethod
    def from_function(cls, f: Callable[[Fraction], Bit], breakpoints: Sequence) -> "StepFunction":
        """Sample a function known to be constant between the given breakpoints."""
        bps = sorted(set(rat(b) for b in breakpoints))
        if not bps:
            return cls.constant(f(Fraction(0)))
        samples = [bps[0] - 1] + [(a + b) / 2 for a, b in zip(bps, bps[1:])] + [bps[-1] + 1]
        return cls.build(bps, [f(b) for b in bps], [f(s) for s in samples])

    def canonicalize(self) -> "StepFunction":
        return StepFunction.build(self.breakpoints, self.point_values, self.interval_values)

    # -- evaluation ------------------------------------------------------
    def _locate(self, t: Fraction):
        i = bisect.bisect_left(self.breakpoints, t)
        on_bp = i < len(self.breakpoints) and self.breakpoints[i] == t
        return i, on_bp

    def eval(self, t) -> Bit:
        i, on_bp = self._locate(rat(t))
        return self.point_values[i] if on_bp else self.interval_values[i]

    __call__ = eval

    def left_limit(self, t) -> Bit:
        i, _ = self._locate(rat(t))
        return self.interval_values[i]

    def right_limit(self, t) -> Bit:
        i, on_bp = self._locate(rat(t))
        return self.interval_values[i + 1] if on_bp else self.interval_values[i]

    @property
    def left_tail(self) -> Bit:
        return self.interval_values[0]

    @property
    def right_tail(self) -> Bit:
        return self.interval_values[-1]

    def sample_points(self) -> list[Fraction]:
        """One abscissa per breakpoint and per open piece, tails included."""
        bps = self.breakpoints
        if not bps:
            return [Fraction(0)]
        out = [bps[0] - 1]
        for i, b in enumerate(bps):
            out.append(b)
            out.append((b + bps[i + 1]) / 2 if i + 1 < len(bps) else b + 1)
        return out

    # -- algebra ---------------------------------------------------------
    def _combine(self, other: "StepFunction", op) -> "StepFunction":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        if not bps:
            return StepFunction.constant(op(self.left_tail, other.left_tail))
        pv = [op(self.eval(b), other.eval(b)) for b in bps]
        iv = [op(self.left_limit(bps[0]), other.left_limit(bps[0]))]
        iv += [op(self.right_limit(b), other.right_limit(b)) for b in bps]
        return StepFunction.build(bps, pv, iv)

    def __xor__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, lambda a, b: a ^ b)

    def __and__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, lambda a, b: a & b)

    def translate(self, tau) -> "StepFunction":
        tau = rat(tau)
        return StepFunction(tuple(b + tau for b in self.breakpoints), self.point_values, self.interval_values)

    def reflect(self) -> "StepFunction":
        return StepFunction(
            tuple(-b for b in reversed(self.breakpoints)),
            tuple(reversed(self.point_values)),
            tuple(reversed(self.interval_values)),
        )

    def limit_left(self) -> "StepFunction":
        iv = self.interval_values
        return StepFunction.build(self.breakpoints, iv[:-1], iv)

    def limit_right(self) -> "StepFunction":
        iv = self.interval_values
        return StepFunction.build(self.breakpoints, iv[1:], iv)

    def deriv_left(self) -> "StepFunction":
        pv = [p ^ l for p, l in zip(self.point_values, self.interval_values[:-1])]
        return StepFunction.build(self.breakpoints, pv, [0] * len(self.interval_values))

    def deriv_right(self) -> "StepFunction":
        pv = [p ^ r for p, r in zip(self.point_values, self.interval_values[1:])]
        return StepFunction.build(self.breakpoints, pv, [0] * len(self.interval_values))

    # -- support ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.breakpoints and self.left_tail == 0

    def has_bounded_support(self) -> bool:
        return self.left_tail == 0 and self.right_tail == 0

    def hull(self) -> Optional[Window]:
        """Smallest closed window containing the support (None for the zero function)."""
        if not self.breakpoints or not self.has_bounded_support():
            return None
        return Window(self.breakpoints[0], self.breakpoints[-1])

    def support_descriptor(self) -> "SupportDescriptor":
        return support_descriptor(self)

    def dsl(self) -> str:
        from .dsl import step_to_ast, print_canonical

        return print_canonical(step_to_ast(self))

    def __repr__(self) -> str:
        return f"StepFunction({self.dsl()})"


TestFunction = StepFunction


@dataclass(frozen=True)
class Component:
    """A maximal piece of the support: ``kind`` is ``"open"`` or ``"point"``.

    ``lo``/``hi`` of an open component may be None for an unbounded tail.
    """

    kind: str
    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __str__(self):
        if self.kind == "point":
            return "{" + fmt_rat(self.lo) + "}"
        lo = "-inf" if self.lo is None else fmt_rat(self.lo)
        hi = "inf" if self.hi is None else fmt_rat(self.hi)
        return f"({lo}, {hi})"


@dataclass(frozen=True)
class SupportDescriptor:
    components: tuple[Component, ...]
    left_unbounded: bool
    right_unbounded: bool

    @property
    def open_count(self) -> int:
        return sum(c.kind == "open" for c in self.components)

    @property
    def point_count(self) -> int:
        return sum(c.kind == "point" for c in self.components)


def support_descriptor(f: StepFunction) -> SupportDescriptor:
    bps, pv, iv = f.breakpoints, f.point_values, f.interval_values
    comps: list[Component] = []
    start: Optional[Fraction] = None
    open_run = iv[0] == 1
    for i, b in enumerate(bps):
        left, right = iv[i], iv[i + 1]
        if open_run and pv[i] == 1 and right == 1:
            continue
        if open_run:
            comps.append(Component("open", start, b))
            open_run = False
        if pv[i] == 1 and not (left == 1 and right == 1):
            comps.append(Component("point", b, b))
        if right == 1:
            open_run, start = True, b
    if open_run:
        comps.append(Component("open", start, None))
    return SupportDescriptor(tuple(comps), f.left_tail == 1, f.right_tail == 1)


def chi_point(t) -> StepFunction:
    return StepFunction((rat(t),), (1,), (0, 0))


def chi_interval(a, b) -> StepFunction:
    """Indicator of the open interval (a, b); None stands for an infinite end."""
    if a is None and b is None:
        return StepFunction.constant(1)
    if a is None:
        return StepFunction((rat(b),), (0,), (1, 0))
    if b is None:
        return StepFunction((rat(a),), (0,), (0, 1))
    a, b = rat(a), rat(b)
    if a >= b:
        raise EmptyInterval(f"empty interval ({fmt_rat(a)}, {fmt_rat(b)})")
    return StepFunction((a, b), (0, 0), (0, 1, 0))


def chi(desc) -> StepFunction:
    """``chi(t)`` for a point, ``chi((a, b))`` for an open interval."""
    if isinstance(desc, tuple):
        return chi_interval(*desc)
    return chi_point(desc)


ZERO = StepFunction.constant(0)
ONE = StepFunction.constant(1)


def xor_fn(f: StepFunction, g: StepFunction) -> StepFunction:
    return f ^ g


def and_fn(f: StepFunction, g: StepFunction) -> StepFunction:
    return f & g


def translate_fn(f: StepFunction, tau) -> StepFunction:
    return f.translate(tau)


def limit_fn_left(f: StepFunction) -> StepFunction:
    return f.limit_left()


def limit_fn_right(f: StepFunction) -> StepFunction:
    return f.limit_right()


def deriv_left(f: StepFunction) -> StepFunction:
    return f.deriv_left()


def deriv_right(f: StepFunction) -> StepFunction:
    return f.deriv_right()
