"""Distributions over one-variable binary test functions.

A distribution is an immutable expression tree. :func:`apply` evaluates it
exactly on a test function; lateral limits are realized by translating the
test function by an ``eps`` smaller than every gap between the abscissas that
can influence the result, so no numerical limit is ever taken.

The node classes are the raw syntax (what the DSL builds). The lower-case
constructors (:func:`limit_left`, :func:`scale_dist`, ...) additionally apply
the simplifications that hold as identities of functionals.
"""
from __future__ import annotations

from collections import Counter
from contextvars import ContextVar
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .core import Bit, Window, min_gap, parity, rat
from .errors import LimitNotStabilized
from .point_sets import EMPTY, LocallyFiniteSet
from .step_fn import ONE, StepFunction, TestFunction, chi_interval, chi_point, limit_fn_left
from .test_fn import as_test_function, component_count, integral

HALF = Fraction(1, 2)


class Distribution:
    """Base node. Subclasses implement ``_apply`` and ``critical``."""

    def _apply(self, phi: TestFunction) -> Bit:
        raise NotImplementedError

    def critical(self, w: Window) -> set[Fraction]:
        """Abscissas (in the test function's frame) at which ``<self, phi_eps>``
        can change as ``phi`` moves inside ``w``."""
        raise NotImplementedError

    def __call__(self, phi: TestFunction) -> Bit:
        return apply(self, phi)

    def __xor__(self, other: "Distribution") -> "Distribution":
        return xor_dist(self, other)

    def dsl(self) -> str:
        from .dsl import dist_to_ast, print_canonical

        return print_canonical(dist_to_ast(self))

    def __repr__(self) -> str:
        try:
            return f"<{type(self).__name__} {self.dsl()}>"
        except Exception:  # pragma: no cover - repr must not fail
            return f"<{type(self).__name__}>"


@dataclass(frozen=True, repr=False)
class Regular(Distribution):
    """The regular distribution of the spike train with the given support."""

    support: LocallyFiniteSet = EMPTY

    def _apply(self, phi):
        hull = phi.hull()
        return parity(sum(phi.eval(s) for s in self.support.enumerate(hull)))

    def critical(self, w):
        return set(self.support.enumerate(w))


@dataclass(frozen=True, repr=False)
class DeltaLeft(Distribution):
    """XOR of left-limit evaluations at the points of ``points``."""

    points: LocallyFiniteSet = EMPTY

    def _apply(self, phi):
        return parity(sum(phi.left_limit(s) for s in self.points.enumerate(phi.hull())))

    def critical(self, w):
        return set(self.points.enumerate(w))


@dataclass(frozen=True, repr=False)
class DeltaRight(Distribution):
    points: LocallyFiniteSet = EMPTY

    def _apply(self, phi):
        return parity(sum(phi.right_limit(s) for s in self.points.enumerate(phi.hull())))

    def critical(self, w):
        return set(self.points.enumerate(w))


@dataclass(frozen=True, repr=False)
class Parity(Distribution):
    """Parity of the number of pieces (open components plus isolated points)."""

    def _apply(self, phi):
        p, k = component_count(phi)
        return parity(p + k)

    def critical(self, w):
        return set()


@dataclass(frozen=True, repr=False)
class IntDerivLeft(Distribution):
    def _apply(self, phi):
        return integral(phi.deriv_left())

    def critical(self, w):
        return set()


@dataclass(frozen=True, repr=False)
class IntDerivRight(Distribution):
    def _apply(self, phi):
        return integral(phi.deriv_right())

    def critical(self, w):
        return set()


@dataclass(frozen=True, repr=False)
class Xor(Distribution):
    a: Distribution
    b: Distribution

    def _apply(self, phi):
        return apply(self.a, phi) ^ apply(self.b, phi)

    def critical(self, w):
        return self.a.critical(w) | self.b.critical(w)


@dataclass(frozen=True, repr=False)
class Scale(Distribution):
    """``<psi . a, phi> = <a, psi * phi>``."""

    psi: StepFunction
    a: Distribution

    def _apply(self, phi):
        return apply(self.a, self.psi & phi)

    def critical(self, w):
        return set(self.psi.breakpoints) | self.a.critical(w)


@dataclass(frozen=True, repr=False)
class Translate(Distribution):
    """``<a_tau, phi> = <a, phi_{-tau}>`` with ``phi_tau(t) = phi(t - tau)``."""

    tau: Fraction
    a: Distribution

    def __post_init__(self):
        object.__setattr__(self, "tau", rat(self.tau))

    def _apply(self, phi):
        return apply(self.a, phi.translate(-self.tau))

    def critical(self, w):
        return {c + self.tau for c in self.a.critical(w.shift(-self.tau))}


def _stabilized(a: Distribution, phi: TestFunction, sign: int, trace: Optional[list] = None) -> Bit:
    """``lim_{eps -> 0+} <a, phi_{sign*eps}>`` evaluated exactly."""
    w = phi.hull().expand(1)
    crit = a.critical(w) | set(phi.breakpoints)
    gap = min_gap(crit)
    eps = HALF if gap is None else min(HALF, gap / 2)
    v1 = apply(a, phi.translate(sign * eps / 2))
    v2 = apply(a, phi.translate(sign * eps / 4))
    if trace is not None:
        trace.append((a, sign, eps / 2, v1))
    if v1 != v2:
        raise LimitNotStabilized(f"limit of {a!r} did not stabilize at eps={eps / 2}")
    return v1


@dataclass(frozen=True, repr=False)
class LimitLeft(Distribution):
    a: Distribution

    def _apply(self, phi):
        return _stabilized(self.a, phi, +1, _TRACE.get())

    def critical(self, w):
        return self.a.critical(w.expand(1))


@dataclass(frozen=True, repr=False)
class LimitRight(Distribution):
    a: Distribution

    def _apply(self, phi):
        return _stabilized(self.a, phi, -1, _TRACE.get())

    def critical(self, w):
        return self.a.critical(w.expand(1))


@dataclass(frozen=True, repr=False)
class DerivLeft(Distribution):
    a: Distribution

    def _apply(self, phi):
        return apply(self.a, phi) ^ apply(LimitLeft(self.a), phi)

    def critical(self, w):
        return self.a.critical(w.expand(1))


@dataclass(frozen=True, repr=False)
class DerivRight(Distribution):
    a: Distribution

    def _apply(self, phi):
        return apply(self.a, phi) ^ apply(LimitRight(self.a), phi)

    def critical(self, w):
        return self.a.critical(w.expand(1))


# evaluation trace for ``bdist eval --trace``; None when not tracing
_TRACE: ContextVar[Optional[list]] = ContextVar("bdist_trace", default=None)

ZERO_DIST = Regular(EMPTY)


def apply(f: Distribution, phi: TestFunction) -> Bit:
    as_test_function(phi)
    if phi.is_zero():
        return 0
    return f._apply(phi)


def apply_traced(f: Distribution, phi: TestFunction) -> tuple[Bit, list]:
    """Apply and record every limit evaluation as ``(node, sign, eps, value)``."""
    trace: list = []
    token = _TRACE.set(trace)
    try:
        return apply(f, phi), trace
    finally:
        _TRACE.reset(token)


# -- smart constructors -------------------------------------------------------


def regular(points: Iterable = ()) -> Regular:
    if isinstance(points, LocallyFiniteSet):
        return Regular(points)
    return Regular(LocallyFiniteSet(points))


def delta(t=0) -> Regular:
    """The point-evaluation distribution at ``t`` (a regular distribution)."""
    return Regular(LocallyFiniteSet([rat(t)]))


def delta_left(points: Iterable = (0,)) -> DeltaLeft:
    if isinstance(points, LocallyFiniteSet):
        return DeltaLeft(points)
    return DeltaLeft(LocallyFiniteSet(points))


def delta_right(points: Iterable = (0,)) -> DeltaRight:
    if isinstance(points, LocallyFiniteSet):
        return DeltaRight(points)
    return DeltaRight(LocallyFiniteSet(points))


_ATOM_SETS = (Regular, DeltaLeft, DeltaRight)
_INVARIANT = (Parity, IntDerivLeft, IntDerivRight)


def _atom_set(f):
    return f.support if isinstance(f, Regular) else f.points


def xor_dist(f: Distribution, g: Distribution) -> Distribution:
    if isinstance(f, Regular) and f.support.is_empty():
        return g
    if isinstance(g, Regular) and g.support.is_empty():
        return f
    if type(f) is type(g) and isinstance(f, _ATOM_SETS):
        return type(f)(_atom_set(f) ^ _atom_set(g))
    if f == g:
        return ZERO_DIST
    return Xor(f, g)


def translate_dist(f: Distribution, tau) -> Distribution:
    tau = rat(tau)
    if tau == 0 or isinstance(f, _INVARIANT):
        return f
    if isinstance(f, _ATOM_SETS):
        return type(f)(_atom_set(f).translate(tau))
    if isinstance(f, Xor):
        return xor_dist(translate_dist(f.a, tau), translate_dist(f.b, tau))
    if isinstance(f, Translate):
        return translate_dist(f.a, f.tau + tau)
    return Translate(tau, f)


def _where_one(s: LocallyFiniteSet, psi: StepFunction) -> LocallyFiniteSet:
    """``s`` intersected with ``{psi = 1}``."""
    out = EMPTY
    bps, pv, iv = psi.breakpoints, psi.point_values, psi.interval_values
    if not bps:
        return s if iv[0] else EMPTY
    pieces = []
    if iv[0]:
        pieces.append((None, bps[0], False))
    for i, b in enumerate(bps):
        if pv[i]:
            pieces.append((b, b, True))
        if iv[i + 1]:
            pieces.append((b, bps[i + 1] if i + 1 < len(bps) else None, False))
    for lo, hi, closed in pieces:
        out = out ^ s.restrict(lo, hi, closed, closed)
    return out


def scale_dist(psi: StepFunction, f: Distribution) -> Distribution:
    if psi == ONE:
        return f
    if psi.is_zero():
        return ZERO_DIST
    if isinstance(f, Regular):
        return Regular(_where_one(f.support, psi))
    if isinstance(f, DeltaLeft):
        return DeltaLeft(_where_one(f.points, psi.limit_left()))
    if isinstance(f, DeltaRight):
        return DeltaRight(_where_one(f.points, psi.limit_right()))
    if isinstance(f, Xor):
        return xor_dist(scale_dist(psi, f.a), scale_dist(psi, f.b))
    return Scale(psi, f)


def _limit(f: Distribution, side: str) -> Distribution:
    node = LimitLeft if side == "left" else LimitRight
    lateral = DeltaLeft if side == "left" else DeltaRight
    if isinstance(f, _ATOM_SETS):
        return lateral(_atom_set(f))
    if isinstance(f, _INVARIANT):
        return f
    if isinstance(f, (LimitLeft, LimitRight)):
        return node(f.a)
    if isinstance(f, (DerivLeft, DerivRight)):
        # (a ^ a^x)^y = a^y ^ a^y
        return ZERO_DIST
    if isinstance(f, Xor):
        return xor_dist(_limit(f.a, side), _limit(f.b, side))
    if isinstance(f, Translate):
        return translate_dist(_limit(f.a, side), f.tau)
    return node(f)


def limit_left(f: Distribution) -> Distribution:
    return _limit(f, "left")


def limit_right(f: Distribution) -> Distribution:
    return _limit(f, "right")


def deriv_left_dist(f: Distribution) -> Distribution:
    if isinstance(f, (DerivLeft, DerivRight)):
        # a derivative has vanishing lateral limits, so it is its own derivative
        return f
    if isinstance(f, _ATOM_SETS + _INVARIANT):
        return xor_dist(f, limit_left(f))
    return DerivLeft(f)


def deriv_right_dist(f: Distribution) -> Distribution:
    if isinstance(f, (DerivLeft, DerivRight)):
        # a derivative has vanishing lateral limits, so it is its own derivative
        return f
    if isinstance(f, _ATOM_SETS + _INVARIANT):
        return xor_dist(f, limit_right(f))
    return DerivRight(f)


# -- normal form and regularity ----------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """XOR of atoms: point evaluations, left/right limits, the piece-count
    functional (Parity = both integrated derivatives) and irreducible terms."""

    point: LocallyFiniteSet = EMPTY
    left: LocallyFiniteSet = EMPTY
    right: LocallyFiniteSet = EMPTY
    count: Bit = 0
    opaque: tuple = ()
    lazy_points: tuple = ()

    def __xor__(self, other: "NormalForm") -> "NormalForm":
        return NormalForm(
            self.point ^ other.point,
            self.left ^ other.left,
            self.right ^ other.right,
            self.count ^ other.count,
            _cancel(self.opaque + other.opaque),
            _cancel(self.lazy_points + other.lazy_points),
        )

    def to_distribution(self) -> Distribution:
        out: Distribution = ZERO_DIST
        for part in (Regular(self.point), DeltaLeft(self.left), DeltaRight(self.right)):
            if not _atom_set(part).is_empty():
                out = xor_dist(out, part)
        if self.count:
            out = xor_dist(out, Parity())
        for term in self.opaque + self.lazy_points:
            out = xor_dist(out, term)
        return out

    def is_finite_atoms(self) -> bool:
        return (
            not self.count
            and not self.opaque
            and not self.lazy_points
            and all(s.is_finite() for s in (self.point, self.left, self.right))
        )


def _cancel(terms: tuple) -> tuple:
    counts = Counter(terms)
    out = []
    for t in terms:
        if counts[t] % 2 and t not in out:
            out.append(t)
    return tuple(out)


def normalize(f: Distribution) -> NormalForm:
    if isinstance(f, Regular):
        return NormalForm(point=f.support)
    if isinstance(f, DeltaLeft):
        return NormalForm(left=f.points)
    if isinstance(f, DeltaRight):
        return NormalForm(right=f.points)
    if isinstance(f, _INVARIANT):
        return NormalForm(count=1)
    if isinstance(f, Xor):
        return normalize(f.a) ^ normalize(f.b)
    if isinstance(f, Translate):
        n = normalize(f.a)
        return NormalForm(
            n.point.translate(f.tau),
            n.left.translate(f.tau),
            n.right.translate(f.tau),
            n.count,
            tuple(Translate(f.tau, o) for o in n.opaque),
            tuple(x.translated(f.tau) for x in n.lazy_points),
        )
    if isinstance(f, Scale):
        if f.psi.is_zero():
            return NormalForm()
        n = normalize(f.a)
        if f.psi == ONE:
            return n
        extra = ()
        if n.count:
            extra = (Scale(f.psi, Parity()),)
        return NormalForm(
            _where_one(n.point, f.psi),
            _where_one(n.left, f.psi.limit_left()),
            _where_one(n.right, f.psi.limit_right()),
            0,
            _cancel(extra + tuple(Scale(f.psi, o) for o in n.opaque + n.lazy_points)),
            (),
        )
    if isinstance(f, (LimitLeft, LimitRight)):
        side = "left" if isinstance(f, LimitLeft) else "right"
        node = type(f)
        n = normalize(f.a)
        lateral = n.point ^ n.left ^ n.right
        return NormalForm(
            EMPTY,
            lateral if side == "left" else EMPTY,
            lateral if side == "right" else EMPTY,
            n.count,
            _cancel(tuple(node(o) for o in n.opaque + n.lazy_points)),
            (),
        )
    if isinstance(f, DerivLeft):
        return normalize(f.a) ^ normalize(LimitLeft(f.a))
    if isinstance(f, DerivRight):
        return normalize(f.a) ^ normalize(LimitRight(f.a))
    hook = getattr(f, "normal_form", None)
    if hook is not None:
        return hook()
    return NormalForm(opaque=(f,))


@dataclass(frozen=True)
class Regularity:
    kind: str  # "Regular" | "Singular" | "Unknown"
    support: Optional[LocallyFiniteSet] = None
    lazy_support: tuple = ()
    form: Optional[NormalForm] = field(default=None, compare=False)

    def __str__(self):
        if self.kind == "Regular":
            extra = "".join(f" D {x.dsl()}" for x in self.lazy_support)
            return f"Regular(support {self.support.dsl()}{extra})"
        return self.kind


def classify_regularity(f: Distribution) -> Regularity:
    n = normalize(f)
    singular_part = n.count or not n.left.is_empty() or not n.right.is_empty()
    if n.opaque:
        return Regularity("Unknown", form=n)
    if singular_part:
        return Regularity("Singular", form=n)
    return Regularity("Regular", n.point, n.lazy_points, form=n)


# -- convergence of translated sequences -------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    stabilized: bool
    limit: Bit
    limit_minus: Bit
    rank: int
    values: tuple[Bit, ...]
    values_minus: tuple[Bit, ...]


def default_taus(n: int) -> Fraction:
    return Fraction(1, n + 1)


def _stable_rank(values: list[Bit]) -> tuple[int, int]:
    """(rank from which the sequence is constant, length of that constant tail)."""
    rank = len(values)
    while rank > 1 and values[rank - 2] == values[-1]:
        rank -= 1
    return rank, len(values) - rank + 1


def convergence_check(
    f: Distribution,
    psi: StepFunction,
    phi: TestFunction,
    taus: Callable[[int], Fraction] = default_taus,
    n_terms: int = 10,
) -> ConvergenceReport:
    """Evaluate ``<f, psi*phi_{tau_n}>`` and ``<f, psi*phi_{-tau_n}>`` for n = 1..N."""
    plus = [apply(f, psi & phi.translate(taus(n))) for n in range(1, n_terms + 1)]
    minus = [apply(f, psi & phi.translate(-taus(n))) for n in range(1, n_terms + 1)]
    r1, tail1 = _stable_rank(plus)
    r2, tail2 = _stable_rank(minus)
    return ConvergenceReport(
        stabilized=min(tail1, tail2) >= 3,
        limit=plus[-1],
        limit_minus=minus[-1],
        rank=max(r1, r2),
        values=tuple(plus),
        values_minus=tuple(minus),
    )


@dataclass(frozen=True)
class CounterexampleReport:
    sequence: tuple[Bit, ...]
    constant: bool
    target: Bit
    refuted: bool
    verdict: str


def translate_limit_counterexample(n_terms: int = 10, phi: Optional[TestFunction] = None) -> CounterexampleReport:
    """Translates of a test function versus its left-limit function under Parity.

    With ``phi = chi((0, 1))`` and ``tau_n = 1/(n+1)`` every translate
    ``phi_{tau_n}`` is one open component, while ``phi(t - 0)`` is the
    half-open ``(0, 1]``: one open component plus one point. The sequence
    ``<Parity, phi_{tau_n}>`` therefore stays at 1 while ``<Parity, phi(. - 0)>``
    is 0, so limits of translates are not applications to the limit function.
    """
    if n_terms < 3:
        raise ValueError("need at least three terms")
    if phi is None:
        phi = chi_interval(0, 1)
    f = Parity()
    seq = tuple(apply(f, phi.translate(default_taus(n))) for n in range(1, n_terms + 1))
    target = apply(f, limit_fn_left(phi))
    constant = len(set(seq)) == 1
    if phi.is_zero():
        return CounterexampleReport(seq, constant, target, False, "not a counterexample input")
    refuted = constant and seq[-1] != target
    verdict = "identity refuted" if refuted else "identity holds for this input"
    return CounterexampleReport(seq, constant, target, refuted, verdict)


def equal_on(f: Distribution, g: Distribution, phis: Iterable[TestFunction]) -> bool:
    return all(apply(f, p) == apply(g, p) for p in phis)


def probe_regular_support(f: Distribution, w: Window) -> list[Fraction]:
    """Points s in ``w`` (among critical abscissas) with ``<f, chi{s}> = 1``."""
    return [s for s in sorted(f.critical(w)) if w.lo <= s <= w.hi and apply(f, chi_point(s))]
