"""Two-variable distributions, the direct product and convolution.

Convolution follows the nesting ``<f * g, phi> = <f_t, <g_u, phi(t + u)>>``
(the first factor is applied last). With that order the lateral atoms do not
commute: ``DeltaLeft({0}) * DeltaRight({0})`` is ``DeltaLeft({0})`` while the
reversed product is ``DeltaRight({0})`` (the outer limit wins).
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Bit, Window, min_gap, parity, rat
from .dist import (
    EMPTY,
    HALF,
    DeltaLeft,
    DeltaRight,
    Distribution,
    NormalForm,
    Parity,
    Regular,
    ZERO_DIST,
    apply,
    delta,
    deriv_left_dist,
    deriv_right_dist,
    limit_left,
    limit_right,
    normalize,
    translate_dist,
    xor_dist,
)
from .errors import ClosureFailure, ConvolutionUndefined, LimitNotStabilized
from .point_sets import LocallyFiniteSet, SetClass
from .step_fn import StepFunction, TestFunction
from .test_fn import TestFunction2

T_AXIS, U_AXIS = "t", "u"
LEFT, RIGHT = "left", "right"


class Distribution2:
    """Base node of a two-variable distribution."""

    def _apply(self, phi2: TestFunction2) -> Bit:
        raise NotImplementedError

    def critical2(self, wt: Window, wu: Window) -> tuple[set, set]:
        raise NotImplementedError

    def __call__(self, phi2: TestFunction2) -> Bit:
        return apply2(self, phi2)

    def __xor__(self, other):
        return xor2_dist(self, other)

    def dsl(self) -> str:
        from .dsl import dist_to_ast, print_canonical

        return print_canonical(dist_to_ast(self))

    def __repr__(self):
        try:
            return f"<{type(self).__name__} {self.dsl()}>"
        except Exception:  # pragma: no cover
            return f"<{type(self).__name__}>"


def _section_function(phi2: TestFunction2, inner: Distribution) -> TestFunction:
    """``t -> <inner, phi2(t, .)>``; constant on each t-cell."""
    values = [apply(inner, phi2.slice_t(rep)) for rep, _ in phi2.t_cells()]
    return StepFunction.build(phi2.t_breakpoints, values[1::2], values[0::2])


@dataclass(frozen=True, repr=False)
class Tensor(Distribution2):
    """Direct product: ``<f (x) g, phi2> = <f_t, <g_u, phi2(t, u)>>``."""

    f: Distribution
    g: Distribution

    def _apply(self, phi2):
        return apply(self.f, _section_function(phi2, self.g))

    def apply_u_first(self, phi2: TestFunction2) -> Bit:
        return apply(self.g, _section_function(phi2.transpose(), self.f))

    def critical2(self, wt, wu):
        return self.f.critical(wt), self.g.critical(wu)


@dataclass(frozen=True, repr=False)
class Regular2(Distribution2):
    """Regular distribution of a two-variable spike set.

    The support is ``pairs`` XOR the union of ``products`` (each a pair of
    locally finite sets taken as a Cartesian product).
    """

    pairs: frozenset = frozenset()
    products: tuple = ()

    def _points(self, wt: Window, wu: Window) -> Counter:
        found = Counter(p for p in self.pairs if p[0] in wt and p[1] in wu)
        for a, b in self.products:
            for t in a.enumerate(wt):
                for u in b.enumerate(wu):
                    found[(t, u)] += 1
        return found

    def _apply(self, phi2):
        wt = Window(phi2.t_breakpoints[0], phi2.t_breakpoints[-1])
        wu = Window(phi2.u_breakpoints[0], phi2.u_breakpoints[-1])
        return parity(sum(c * phi2.eval(t, u) for (t, u), c in self._points(wt, wu).items()))

    def critical2(self, wt, wu):
        pts = self._points(wt, wu)
        return {t for t, _ in pts}, {u for _, u in pts}


@dataclass(frozen=True, repr=False)
class Xor2(Distribution2):
    a: Distribution2
    b: Distribution2

    def _apply(self, phi2):
        return apply2(self.a, phi2) ^ apply2(self.b, phi2)

    def critical2(self, wt, wu):
        at, au = self.a.critical2(wt, wu)
        bt, bu = self.b.critical2(wt, wu)
        return at | bt, au | bu


@dataclass(frozen=True, repr=False)
class Translate2(Distribution2):
    tau: Fraction
    nu: Fraction
    a: Distribution2

    def __post_init__(self):
        object.__setattr__(self, "tau", rat(self.tau))
        object.__setattr__(self, "nu", rat(self.nu))

    def _apply(self, phi2):
        return apply2(self.a, phi2.translate(-self.tau, -self.nu))

    def critical2(self, wt, wu):
        ct, cu = self.a.critical2(wt.shift(-self.tau), wu.shift(-self.nu))
        return {c + self.tau for c in ct}, {c + self.nu for c in cu}


def _stabilized2(a: Distribution2, phi2: TestFunction2, axis: str, sign: int) -> Bit:
    wt = Window(phi2.t_breakpoints[0], phi2.t_breakpoints[-1]).expand(1)
    wu = Window(phi2.u_breakpoints[0], phi2.u_breakpoints[-1]).expand(1)
    ct, cu = a.critical2(wt, wu)
    crit = ct | set(phi2.t_breakpoints) if axis == T_AXIS else cu | set(phi2.u_breakpoints)
    gap = min_gap(crit)
    eps = HALF if gap is None else min(HALF, gap / 2)

    def shifted(e):
        return phi2.translate(sign * e, 0) if axis == T_AXIS else phi2.translate(0, sign * e)

    v1, v2 = apply2(a, shifted(eps / 2)), apply2(a, shifted(eps / 4))
    if v1 != v2:
        raise LimitNotStabilized(f"partial limit along {axis} did not stabilize")
    return v1


@dataclass(frozen=True, repr=False)
class PartialLimit(Distribution2):
    axis: str
    side: str
    a: Distribution2

    def _apply(self, phi2):
        return _stabilized2(self.a, phi2, self.axis, +1 if self.side == LEFT else -1)

    def critical2(self, wt, wu):
        return self.a.critical2(wt.expand(1), wu.expand(1))


@dataclass(frozen=True, repr=False)
class PartialDeriv(Distribution2):
    axis: str
    side: str
    a: Distribution2

    def _apply(self, phi2):
        return apply2(self.a, phi2) ^ apply2(PartialLimit(self.axis, self.side, self.a), phi2)

    def critical2(self, wt, wu):
        return self.a.critical2(wt.expand(1), wu.expand(1))


ZERO2 = Regular2()


def apply2(F: Distribution2, phi2: TestFunction2) -> Bit:
    if phi2.is_zero():
        return 0
    return F._apply(phi2)


def _is_zero(f: Distribution) -> bool:
    return isinstance(f, Regular) and f.support.is_empty()


def tensor(f: Distribution, g: Distribution) -> Distribution2:
    if _is_zero(f) or _is_zero(g):
        return ZERO2
    if isinstance(f, Regular) and isinstance(g, Regular):
        a, b = f.support, g.support
        if a.is_finite() and b.is_finite():
            return Regular2(frozenset(itertools.product(a.points, b.points)))
        return Regular2(products=((a, b),))
    return Tensor(f, g)


def xor2_dist(a: Distribution2, b: Distribution2) -> Distribution2:
    if a == ZERO2:
        return b
    if b == ZERO2:
        return a
    if isinstance(a, Regular2) and isinstance(b, Regular2):
        return Regular2(a.pairs ^ b.pairs, _cancel_products(a.products + b.products))
    return Xor2(a, b)


def _cancel_products(products):
    counts = Counter(products)
    out = []
    for p in products:
        if counts[p] % 2 and p not in out:
            out.append(p)
    return tuple(out)


def translate2_dist(a: Distribution2, tau, nu) -> Distribution2:
    tau, nu = rat(tau), rat(nu)
    if isinstance(a, Tensor):
        return Tensor(translate_dist(a.f, tau), translate_dist(a.g, nu))
    return Translate2(tau, nu, a)


def partial_limit(F: Distribution2, axis: str, side: str) -> Distribution2:
    if isinstance(F, Tensor):
        lim = limit_left if side == LEFT else limit_right
        if axis == T_AXIS:
            return Tensor(lim(F.f), F.g)
        return Tensor(F.f, lim(F.g))
    if isinstance(F, PartialLimit) and F.axis == axis:
        return PartialLimit(axis, side, F.a)
    return PartialLimit(axis, side, F)


def partial_deriv(F: Distribution2, axis: str, side: str) -> Distribution2:
    if isinstance(F, Tensor):
        der = deriv_left_dist if side == LEFT else deriv_right_dist
        if axis == T_AXIS:
            return Tensor(der(F.f), F.g)
        return Tensor(F.f, der(F.g))
    return PartialDeriv(axis, side, F)


def commutativity_check(f: Distribution, g: Distribution, phi2: TestFunction2) -> tuple[Bit, Bit]:
    return apply2(Tensor(f, g), phi2), apply2(Tensor(g, f), phi2.transpose())


def sum_sampler(f: StepFunction):
    """``(t, u) -> f(t + u)``: the pullback along the sum map."""
    return lambda t, u: f.eval(t + u)


# -- convolution --------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class ConvolvedSpikes(Distribution):
    """Regular distribution of the pair-parity sumset of two spike trains,
    enumerated lazily per window (both supports bounded on the same side)."""

    a: LocallyFiniteSet
    b: LocallyFiniteSet

    def _sums(self, w: Window) -> Counter:
        found: Counter = Counter()
        lb_a, lb_b = self.a.lower_bound(), self.b.lower_bound()
        ub_a, ub_b = self.a.upper_bound(), self.b.upper_bound()
        if self.a.is_empty() or self.b.is_empty():
            return found
        if lb_a is not None and lb_b is not None:
            xi_window = Window(lb_a, max(lb_a, w.hi - lb_b))
        elif ub_a is not None and ub_b is not None:
            xi_window = Window(min(ub_a, w.lo - ub_b), ub_a)
        else:
            raise ConvolutionUndefined("spike trains are not bounded on a common side")
        for xi in self.a.enumerate(xi_window):
            for eta in self.b.enumerate(w.shift(-xi)):
                found[xi + eta] += 1
        return found

    def support_in(self, w: Window) -> list[Fraction]:
        return sorted(s for s, c in self._sums(w).items() if c % 2)

    def _apply(self, phi):
        return parity(sum(phi.eval(s) for s in self.support_in(phi.hull())))

    def critical(self, w):
        return set(self._sums(w))

    def translated(self, tau) -> "ConvolvedSpikes":
        return ConvolvedSpikes(self.a.translate(tau), self.b)

    def normal_form(self) -> NormalForm:
        return NormalForm(lazy_points=(self,))


@dataclass(frozen=True, repr=False)
class AtomConvolution(Distribution):
    """``f * g`` for a finite XOR ``g`` of point and lateral atoms.

    The inner map ``t -> <g_u, phi(t + u)>`` is the test function
    ``XOR_s phi(. + s)`` (respectively its left/right limit function), to which
    ``f`` is then applied.
    """

    f: Distribution
    point: tuple = ()
    left: tuple = ()
    right: tuple = ()

    def inner(self, phi: TestFunction) -> TestFunction:
        h = StepFunction.constant(0)
        for s in self.point:
            h = h ^ phi.translate(-s)
        if self.left:
            lim = phi.limit_left()
            for s in self.left:
                h = h ^ lim.translate(-s)
        if self.right:
            lim = phi.limit_right()
            for s in self.right:
                h = h ^ lim.translate(-s)
        return h

    def _apply(self, phi):
        return apply(self.f, self.inner(phi))

    def critical(self, w):
        out = set()
        for s in self.point + self.left + self.right:
            out |= {c + s for c in self.f.critical(w.shift(-s))}
        return out

    def normal_form(self) -> NormalForm:
        n = normalize(self.f)
        out = NormalForm()
        shifts = [(s, "point") for s in self.point] + [(s, "left") for s in self.left]
        shifts += [(s, "right") for s in self.right]
        for s, kind in shifts:
            lateral = {"point": None, "left": "left", "right": "right"}[kind]
            moved_point = n.point.translate(s)
            part = NormalForm(
                point=moved_point if lateral is None else EMPTY,
                left=n.left.translate(s) ^ (moved_point if lateral == "left" else EMPTY),
                right=n.right.translate(s) ^ (moved_point if lateral == "right" else EMPTY),
                count=n.count if lateral is None else 0,
                opaque=(
                    tuple(AtomConvolution(o, **{kind: (s,)}) for o in n.opaque + n.lazy_points)
                    + ((AtomConvolution(Parity(), **{kind: (s,)}),) if n.count and lateral else ())
                ),
            )
            out = out ^ part
        return out


def spike_convolution(a: Sequence, b: Sequence) -> LocallyFiniteSet:
    """GF(2) sumset: the points hit an odd number of times by ``x + y``."""
    counts = Counter(rat(x) + rat(y) for x in a for y in b)
    return LocallyFiniteSet(s for s, c in counts.items() if c % 2)


def _regular_pair_ok(a: LocallyFiniteSet, b: LocallyFiniteSet) -> bool:
    ca, cb = a.classify(), b.classify()
    if SetClass.FINITE in (ca, cb):
        return True
    low = {SetClass.FINITE, SetClass.INFERIORLY_FINITE}
    high = {SetClass.FINITE, SetClass.SUPERIORLY_FINITE}
    return (ca in low and cb in low) or (ca in high and cb in high)


def convolve(f: Distribution, g: Distribution) -> Distribution:
    """``<f * g, phi> = <f_t, <g_u, phi(t + u)>>`` on the supported cases."""
    unity = delta(0)
    if f == unity:
        return g
    if g == unity:
        return f
    if _is_zero(f) or _is_zero(g):
        return ZERO_DIST
    if isinstance(f, Regular) and isinstance(g, Regular) and _regular_pair_ok(f.support, g.support):
        if f.support.is_finite():
            return _finite_outer(normalize(f), g)
        if g.support.is_finite():
            return Regular(_shift_sum(f.support, g.support.points))
        return ConvolvedSpikes(f.support, g.support)
    nf = normalize(f)
    if nf.is_finite_atoms():
        return _finite_outer(nf, g)
    ng = normalize(g)
    if ng.is_finite_atoms():
        return AtomConvolution(f, ng.point.finite_points(), ng.left.finite_points(), ng.right.finite_points())
    raise ConvolutionUndefined(f"no convolution rule for {f!r} * {g!r}")


def _shift_sum(s: LocallyFiniteSet, shifts) -> LocallyFiniteSet:
    out = EMPTY
    for x in shifts:
        out = out ^ s.translate(x)
    return out


def _finite_outer(nf: NormalForm, g: Distribution) -> Distribution:
    out: Distribution = ZERO_DIST
    for s in nf.point.finite_points():
        out = xor_dist(out, translate_dist(g, s))
    for s in nf.left.finite_points():
        out = xor_dist(out, limit_left(translate_dist(g, s)))
    for s in nf.right.finite_points():
        out = xor_dist(out, limit_right(translate_dist(g, s)))
    return out


# -- convolution algebras -----------------------------------------------------


@dataclass(frozen=True)
class ConvolutionAlgebraSpec:
    generators: tuple
    closure_depth: int = 2


@dataclass
class AlgebraReport:
    closed: bool
    stabilized: bool
    unity_in_generators: bool
    unity_present: bool
    commutative: bool
    associative: bool
    basis: list = field(default_factory=list)
    noncommuting: list = field(default_factory=list)
    products_checked: int = 0

    @property
    def passed(self) -> bool:
        return self.closed and self.unity_present


_KIND_ORDER = {"point": 0, "left": 1, "right": 2}


def _atoms(f: Distribution) -> frozenset:
    n = normalize(f)
    if not n.is_finite_atoms():
        raise ClosureFailure(f"{f!r} is not a finite combination of point and lateral atoms", f)
    return frozenset(
        [("point", s) for s in n.point.finite_points()]
        + [("left", s) for s in n.left.finite_points()]
        + [("right", s) for s in n.right.finite_points()]
    )


def _atom_dist(atom) -> Distribution:
    kind, s = atom
    ls = LocallyFiniteSet([s])
    return {"point": Regular, "left": DeltaLeft, "right": DeltaRight}[kind](ls)


def _vector_dist(vec: frozenset) -> Distribution:
    out: Distribution = ZERO_DIST
    for a in sorted(vec, key=lambda a: (_KIND_ORDER[a[0]], a[1])):
        out = xor_dist(out, _atom_dist(a))
    return out


def _reduce(vec: frozenset, basis: dict) -> frozenset:
    for pivot, b in basis.items():
        if pivot in vec:
            vec = vec ^ b
    return vec


def _insert(vec: frozenset, basis: dict) -> bool:
    vec = _reduce(vec, basis)
    if not vec:
        return False
    pivot = min(vec, key=lambda a: (_KIND_ORDER[a[0]], a[1]))
    for k, b in list(basis.items()):
        if pivot in b:
            basis[k] = b ^ vec
    basis[pivot] = vec
    return True


def _panel(seed: int, size: int) -> list[TestFunction]:
    from .oracle import CasePanel, gen_test_function

    panel = CasePanel(seed=seed, magnitude=4)
    return [gen_test_function(panel, i) for i in range(size)]


def algebra_closure_check(spec: ConvolutionAlgebraSpec, panel_size: int = 24, seed: int = 0) -> AlgebraReport:
    """Close the span of the generators under convolution and check the laws.

    Every product is computed by :func:`convolve`, re-identified as a finite
    XOR of atoms and checked against that identification on a panel of test
    functions. Commutativity and associativity are reported, not enforced.
    """
    phis = _panel(seed, panel_size)
    unity = frozenset({("point", Fraction(0))})
    basis: dict = {}
    for g in spec.generators:
        _insert(_atoms(g), basis)
    unity_in_generators = not _reduce(unity, basis)
    _insert(unity, basis)

    checked = 0
    stabilized = False
    for _ in range(spec.closure_depth):
        grew = False
        current = list(basis.values())
        for a, b in itertools.product(current, repeat=2):
            prod = _product(a, b, phis)
            checked += 1
            grew |= _insert(prod, basis)
        if not grew:
            stabilized = True
            break

    elems = list(basis.values())
    noncommuting = []
    for a, b in itertools.combinations(elems, 2):
        if _product(a, b, phis) != _product(b, a, phis):
            noncommuting.append((_vector_dist(a), _vector_dist(b)))
    associative = True
    for a, b, c in itertools.product(elems[:6], repeat=3):
        left = _product(_product(a, b, phis), c, phis)
        right = _product(a, _product(b, c, phis), phis)
        if left != right:
            associative = False
            break
    return AlgebraReport(
        closed=True,
        stabilized=stabilized,
        unity_in_generators=unity_in_generators,
        unity_present=not _reduce(unity, basis),
        commutative=not noncommuting,
        associative=associative,
        basis=[_vector_dist(v) for v in elems],
        noncommuting=noncommuting,
        products_checked=checked,
    )


def _product(a: frozenset, b: frozenset, phis) -> frozenset:
    fa, fb = _vector_dist(a), _vector_dist(b)
    try:
        prod = convolve(fa, fb)
    except ConvolutionUndefined as exc:
        raise ClosureFailure(str(exc), (fa, fb)) from exc
    vec = _atoms(prod)
    ident = _vector_dist(vec)
    for phi in phis:
        if apply(prod, phi) != apply(ident, phi):
            raise ClosureFailure(f"product {fa!r} * {fb!r} does not match its identification", (fa, fb))
    return vec


def example_algebra(name: str) -> ConvolutionAlgebraSpec:
    """The three example algebras: ``"a"`` {0, delta}, ``"b"`` the lateral
    deltas at 0, ``"c"`` finite point/lateral spike sets."""
    if name == "a":
        return ConvolutionAlgebraSpec((ZERO_DIST, delta(0)), 2)
    if name == "b":
        return ConvolutionAlgebraSpec((delta(0), DeltaLeft(LocallyFiniteSet([0])), DeltaRight(LocallyFiniteSet([0]))), 2)
    if name == "c":
        gens = (
            Regular(LocallyFiniteSet([0, 1])),
            Regular(LocallyFiniteSet([0])),
            DeltaLeft(LocallyFiniteSet([0, Fraction(1, 2)])),
            DeltaRight(LocallyFiniteSet([Fraction(-1, 2), 1])),
        )
        return ConvolutionAlgebraSpec(gens, 2)
    raise ValueError(f"unknown example algebra {name!r}")


def random_algebra_element(spec: ConvolutionAlgebraSpec, rng: random.Random) -> Distribution:
    out: Distribution = ZERO_DIST
    for g in spec.generators:
        if rng.random() < 0.5:
            out = xor_dist(out, g)
    return out
