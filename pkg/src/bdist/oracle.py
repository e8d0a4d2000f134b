"""Independent evaluators, deterministic random instances and identity suites.

The oracle evaluates a distribution without going through :func:`dist.apply`:
the test function is split into singleton and open-interval indicators and
every indicator is evaluated from closed forms of the atoms. Lateral limits
use their own critical-set routine and the step sizes ``gap/3`` and ``gap/5``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from . import dist as D
from . import dsl
from . import tensor_conv as TC
from .core import Bit, Window, min_gap, parity, rat
from .errors import LimitNotStabilized, UnknownSuite
from .point_sets import ALL, NONNEG, NONPOS, LocallyFiniteSet, Progression
from .step_fn import StepFunction, chi_interval, chi_point
from .test_fn import TestFunction2, as_test_function, refute_grid_representable

# -- instance generation -------------------------------------------------------

DEFAULT_COUNTS = {"test_function": 1000, "distribution": 1000, "test_function2": 500}


@dataclass(frozen=True)
class CasePanel:
    """Seeded source of random instances over a small rational grid."""

    seed: int = 0
    counts: dict = field(default_factory=lambda: dict(DEFAULT_COUNTS), hash=False, compare=False)
    magnitude: int = 8
    max_denominator: int = 8

    def rng(self, kind: str, index: int) -> random.Random:
        return random.Random(f"{self.seed}/{kind}/{index}")


def _abscissa(rng: random.Random, panel: CasePanel, magnitude=None) -> Fraction:
    q = rng.randint(1, panel.max_denominator)
    m = panel.magnitude if magnitude is None else magnitude
    return Fraction(rng.randint(-m * q, m * q), q)


def _abscissas(rng, panel, n) -> list[Fraction]:
    out: set = set()
    while len(out) < n:
        out.add(_abscissa(rng, panel))
    return sorted(out)


def _bits(rng, n) -> list[Bit]:
    return [rng.randint(0, 1) for _ in range(n)]


def _test_function(rng, panel, max_breaks=6) -> StepFunction:
    bps = _abscissas(rng, panel, rng.randint(1, max_breaks))
    return StepFunction.build(bps, _bits(rng, len(bps)), [0] + _bits(rng, len(bps) - 1) + [0])


def _step_function(rng, panel, max_breaks=4) -> StepFunction:
    bps = _abscissas(rng, panel, rng.randint(0, max_breaks))
    return StepFunction.build(bps, _bits(rng, len(bps)), _bits(rng, len(bps) + 1))


def _finite_train(rng, panel, max_points=4) -> LocallyFiniteSet:
    return LocallyFiniteSet(_abscissas(rng, panel, rng.randint(0, max_points)))


def _spike_train(rng, panel) -> LocallyFiniteSet:
    s = _finite_train(rng, panel)
    if rng.random() < 0.4:
        period = Fraction(rng.randint(1, 2 * panel.max_denominator), rng.choice([1, 2, 4]))
        kind = rng.choice([ALL, NONNEG, NONPOS])
        s = s ^ LocallyFiniteSet(progressions=[Progression(_abscissa(rng, panel, 2), period, kind)])
    return s


_LEAVES = ("reg", "reg", "reg", "left", "left", "right", "right", "parity", "intdl", "intdr")
_NODES = ("xor", "xor", "scale", "translate", "limleft", "limright", "derleft", "derright")


def _distribution(rng, panel, depth) -> D.Distribution:
    if depth <= 0 or rng.random() < 0.35:
        kind = rng.choice(_LEAVES)
        if kind == "reg":
            return D.Regular(_spike_train(rng, panel))
        if kind == "left":
            return D.DeltaLeft(_spike_train(rng, panel))
        if kind == "right":
            return D.DeltaRight(_spike_train(rng, panel))
        return {"parity": D.Parity, "intdl": D.IntDerivLeft, "intdr": D.IntDerivRight}[kind]()
    kind = rng.choice(_NODES)
    a = _distribution(rng, panel, depth - 1)
    if kind == "xor":
        return D.Xor(a, _distribution(rng, panel, depth - 1))
    if kind == "scale":
        return D.Scale(_step_function(rng, panel), a)
    if kind == "translate":
        return D.Translate(_abscissa(rng, panel, 2), a)
    return {
        "limleft": D.LimitLeft,
        "limright": D.LimitRight,
        "derleft": D.DerivLeft,
        "derright": D.DerivRight,
    }[kind](a)


def _test_function2(rng, panel) -> TestFunction2:
    tb = _abscissas(rng, panel, rng.randint(1, 3))
    ub = _abscissas(rng, panel, rng.randint(1, 3))
    rows, cols = 2 * len(tb) + 1, 2 * len(ub) + 1
    cells = [
        [0 if i in (0, rows - 1) or j in (0, cols - 1) else rng.randint(0, 1) for j in range(cols)]
        for i in range(rows)
    ]
    return TestFunction2.build(tb, ub, cells)


def gen_test_function(panel: CasePanel, index: int = 0) -> StepFunction:
    return _test_function(panel.rng("phi", index), panel)


def gen_step_function(panel: CasePanel, index: int = 0) -> StepFunction:
    """A multiplier: finitely many breakpoints, tails allowed to be 1."""
    return _step_function(panel.rng("psi", index), panel)


def gen_spike_train(panel: CasePanel, index: int = 0) -> LocallyFiniteSet:
    return _spike_train(panel.rng("train", index), panel)


def gen_finite_train(panel: CasePanel, index: int = 0, max_points: int = 4) -> LocallyFiniteSet:
    return _finite_train(panel.rng("finite", index), panel, max_points)


def gen_distribution(panel: CasePanel, index: int = 0, depth: int = 3) -> D.Distribution:
    """Random expression over the raw node kinds (no simplification applied)."""
    if depth > 4:
        raise ValueError("depth is limited to 4")
    return _distribution(panel.rng("dist", index), panel, depth)


def gen_test_function2(panel: CasePanel, index: int = 0) -> TestFunction2:
    return _test_function2(panel.rng("phi2", index), panel)


def gen_abscissa(panel: CasePanel, index: int = 0, magnitude=None) -> Fraction:
    return _abscissa(panel.rng("tau", index), panel, magnitude)


# -- independent evaluation ----------------------------------------------------

# A piece is ("pt", t) or ("iv", a, b) with a < b.


def _pieces(phi: StepFunction) -> list[tuple]:
    """Exact XOR decomposition of a test function into disjoint indicators."""
    bps, pv, iv = phi.breakpoints, phi.point_values, phi.interval_values
    out = [("pt", b) for b, v in zip(bps, pv) if v]
    out += [("iv", bps[i - 1], bps[i]) for i in range(1, len(bps)) if iv[i]]
    return out


def _count_open(s: LocallyFiniteSet, a, b, closed_lo=False, closed_hi=False) -> int:
    pts = s.enumerate(Window(a, b))
    return sum(1 for p in pts if (a < p or (closed_lo and p == a)) and (p < b or (closed_hi and p == b)))


def _shift(piece, tau):
    if piece[0] == "pt":
        return ("pt", piece[1] + tau)
    return ("iv", piece[1] + tau, piece[2] + tau)


def _ends(piece) -> list[Fraction]:
    return [piece[1]] if piece[0] == "pt" else [piece[1], piece[2]]


def _critical(f: D.Distribution, lo: Fraction, hi: Fraction) -> set:
    if isinstance(f, (D.Regular, D.DeltaLeft, D.DeltaRight)):
        s = f.support if isinstance(f, D.Regular) else f.points
        return set(s.enumerate(Window(lo, hi)))
    if isinstance(f, (D.Parity, D.IntDerivLeft, D.IntDerivRight)):
        return set()
    if isinstance(f, D.Xor):
        return _critical(f.a, lo, hi) | _critical(f.b, lo, hi)
    if isinstance(f, D.Scale):
        return set(f.psi.breakpoints) | _critical(f.a, lo, hi)
    if isinstance(f, D.Translate):
        return {c + f.tau for c in _critical(f.a, lo - f.tau, hi - f.tau)}
    if isinstance(f, (D.LimitLeft, D.LimitRight, D.DerivLeft, D.DerivRight)):
        return _critical(f.a, lo - 1, hi + 1)
    if isinstance(f, TC.ConvolvedSpikes):
        return set(f.critical(Window(lo, hi)))
    if isinstance(f, TC.AtomConvolution):
        out = set()
        for s in f.point + f.left + f.right:
            out |= {c + s for c in _critical(f.f, lo - s, hi - s)}
        return out
    raise TypeError(f"oracle has no rule for {type(f).__name__}")


def _limit(f: D.Distribution, piece, sign: int) -> Bit:
    ends = _ends(piece)
    crit = _critical(f, min(ends) - 2, max(ends) + 2) | set(ends)
    gap = min_gap(crit) or Fraction(1)
    gap = min(gap, Fraction(1))
    v1 = _chi(f, _shift(piece, sign * gap / 3))
    v2 = _chi(f, _shift(piece, sign * gap / 5))
    if v1 != v2:
        raise LimitNotStabilized(f"oracle limit of {f!r} disagrees at gap/3 and gap/5")
    return v1


def _lateral_pieces(piece, side: str) -> list:
    """Pieces of the left (or right) limit function of one indicator."""
    if piece[0] == "pt":
        return []
    _, a, b = piece
    return [piece, ("pt", b if side == "left" else a)]


def _chi(f: D.Distribution, piece) -> Bit:
    """``<f, indicator of piece>`` from closed forms."""
    point = piece[0] == "pt"
    if isinstance(f, D.Regular):
        if point:
            return int(f.support.contains(piece[1]))
        return parity(_count_open(f.support, piece[1], piece[2]))
    if isinstance(f, D.DeltaLeft):
        return 0 if point else parity(_count_open(f.points, piece[1], piece[2], closed_hi=True))
    if isinstance(f, D.DeltaRight):
        return 0 if point else parity(_count_open(f.points, piece[1], piece[2], closed_lo=True))
    if isinstance(f, (D.Parity, D.IntDerivLeft, D.IntDerivRight)):
        return 1
    if isinstance(f, D.Xor):
        return _chi(f.a, piece) ^ _chi(f.b, piece)
    if isinstance(f, D.Scale):
        out = 0
        for sub in _restrict_piece(f.psi, piece):
            out ^= _chi(f.a, sub)
        return out
    if isinstance(f, D.Translate):
        return _chi(f.a, _shift(piece, -f.tau))
    if isinstance(f, D.LimitLeft):
        return _limit(f.a, piece, +1)
    if isinstance(f, D.LimitRight):
        return _limit(f.a, piece, -1)
    if isinstance(f, D.DerivLeft):
        return _chi(f.a, piece) ^ _limit(f.a, piece, +1)
    if isinstance(f, D.DerivRight):
        return _chi(f.a, piece) ^ _limit(f.a, piece, -1)
    if isinstance(f, TC.ConvolvedSpikes):
        return _convolved_spikes(f, piece)
    if isinstance(f, TC.AtomConvolution):
        out = 0
        for s in f.point:
            out ^= _chi(f.f, _shift(piece, -s))
        for side, pts in (("left", f.left), ("right", f.right)):
            for s in pts:
                for sub in _lateral_pieces(piece, side):
                    out ^= _chi(f.f, _shift(sub, -s))
        return out
    raise TypeError(f"oracle has no rule for {type(f).__name__}")


def _restrict_piece(psi: StepFunction, piece) -> list:
    """Pieces of ``psi`` times the indicator of ``piece``."""
    if piece[0] == "pt":
        return [piece] if psi.eval(piece[1]) else []
    _, a, b = piece
    cuts = [a] + [c for c in psi.breakpoints if a < c < b] + [b]
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        if psi.eval((lo + hi) / 2):
            out.append(("iv", lo, hi))
    for c in cuts[1:-1]:
        if psi.eval(c):
            out.append(("pt", c))
    return out


def _convolved_spikes(f: TC.ConvolvedSpikes, piece) -> Bit:
    ends = _ends(piece)
    w = Window(min(ends), max(ends))
    hits = Counter()
    for x, y in _pairs_summing_into(f.a, f.b, w):
        s = x + y
        if (piece[0] == "pt" and s == piece[1]) or (piece[0] == "iv" and piece[1] < s < piece[2]):
            hits[s] += 1
    return parity(sum(hits.values()))


def _pairs_summing_into(a: LocallyFiniteSet, b: LocallyFiniteSet, w: Window):
    la, lb = a.lower_bound(), b.lower_bound()
    if la is not None and lb is not None:
        xs = a.enumerate(Window(la, max(la, w.hi - lb)))
    else:
        ua, ub = a.upper_bound(), b.upper_bound()
        xs = a.enumerate(Window(min(ua, w.lo - ub), ua))
    for x in xs:
        for y in b.enumerate(w.shift(-x)):
            yield x, y


def apply_oracle(f: D.Distribution, phi: StepFunction) -> Bit:
    """Evaluate ``<f, phi>`` through the indicator decomposition of ``phi``."""
    as_test_function(phi)
    out = 0
    for piece in _pieces(phi):
        out ^= _chi(f, piece)
    return out


def pair_parity(a, b, phi: StepFunction) -> Bit:
    """``XOR over (x, y) in a x b of phi(x + y)`` for finite spike trains."""
    return parity(sum(phi.eval(rat(x) + rat(y)) for x in a for y in b))


def regular2_pair_parity(a, b, phi2: TestFunction2) -> Bit:
    return parity(sum(phi2.eval(x, y) for x in a for y in b))


def components_parity(phi: StepFunction) -> Bit:
    """Independent piece count from the sampled values.

    Samples alternate open piece, breakpoint, open piece, ... A breakpoint
    flanked by two 1-pieces joins them into one open component; every other
    breakpoint valued 1 is a separate point piece.
    """
    samples = [phi.eval(t) for t in phi.sample_points()]
    opens, points = samples[0::2], samples[1::2]
    count = sum(points)
    prev_open = opens[0]
    count += opens[0]
    for i, v in enumerate(points):
        nxt = opens[i + 1]
        joined = v and prev_open and nxt
        if joined:
            count -= 1  # neither a separate point nor a new component
        elif nxt:
            count += 1
        prev_open = nxt
    return parity(count)


# -- suites -------------------------------------------------------------------------


@dataclass
class SuiteReport:
    """Outcome of one identity family.

    ``known_refuted`` lists identities that the suite evaluates although they
    are false in general; their failures are reported but do not count as
    unexpected.
    """

    name: str
    passed: int = 0
    failed: int = 0
    counterexample: Optional[str] = None
    known_refuted: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, instance: Callable[[], str]):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = instance()

    def refuted(self, identity: str, ok: bool, instance: Callable[[], str]):
        entry = self.known_refuted.setdefault(identity, {"holds": 0, "fails": 0, "example": None})
        if ok:
            entry["holds"] += 1
        else:
            entry["fails"] += 1
            if entry["example"] is None:
                entry["example"] = instance()

    def as_record(self) -> dict:
        rec = {
            "suite": self.name,
            "status": "ok" if self.ok else "fail",
            "passed": self.passed,
            "failed": self.failed,
            "counterexample": self.counterexample,
        }
        if self.known_refuted:
            rec["known_refuted"] = self.known_refuted
        if self.details:
            rec["details"] = self.details
        return rec


def _text(*values) -> Callable[[], str]:
    return lambda: " ; ".join(dsl.to_text(v) if not isinstance(v, str) else v for v in values)


SUITES: dict[str, Callable] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


def run_suite(name: str, panel: Optional[CasePanel] = None, cases: int = 200) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name](panel or CasePanel(), cases)


def run_all(panel: Optional[CasePanel] = None, cases: int = 200) -> Iterator[SuiteReport]:
    for name in SUITES:
        yield run_suite(name, panel, cases)


@suite("representation")
def representation_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("representation")
    for i in range(cases):
        f = gen_step_function(panel, i)
        canon = f.canonicalize()
        probes = canon.sample_points()
        rebuilt = StepFunction.from_function(canon.eval, probes)
        rep.record(rebuilt == canon and canon == f, _text(f))
    return rep


@suite("linearity")
def linearity_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("linearity")
    for i in range(cases):
        f = gen_distribution(panel, i)
        phi, chi = gen_test_function(panel, 2 * i), gen_test_function(panel, 2 * i + 1)
        ok = D.apply(f, phi ^ chi) == D.apply(f, phi) ^ D.apply(f, chi)
        rep.record(ok, _text(f, phi, chi))
    return rep


@suite("oracle")
def oracle_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("oracle")
    for i in range(cases):
        f, phi = gen_distribution(panel, i), gen_test_function(panel, i)
        rep.record(D.apply(f, phi) == apply_oracle(f, phi), _text(f, phi))
    return rep


@suite("delta")
def delta_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("delta")
    unity = D.delta(0)
    n_g = max(1, cases // 10)
    for i in range(cases):
        t0, phi = gen_abscissa(panel, i), gen_test_function(panel, i)
        rep.record(D.apply(D.delta(t0), phi) == phi.eval(t0), _text(D.delta(t0), phi))
    for j in range(n_g):
        g = gen_distribution(panel, 10_000 + j, depth=2)
        paths = (TC.convolve(unity, g), TC.convolve(g, unity), TC.AtomConvolution(g, point=(Fraction(0),)))
        for k in range(10):
            phi = gen_test_function(panel, 10_000 + 10 * j + k)
            want = D.apply(g, phi)
            rep.record(all(D.apply(p, phi) == want for p in paths), _text(g, phi))
    return rep


@suite("singularity")
def singularity_suite(panel: CasePanel, cases: int) -> SuiteReport:
    from .fundamental import RegularOnWindow, bundle, regularity_criterion

    rep = SuiteReport("singularity")
    origin = LocallyFiniteSet([0])
    singular = [D.DeltaLeft(origin), D.DeltaRight(origin), D.IntDerivLeft(), D.IntDerivRight(), D.Parity()]
    for i in range(cases):
        rng = panel.rng("window", i)
        lo = Fraction(-rng.randint(1, 4 * panel.max_denominator), rng.randint(1, 4))
        hi = Fraction(rng.randint(1, 4 * panel.max_denominator), rng.randint(1, 4))
        w = Window(lo, hi)
        for f in singular:
            verdict = regularity_criterion(bundle(f), w)
            rep.record(not isinstance(verdict, RegularOnWindow), _text(f, f"window [{lo}, {hi}]"))
        train = D.Regular(gen_spike_train(panel, i))
        verdict = regularity_criterion(bundle(train), w)
        rep.record(isinstance(verdict, RegularOnWindow), _text(train, f"window [{lo}, {hi}]"))
    return rep


ITERATION_IDENTITIES = [
    ("(f-)- = f-", lambda f: D.LimitLeft(D.LimitLeft(f)), lambda f: D.LimitLeft(f)),
    ("(f+)- = f-", lambda f: D.LimitLeft(D.LimitRight(f)), lambda f: D.LimitLeft(f)),
    ("(f-)+ = f+", lambda f: D.LimitRight(D.LimitLeft(f)), lambda f: D.LimitRight(f)),
    ("(f+)+ = f+", lambda f: D.LimitRight(D.LimitRight(f)), lambda f: D.LimitRight(f)),
    ("D-D-f = D-f", lambda f: D.DerivLeft(D.DerivLeft(f)), lambda f: D.DerivLeft(f)),
    ("D-D+f = D+f", lambda f: D.DerivLeft(D.DerivRight(f)), lambda f: D.DerivRight(f)),
    ("D+D-f = D-f", lambda f: D.DerivRight(D.DerivLeft(f)), lambda f: D.DerivLeft(f)),
    ("D+D+f = D+f", lambda f: D.DerivRight(D.DerivRight(f)), lambda f: D.DerivRight(f)),
]

_SMART = {
    D.LimitLeft: D.limit_left,
    D.LimitRight: D.limit_right,
    D.DerivLeft: D.deriv_left_dist,
    D.DerivRight: D.deriv_right_dist,
}


def simplify(f: D.Distribution) -> D.Distribution:
    """Rebuild a raw expression through the simplifying constructors."""
    if isinstance(f, D.Xor):
        return D.xor_dist(simplify(f.a), simplify(f.b))
    if isinstance(f, D.Scale):
        return D.scale_dist(f.psi, simplify(f.a))
    if isinstance(f, D.Translate):
        return D.translate_dist(simplify(f.a), f.tau)
    if type(f) in _SMART:
        return _SMART[type(f)](simplify(f.a))
    return f


@suite("iteration")
def iteration_suite(panel: CasePanel, cases: int) -> SuiteReport:
    """The eight limit/derivative iteration laws, evaluated on raw nodes and
    on their simplified forms."""
    rep = SuiteReport("iteration")
    per_identity = {}
    for k, (label, lhs, rhs) in enumerate(ITERATION_IDENTITIES):
        bad = 0
        for i in range(cases):
            f = gen_distribution(panel, 7919 * k + i, depth=2)
            phi = gen_test_function(panel, 7919 * k + i)
            left, right = lhs(f), rhs(f)
            want = D.apply(right, phi)
            ok = D.apply(left, phi) == want and D.apply(simplify(left), phi) == want
            bad += not ok
            rep.record(ok, _text(label, left, phi))
        per_identity[label] = bad
    rep.details["failures_per_identity"] = per_identity
    return rep


@suite("adjunction")
def adjunction_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("adjunction")
    for i in range(cases):
        f, phi = gen_distribution(panel, i), gen_test_function(panel, i)
        tau = gen_abscissa(panel, i, magnitude=3)
        want = D.apply(f, phi.translate(-tau))
        ok = D.apply(D.translate_dist(f, tau), phi) == want and D.apply(D.Translate(tau, f), phi) == want
        rep.record(ok, _text(D.Translate(tau, f), phi))
    for i in range(cases):
        f, phi = gen_distribution(panel, cases + i), gen_test_function(panel, cases + i)
        psi = gen_step_function(panel, i)
        want = D.apply(f, psi & phi)
        ok = D.apply(D.scale_dist(psi, f), phi) == want and D.apply(D.Scale(psi, f), phi) == want
        rep.record(ok, _text(D.Scale(psi, f), phi))
    return rep


@suite("counterexample")
def counterexample_suite(panel: CasePanel, cases: int) -> SuiteReport:
    """Limits of translates versus application to the limit function.

    Every translate keeps the piece count, so ``<Parity, phi_{tau_n}>`` is the
    constant ``components_parity(phi)``; the naive value is the piece parity
    of ``phi(t - 0)``. The canonical input must refute the naive identity.
    """
    rep = SuiteReport("counterexample")
    report = D.translate_limit_counterexample(10)
    phi0 = chi_interval(0, 1)
    rep.record(
        report.constant
        and report.sequence[0] == components_parity(phi0)
        and report.target == components_parity(phi0.limit_left())
        and report.refuted,
        _text(phi0),
    )
    naive_failures = 0
    for i in range(cases):
        phi = gen_test_function(panel, i)
        if phi.is_zero():
            continue
        r = D.translate_limit_counterexample(10, phi)
        ok = set(r.sequence) == {components_parity(phi)} and r.target == components_parity(phi.limit_left())
        rep.record(ok, _text(phi))
        naive_failures += r.refuted
    rep.details["canonical_verdict"] = report.verdict
    rep.details["canonical_sequence"] = list(report.sequence)
    rep.details["canonical_target"] = report.target
    rep.details["random_inputs_refuting_naive_identity"] = naive_failures
    return rep


@suite("tensor")
def tensor_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("tensor")
    for i in range(cases):
        f = gen_distribution(panel, 3 * i, depth=2)
        g = gen_distribution(panel, 3 * i + 1, depth=2)
        h = gen_distribution(panel, 3 * i + 2, depth=2)
        phi2 = gen_test_function2(panel, i)
        a, b = TC.commutativity_check(f, g, phi2)
        rep.record(a == b, _text(f, g, phi2))
        rep.record(TC.Tensor(f, g).apply_u_first(phi2) == a, _text(f, g, phi2))
        lhs = TC.apply2(TC.Tensor(D.Xor(f, h), g), phi2)
        rep.record(lhs == TC.apply2(TC.Tensor(f, g), phi2) ^ TC.apply2(TC.Tensor(h, g), phi2), _text(f, h, g, phi2))
        rhs = TC.apply2(TC.Tensor(f, D.Xor(g, h)), phi2)
        rep.record(rhs == TC.apply2(TC.Tensor(f, g), phi2) ^ TC.apply2(TC.Tensor(f, h), phi2), _text(f, g, h, phi2))
        sa, sb = gen_finite_train(panel, 2 * i), gen_finite_train(panel, 2 * i + 1)
        want = regular2_pair_parity(sa.points, sb.points, phi2)
        nested = TC.apply2(TC.Tensor(D.Regular(sa), D.Regular(sb)), phi2)
        rep.record(nested == want and TC.apply2(TC.tensor(D.Regular(sa), D.Regular(sb)), phi2) == want,
                   _text(D.Regular(sa), D.Regular(sb), phi2))
    return rep


def _nested_convolution(a: LocallyFiniteSet, b: LocallyFiniteSet, phi: StepFunction) -> Bit:
    """``<[a]_t, <[b]_u, phi(t + u)>>`` with the inner map evaluated pointwise."""
    out = 0
    for x in a.points:
        out ^= D.apply(D.Regular(b), phi.translate(-x))
    return out


@suite("convolution")
def convolution_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("convolution")
    for i in range(cases):
        a, b, c = (gen_finite_train(panel, 3 * i + k) for k in range(3))
        fa, fb, fc = D.Regular(a), D.Regular(b), D.Regular(c)
        ab = TC.convolve(fa, fb)
        rep.record(ab == D.Regular(TC.spike_convolution(a.points, b.points)), _text(fa, fb))
        phi = gen_test_function(panel, i)
        want = pair_parity(a.points, b.points, phi)
        rep.record(D.apply(ab, phi) == want and _nested_convolution(a, b, phi) == want, _text(fa, fb, phi))
        rep.record(ab == TC.convolve(fb, fa), _text(fa, fb))
        rep.record(TC.convolve(ab, fc) == TC.convolve(fa, TC.convolve(fb, fc)), _text(fa, fb, fc))

    rng_cases = max(1, cases // 2)
    # small abscissas so test functions straddle the algebra's atoms
    near = CasePanel(panel.seed, magnitude=2, max_denominator=4)
    for name in ("b", "c"):
        spec = TC.example_algebra(name)
        for i in range(rng_cases):
            rng = panel.rng(f"algebra-{name}", i)
            f, g = TC.random_algebra_element(spec, rng), TC.random_algebra_element(spec, rng)
            phi = gen_test_function(near, i)
            lhs = D.apply(D.deriv_left_dist(TC.convolve(f, g)), phi)
            first = D.apply(TC.convolve(D.deriv_left_dist(f), g), phi)
            second = D.apply(TC.convolve(f, D.deriv_left_dist(g)), phi)
            rep.record(lhs == first, _text(f, g, phi))
            rep.refuted(f"D-(f*g) = f*D-g on algebra {name}", lhs == second, _text(f, g, phi))
    for name in ("a", "b", "c"):
        report = TC.algebra_closure_check(TC.example_algebra(name), seed=panel.seed)
        rep.record(report.passed, _text(f"algebra {name} closure"))
        rep.details[f"algebra_{name}"] = {
            "closed": report.closed,
            "unity_present": report.unity_present,
            "commutative": report.commutative,
            "associative": report.associative,
            "dimension": len(report.basis),
        }
    return rep


@suite("grid-refutation")
def grid_refutation_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("grid-refutation")
    sampler = TC.sum_sampler(chi_point(0))
    witness = refute_grid_representable(sampler, [-1, 0, 1], [-1, 0, 1], probes=4)
    rep.record(witness is not None, _text("sum sampler of CHI{0} on the unit grid"))
    if witness is not None:
        rep.details["witness"] = {
            "cell": [[str(x) for x in side] for side in witness.cell],
            "values": [[str(x) for x in witness.first], [str(x) for x in witness.second]],
        }
    return rep


@suite("fundamental")
def fundamental_suite(panel: CasePanel, cases: int) -> SuiteReport:
    from .fundamental import bundle, from_fundamental

    rep = SuiteReport("fundamental")
    for i in range(cases):
        f = gen_distribution(panel, i, depth=2)
        b = bundle(f)
        t1, t2, t3 = sorted(_abscissas(panel.rng("chasles", i), panel, 3))
        ok = b.F_open(t1, t3) == b.F_open(t1, t2) ^ b.F_point(t2) ^ b.F_open(t2, t3)
        rep.record(ok, _text(f, f"({t1}, {t2}, {t3})"))
        phi = gen_test_function(panel, i)
        rep.record(from_fundamental(b.F_open, b.F_point)(phi) == D.apply(f, phi), _text(f, phi))
    return rep


@suite("classification")
def classification_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("classification")
    for i in range(cases):
        f = gen_distribution(panel, i, depth=2)
        verdict = D.classify_regularity(f)
        if verdict.kind != "Regular":
            continue
        phi = gen_test_function(panel, i)
        rep.record(D.apply(f, phi) == D.apply(verdict.form.to_distribution(), phi), _text(f, phi))
    return rep


@suite("dsl-roundtrip")
def dsl_suite(panel: CasePanel, cases: int) -> SuiteReport:
    rep = SuiteReport("dsl-roundtrip")
    for i in range(cases):
        ast = gen_ast(panel, i)
        text = dsl.print_canonical(ast)
        back = dsl.parse(text)
        rep.record(back == ast and dsl.print_canonical(back) == text, lambda text=text: text)
    for i in range(cases):
        values = (gen_step_function(panel, i), gen_spike_train(panel, i), gen_test_function2(panel, i))
        for v in values:
            rep.record(dsl.deserialize(dsl.serialize(v)) == v, _text(v))
        f = gen_distribution(panel, i)
        g = dsl.deserialize(dsl.serialize(f))
        rep.record(g == f, _text(f))
    return rep


# -- random syntax trees ---------------------------------------------------------


def _ast_set(rng, panel, depth):
    if depth > 0 and rng.random() < 0.3:
        return dsl.SetOp(rng.choice("UD"), _ast_set(rng, panel, depth - 1), _ast_set_literal(rng, panel))
    return _ast_set_literal(rng, panel)


def _ast_set_literal(rng, panel):
    if rng.random() < 0.7:
        return dsl.SetLit(tuple(_abscissas(rng, panel, rng.randint(0, 3))))
    period = Fraction(rng.randint(1, 8), rng.randint(1, 4))
    return dsl.ProgLit(rng.choice(["PROG", "PROGP", "PROGM"]), _abscissa(rng, panel), period)


def _ast_fn(rng, panel, depth):
    if depth <= 0 or rng.random() < 0.4:
        r = rng.random()
        if r < 0.15:
            return dsl.ConstFn(rng.randint(0, 1))
        if r < 0.5:
            return dsl.ChiPoint(_abscissa(rng, panel))
        a, b = _abscissas(rng, panel, 2)
        if rng.random() < 0.1:
            a = None
        if rng.random() < 0.1:
            b = None
        return dsl.ChiInterval(a, b)
    kind = rng.choice(["+", "*", "TR", "wrap"])
    if kind in ("+", "*"):
        return dsl.Bin(kind, _ast_fn(rng, panel, depth - 1), _ast_fn(rng, panel, depth - 1))
    if kind == "TR":
        return dsl.Tr(_abscissa(rng, panel), _ast_fn(rng, panel, depth - 1))
    return dsl.Wrap(rng.choice(["LIMF-", "LIMF+", "DF-", "DF+"]), _ast_fn(rng, panel, depth - 1))


def _ast_dist(rng, panel, depth):
    if depth <= 0 or rng.random() < 0.35:
        r = rng.random()
        if r < 0.3:
            return dsl.Reg(_ast_set(rng, panel, 1))
        if r < 0.45:
            return dsl.DeltaAt(_abscissa(rng, panel))
        if r < 0.75:
            return dsl.DeltaSide(rng.choice("LR"), _ast_set(rng, panel, 1))
        return dsl.Atom(rng.choice(["PARITY", "INTDL", "INTDR"]))
    kind = rng.choice(["+", ".", "(x)", "(*)", "TR", "wrap"])
    if kind in ("+", "(x)", "(*)"):
        return dsl.Bin(kind, _ast_dist(rng, panel, depth - 1), _ast_dist(rng, panel, depth - 1))
    if kind == ".":
        return dsl.Bin(".", _ast_fn(rng, panel, 1), _ast_dist(rng, panel, depth - 1))
    if kind == "TR":
        return dsl.Tr(_abscissa(rng, panel), _ast_dist(rng, panel, depth - 1))
    return dsl.Wrap(rng.choice(["LIM-", "LIM+", "D-", "D+"]), _ast_dist(rng, panel, depth - 1))


def gen_ast(panel: CasePanel, index: int = 0, depth: int = 3) -> dsl.Ast:
    """Random syntax tree (a set, function or distribution expression).

    The trees are syntactic only; ``(x)``/``(*)`` may combine operands that
    would not evaluate.
    """
    rng = panel.rng("ast", index)
    kind = rng.choice(["set", "fn", "dist", "dist"])
    if kind == "set":
        return _ast_set(rng, panel, depth)
    if kind == "fn":
        return _ast_fn(rng, panel, depth)
    return _ast_dist(rng, panel, depth)
