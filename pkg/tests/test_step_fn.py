from fractions import Fraction

from hypothesis import given, strategies as st

from bdist.oracle import CasePanel, gen_step_function
from bdist.step_fn import (
    ONE,
    ZERO,
    StepFunction,
    and_fn,
    chi,
    deriv_left,
    deriv_right,
    limit_fn_left,
    support_descriptor,
    translate_fn,
    xor_fn,
)

seeds = st.integers(0, 10_000)
taus = st.fractions(-4, 4, max_denominator=8)


def step(seed):
    return gen_step_function(CasePanel(seed=seed), seed)


def probes(*fs):
    pts = sorted({b for f in fs for b in f.breakpoints} | {Fraction(0)})
    out = set(pts) | {pts[0] - 1, pts[-1] + 1}
    out |= {(a + b) / 2 for a, b in zip(pts, pts[1:])}
    return sorted(out)


def test_chi_point_layout():
    f = chi(0)
    assert f.breakpoints == (0,)
    assert f.point_values == (1,)
    assert f.interval_values == (0, 0)


def test_chi_interval_layout():
    f = chi((0, 1))
    assert f.breakpoints == (0, 1)
    assert f.point_values == (0, 0)
    assert f.interval_values == (0, 1, 0)


def test_half_open_indicator():
    f = chi((0, 1)) ^ chi(1)
    assert f.eval(1) == 1 and f.eval(0) == 0 and f.eval(Fraction(1, 2)) == 1


def test_lateral_limits():
    assert chi((0, 1)).left_limit(1) == 1
    assert chi(0).left_limit(0) == 0
    assert chi((0, 1)).right_limit(0) == 1


def test_derivative_examples():
    assert deriv_left(chi(0)) == chi(0)
    assert deriv_left(chi((0, 1))) == chi(1)
    assert deriv_left(ONE) == ZERO
    assert deriv_right(chi((0, 1))) == chi(0)


def test_pointwise_operations():
    x = xor_fn(chi((0, 2)), chi((1, 3)))
    assert x.eval(Fraction(3, 2)) == 0
    assert x.eval(Fraction(1, 2)) == 1 and x.eval(1) == 1 and x.eval(2) == 1
    assert x.eval(3) == 0
    assert translate_fn(chi(0), 2) == chi(2)
    assert limit_fn_left(chi(0)) == ZERO
    assert and_fn(chi((0, 2)), chi((1, 3))) == chi((1, 2))


def test_support_descriptor_examples():
    d = support_descriptor(chi((0, 1)) ^ chi(1) ^ chi((1, 2)))
    assert [str(c) for c in d.components] == ["(0, 2)"]
    d = support_descriptor(chi(5))
    assert [str(c) for c in d.components] == ["{5}"]
    d = support_descriptor(ONE)
    assert d.left_unbounded and d.right_unbounded


def test_canonical_merge_drops_redundant_breakpoints():
    f = chi((0, 1)) ^ chi(1) ^ chi((1, 2))
    assert f == chi((0, 2))
    assert f.breakpoints == (0, 2)


@given(seeds)
def test_round_trip_from_samples(seed):
    f = step(seed).canonicalize()
    rebuilt = StepFunction.from_function(f.eval, f.breakpoints)
    assert rebuilt == f
    assert f.canonicalize() == f


@given(seeds, seeds)
def test_xor_and_are_pointwise(s1, s2):
    f, g = step(s1), step(s2)
    for t in probes(f, g):
        assert (f ^ g).eval(t) == f.eval(t) ^ g.eval(t)
        assert (f & g).eval(t) == f.eval(t) & g.eval(t)


@given(seeds, taus)
def test_translate_pointwise(seed, tau):
    f = step(seed)
    g = f.translate(tau)
    for t in probes(f):
        assert g.eval(t + tau) == f.eval(t)


@given(seeds)
def test_limit_functions_and_derivatives(seed):
    f = step(seed)
    lf, rf = f.limit_left(), f.limit_right()
    for t in probes(f):
        assert lf.eval(t) == f.left_limit(t)
        assert rf.eval(t) == f.right_limit(t)
        assert f.deriv_left().eval(t) == f.eval(t) ^ f.left_limit(t)
        assert f.deriv_right().eval(t) == f.eval(t) ^ f.right_limit(t)


@given(seeds)
def test_reflect_is_involution(seed):
    f = step(seed)
    assert f.reflect().reflect() == f
    for t in probes(f):
        assert f.reflect().eval(-t) == f.eval(t)
