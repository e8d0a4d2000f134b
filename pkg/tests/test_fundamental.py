from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdist import dist as D
from bdist.core import Window
from bdist.errors import NoVanishingFamily
from bdist.fundamental import (
    RegularOnWindow,
    SingularWitness,
    bundle,
    decompose,
    from_fundamental,
    regularity_criterion,
    support_indicator,
    support_window_report,
)
from bdist.oracle import CasePanel, gen_abscissa, gen_distribution, gen_finite_train, gen_test_function

seeds = st.integers(0, 10_000)
ZERO = D.regular([])


def test_interval_and_point_functions():
    b = bundle(D.delta(0))
    assert b.F_open(-1, 1) == 1
    assert b.F_point(0) == 1 and b.F_point(1) == 0
    assert b.F_open(1, 1) == 0 and bundle(D.Parity()).F_open(2, 1) == 0


def test_one_sided_limits():
    assert bundle(D.delta(0)).F_star(0) == 0
    assert bundle(D.delta_left([0])).F_star(0) == 1
    assert bundle(D.delta_right([0])).F_substar(0) == 1
    z = bundle(ZERO)
    assert not any(z.F_star(t) or z.F_substar(t) for t in range(-3, 4))


def test_support_indicator():
    assert support_indicator(bundle(D.delta(0)), -1, 1) == 1
    assert support_window_report(bundle(ZERO), Window(-2, 2)).pair_count == 0
    p = bundle(D.Parity())
    assert all(support_indicator(p, a, b) for a in range(-3, 3) for b in range(a + 1, 4))


def test_window_report_of_spikes():
    rep = support_window_report(bundle(D.regular([0, 1])), Window(-1, 2))
    assert rep.points == (0, 1)
    assert rep.adjacent_pairs == ()


def test_decompose_examples():
    b = bundle(D.regular([0, 1]))
    assert decompose(b, Window(-1, 2)) == [-1, 0, 1, 2]
    assert b.F_open(0, 1) == 0
    assert decompose(bundle(ZERO), Window(-1, 2)) == [-1, 2]
    with pytest.raises(NoVanishingFamily):
        decompose(bundle(D.Parity()), Window(-1, 2))


def test_decompose_without_vanishing_interior():
    pts = decompose(bundle(D.Parity()), Window(-1, 2), vanishing=False)
    assert pts[0] == -1 and pts[-1] == 2
    assert pts == sorted(set(pts))


@pytest.mark.parametrize("f", [D.delta(0), D.delta_left([0]), D.Parity(), ZERO])
def test_from_fundamental_round_trip(f):
    b = bundle(f)
    rebuilt = from_fundamental(b.F_open, b.F_point)
    panel = CasePanel(seed=11)
    assert all(rebuilt(gen_test_function(panel, i)) == D.apply(f, gen_test_function(panel, i)) for i in range(100))


def test_null_functional():
    null = from_fundamental(lambda a, b: 0, lambda t: 0)
    assert null(gen_test_function(CasePanel(seed=2), 0)) == 0


def test_regularity_criterion_examples():
    assert isinstance(regularity_criterion(bundle(D.regular([0, 1])), Window(-2, 2)), RegularOnWindow)
    v = regularity_criterion(bundle(D.delta_left([0])), Window(-1, 1))
    assert v == SingularWitness(0, "F*") and str(v) == "SINGULAR at t=0 (F*)"
    v = regularity_criterion(bundle(D.IntDerivLeft()), Window(-1, 1))
    assert v == SingularWitness(-1, "F*")
    assert str(regularity_criterion(bundle(D.delta(0)), Window(-1, 1))) == "REGULAR on [-1, 1]"


@pytest.mark.parametrize(
    "f", [D.delta_left([0]), D.delta_right([0]), D.IntDerivLeft(), D.IntDerivRight(), D.Parity()]
)
@given(seed=seeds)
def test_singular_sources_flagged(f, seed):
    panel = CasePanel(seed=seed)
    lo = gen_abscissa(panel, 0, magnitude=3)
    lo = min(lo, -abs(lo) - 1)
    hi = abs(gen_abscissa(panel, 1, magnitude=3)) + 1
    assert isinstance(regularity_criterion(bundle(f), Window(lo, hi)), SingularWitness)


@given(seeds)
def test_spike_trains_regular(seed):
    panel = CasePanel(seed=seed)
    f = D.Regular(gen_finite_train(panel, seed))
    a = gen_abscissa(panel, 0)
    assert isinstance(regularity_criterion(bundle(f), Window(a, a + 5)), RegularOnWindow)


@given(seeds)
def test_interval_function_additivity(seed):
    panel = CasePanel(seed=seed)
    b = bundle(gen_distribution(panel, seed, depth=2))
    t1 = gen_abscissa(panel, 0)
    t2 = t1 + abs(gen_abscissa(panel, 1)) / 2 + Fraction(1, 8)
    t3 = t2 + abs(gen_abscissa(panel, 2)) / 2 + Fraction(1, 8)
    assert b.F_open(t1, t3) == b.F_open(t1, t2) ^ b.F_point(t2) ^ b.F_open(t2, t3)
