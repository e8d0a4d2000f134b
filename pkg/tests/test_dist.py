from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdist import dist as D
from bdist.core import Window
from bdist.errors import UnboundedSupport
from bdist.oracle import CasePanel, apply_oracle, components_parity, gen_distribution, gen_step_function, gen_test_function
from bdist.point_sets import LocallyFiniteSet as L
from bdist.step_fn import ONE, ZERO, chi

seeds = st.integers(0, 10_000)


def case(seed, depth=3):
    p = CasePanel(seed=seed)
    return gen_distribution(p, seed, depth), gen_test_function(p, seed), gen_test_function(p, seed + 1)


def phis(seed, n=20):
    p = CasePanel(seed=seed)
    return [gen_test_function(p, i) for i in range(n)]


def test_apply_examples():
    assert D.apply(D.delta(0), chi((-1, 1))) == 1
    assert D.apply(D.DeltaLeft(L([0])), chi(0)) == 0
    assert D.apply(D.Parity(), chi((0, 1)) ^ chi(2)) == 0
    assert D.apply(D.IntDerivLeft(), chi((0, 1))) == 1
    assert D.apply(D.IntDerivRight(), chi((0, 1))) == 1
    assert D.apply(D.Xor(D.delta(0), D.delta(0)), chi((-3, 3))) == 0


def test_apply_rejects_unbounded():
    with pytest.raises(UnboundedSupport):
        D.apply(D.delta(0), ONE)


def test_lateral_deltas():
    phi = chi((-1, 0)) ^ chi(0)
    assert D.apply(D.delta_left([0]), phi) == 1
    assert D.apply(D.delta_right([0]), phi) == 0


def test_parity_counts_pieces():
    assert D.apply(D.Parity(), chi((0, 1))) == 1
    assert D.apply(D.Parity(), chi((0, 1)) ^ chi(1)) == 0
    assert D.apply(D.Parity(), chi(3)) == 1


def test_simplifying_constructors():
    assert D.translate_dist(D.delta(0), 2) == D.delta(2)
    assert D.scale_dist(chi((-1, 1)), D.regular([0, 5])) == D.delta(0)
    f = D.Xor(D.Parity(), D.delta_left([1]))
    assert all(D.apply(D.xor_dist(f, f), p) == 0 for p in phis(3))


def test_limits_and_derivatives_of_delta():
    assert D.equal_on(D.limit_left(D.delta(1)), D.delta_left([1]), phis(4))
    assert D.equal_on(D.limit_right(D.delta(1)), D.delta_right([1]), phis(5))
    assert D.apply(D.deriv_left_dist(D.delta(0)), chi(0)) == 1


def test_parity_is_both_integrated_derivatives():
    for p in phis(6, 50):
        v = D.apply(D.Parity(), p)
        assert v == D.apply(D.IntDerivLeft(), p) == D.apply(D.IntDerivRight(), p)


def test_classify_regularity():
    r = D.classify_regularity(D.regular([0, 1]))
    assert r.kind == "Regular" and r.support == L([0, 1])
    assert D.classify_regularity(D.delta_left([0])).kind == "Singular"
    assert D.classify_regularity(D.Xor(D.delta(0), D.IntDerivLeft())).kind == "Singular"


def test_convergence_check_examples():
    r = D.convergence_check(D.delta(0), ONE, chi((0, 1)), n_terms=10)
    assert r.stabilized and r.limit == 0
    r = D.convergence_check(D.Parity(), ONE, chi((0, 1)) ^ chi(1), n_terms=10)
    assert r.stabilized and r.limit == 0 and r.limit_minus == 0
    r = D.convergence_check(D.regular([]), ONE, chi((0, 1)))
    assert r.stabilized and r.rank == 1 and r.limit == 0


@pytest.mark.parametrize("n", [10, 5, 3])
def test_translate_limit_counterexample(n):
    r = D.translate_limit_counterexample(n)
    assert r.constant and set(r.sequence) == {1}
    assert r.target == 0
    assert r.refuted and r.verdict == "identity refuted"


def test_counterexample_zero_input():
    r = D.translate_limit_counterexample(5, ZERO)
    assert not r.refuted and r.verdict == "not a counterexample input"


@given(seeds)
def test_linearity(seed):
    f, phi, chi_ = case(seed)
    assert D.apply(f, phi ^ chi_) == D.apply(f, phi) ^ D.apply(f, chi_)


@given(seeds)
def test_apply_matches_oracle(seed):
    f, phi, _ = case(seed, depth=4)
    assert D.apply(f, phi) == apply_oracle(f, phi)


@given(seeds, st.fractions(-3, 3, max_denominator=4))
def test_translation_adjunction(seed, tau):
    f, phi, _ = case(seed)
    assert D.apply(D.translate_dist(f, tau), phi) == D.apply(f, phi.translate(-tau))


@given(seeds)
def test_scaling_adjunction(seed):
    f, phi, _ = case(seed)
    psi = gen_step_function(CasePanel(seed=seed), seed)
    assert D.apply(D.scale_dist(psi, f), phi) == D.apply(f, psi & phi)


@given(seeds)
def test_limit_and_derivative_relation(seed):
    f, phi, _ = case(seed, depth=2)
    lhs = D.apply(D.DerivLeft(f), phi)
    assert lhs == D.apply(f, phi) ^ D.apply(D.LimitLeft(f), phi)
    assert D.apply(D.DerivLeft(f), phi) == D.apply(D.deriv_left_dist(f), phi)
    assert D.apply(D.DerivRight(f), phi) == D.apply(D.deriv_right_dist(f), phi)


@given(seeds)
def test_iteration(seed):
    f, phi, _ = case(seed, depth=2)
    lm, lp, dm, dp = D.LimitLeft, D.LimitRight, D.DerivLeft, D.DerivRight
    # the outer limit wins, the inner derivative wins
    for first in (lm, lp):
        for second in (lm, lp):
            assert D.apply(second(first(f)), phi) == D.apply(second(f), phi)
    for first in (dm, dp):
        for second in (dm, dp):
            assert D.apply(second(first(f)), phi) == D.apply(first(f), phi)


@given(seeds)
def test_parity_matches_component_count(seed):
    phi = gen_test_function(CasePanel(seed=seed), seed)
    assert D.apply(D.Parity(), phi) == components_parity(phi)


def test_probe_regular_support():
    f = D.regular([0, Fraction(1, 2), 3])
    assert D.probe_regular_support(f, Window(-1, 1)) == [0, Fraction(1, 2)]
