import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdist import dist as D
from bdist import tensor_conv as TC
from bdist.core import Window
from bdist.errors import ConvolutionUndefined
from bdist.oracle import (
    CasePanel,
    apply_oracle,
    gen_distribution,
    gen_finite_train,
    gen_test_function,
    gen_test_function2,
    pair_parity,
    regular2_pair_parity,
)
from bdist.point_sets import NONNEG, NONPOS, LocallyFiniteSet as L, Progression
from bdist.step_fn import chi
from bdist.test_fn import chi2, refute_grid_representable

seeds = st.integers(0, 10_000)
ZERO = D.regular([])


def phis(seed, n=40):
    p = CasePanel(seed=seed, magnitude=3, max_denominator=4)
    return [gen_test_function(p, i) for i in range(n)]


def test_tensor_of_point_masses():
    phi2 = chi2((-1, 1), (0, 2)) ^ chi2(0, 1)
    assert TC.apply2(TC.Tensor(D.delta(0), D.delta(1)), phi2) == phi2.eval(0, 1)
    assert TC.tensor(D.delta(0), D.delta(1)) == TC.Regular2(frozenset({(0, 1)}))
    assert TC.apply2(TC.tensor(D.Parity(), ZERO), phi2) == 0


def test_tensor_examples():
    phi2 = chi2((-1, 2), (-1, 1))
    assert TC.apply2(TC.Tensor(D.regular([0, 1]), D.delta(0)), phi2) == 0
    assert TC.apply2(TC.tensor(D.delta_left([0]), D.delta(0)), chi2((-1, 0), 0)) == 1
    assert TC.commutativity_check(D.delta(0), D.delta(1), chi2((-1, 1), (0, 2))) == (1, 1)


def test_partial_operators():
    F = TC.Tensor(D.delta(0), D.delta(0))
    assert TC.apply2(TC.partial_deriv(F, TC.U_AXIS, TC.LEFT), chi2(0, 0)) == 1
    raw = TC.PartialDeriv(TC.U_AXIS, TC.LEFT, F)
    assert TC.apply2(raw, chi2(0, 0)) == 1
    assert TC.apply2(TC.partial_limit(TC.Tensor(D.delta(0), ZERO), TC.T_AXIS, TC.LEFT), chi2((-1, 1), (-1, 1))) == 0


@given(seeds)
def test_partial_limit_idempotent(seed):
    panel = CasePanel(seed=seed)
    F = TC.Tensor(gen_distribution(panel, 0, 2), gen_distribution(panel, 1, 2))
    phi2 = gen_test_function2(panel, 0)
    for axis in (TC.T_AXIS, TC.U_AXIS):
        for side in (TC.LEFT, TC.RIGHT):
            once = TC.PartialLimit(axis, side, F)
            assert TC.apply2(TC.PartialLimit(axis, side, once), phi2) == TC.apply2(once, phi2)


@given(seeds)
def test_tensor_fubini_and_bilinearity(seed):
    panel = CasePanel(seed=seed)
    f, g, h = (gen_distribution(panel, k, 2) for k in range(3))
    phi2 = gen_test_function2(panel, 0)
    a, b = TC.commutativity_check(f, g, phi2)
    assert a == b == TC.Tensor(f, g).apply_u_first(phi2)
    both = TC.apply2(TC.Tensor(f, g), phi2) ^ TC.apply2(TC.Tensor(h, g), phi2)
    assert TC.apply2(TC.Tensor(D.Xor(f, h), g), phi2) == both


@given(seeds)
def test_regular_tensor_is_pair_parity(seed):
    panel = CasePanel(seed=seed)
    a, b = gen_finite_train(panel, 0), gen_finite_train(panel, 1)
    phi2 = gen_test_function2(panel, 0)
    want = regular2_pair_parity(a.points, b.points, phi2)
    assert TC.apply2(TC.Tensor(D.Regular(a), D.Regular(b)), phi2) == want
    assert TC.apply2(TC.tensor(D.Regular(a), D.Regular(b)), phi2) == want


def test_convolution_is_gf2_square():
    assert TC.convolve(D.regular([0, 1]), D.regular([0, 1])) == D.regular([0, 2])
    assert TC.spike_convolution([0, 1], [0, 1, 2]) == L([0, 3])


@pytest.mark.parametrize(
    "g", [D.Parity(), D.delta_left([1]), D.IntDerivRight(), D.regular([Fraction(1, 2), 3])]
)
def test_delta_is_unity(g):
    assert all(D.apply(TC.convolve(D.delta(0), g), p) == D.apply(g, p) for p in phis(1, 200))


def test_lateral_atoms_do_not_commute():
    dl, dr = D.delta_left([0]), D.delta_right([0])
    assert D.equal_on(TC.convolve(dl, dl), dl, phis(2))
    assert D.equal_on(TC.convolve(dl, dr), dl, phis(3))
    assert D.equal_on(TC.convolve(dr, dl), dr, phis(4))
    assert not D.equal_on(TC.convolve(dl, dr), TC.convolve(dr, dl), phis(5))


def test_convolution_outside_table():
    with pytest.raises(ConvolutionUndefined):
        TC.convolve(D.Regular(L.prog(0, 1)), D.Regular(L.prog(0, 2)))
    with pytest.raises(ConvolutionUndefined):
        TC.convolve(D.Parity(), D.IntDerivLeft())


def test_one_sided_trains_convolve():
    up = L(progressions=[Progression(0, 1, NONNEG)])
    f = TC.convolve(D.Regular(up), D.Regular(up))
    # 0..n summed pairwise: n is hit n+1 times
    assert D.probe_regular_support(f, Window(-1, 6)) == [0, 2, 4, 6]
    down = L(progressions=[Progression(0, 1, NONPOS)])
    with pytest.raises(ConvolutionUndefined):
        TC.convolve(D.Regular(up), D.Regular(down))


@given(seeds)
def test_convolution_laws_on_finite_trains(seed):
    panel = CasePanel(seed=seed)
    a, b, c = (gen_finite_train(panel, k) for k in range(3))
    fa, fb, fc = D.Regular(a), D.Regular(b), D.Regular(c)
    phi = gen_test_function(panel, 0)
    ab = TC.convolve(fa, fb)
    assert D.apply(ab, phi) == pair_parity(a.points, b.points, phi) == apply_oracle(ab, phi)
    assert ab == TC.convolve(fb, fa)
    assert TC.convolve(ab, fc) == TC.convolve(fa, TC.convolve(fb, fc))


@given(seeds)
def test_atom_convolution_matches_nested_definition(seed):
    panel = CasePanel(seed=seed)
    f = gen_distribution(panel, 0, 2)
    rng = random.Random(seed)
    g = TC.random_algebra_element(TC.example_algebra("c"), rng)
    phi = gen_test_function(panel, 0)
    h = TC.convolve(f, g)
    assert D.apply(h, phi) == apply_oracle(h, phi)


@pytest.mark.parametrize("name", ["a", "b", "c"])
def test_example_algebras_close(name):
    report = TC.algebra_closure_check(TC.example_algebra(name))
    assert report.closed and report.unity_present and report.associative
    assert report.commutative == (name == "a")


@pytest.mark.parametrize("name", ["b", "c"])
def test_derivative_passes_to_first_factor(name):
    spec = TC.example_algebra(name)
    rng = random.Random(name)
    for phi in phis(8, 100):
        f, g = TC.random_algebra_element(spec, rng), TC.random_algebra_element(spec, rng)
        lhs = D.apply(D.deriv_left_dist(TC.convolve(f, g)), phi)
        assert lhs == D.apply(TC.convolve(D.deriv_left_dist(f), g), phi)


def test_derivative_on_second_factor_counterexample():
    f = D.xor_dist(D.delta(0), D.delta_right([0]))
    g = D.delta_right([0])
    phi = chi((-1, 0))
    lhs = D.apply(D.deriv_left_dist(TC.convolve(f, g)), phi)
    assert lhs != D.apply(TC.convolve(f, D.deriv_left_dist(g)), phi)


def test_sum_sampler_grid_witness():
    w = refute_grid_representable(TC.sum_sampler(chi(0)), [-1, 0, 1], [-1, 0, 1], probes=4)
    assert w is not None
