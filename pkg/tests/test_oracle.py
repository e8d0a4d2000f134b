import pytest

from bdist import dist as D
from bdist import oracle as O
from bdist.errors import UnknownSuite
from bdist.point_sets import LocallyFiniteSet as L
from bdist.step_fn import chi


def test_apply_oracle_examples():
    assert O.apply_oracle(D.delta(0), chi((-1, 1))) == 1
    assert O.apply_oracle(D.Parity(), chi(3)) == 1
    assert O.apply_oracle(D.regular([]), chi((0, 5)) ^ chi(7)) == 0


def test_components_parity():
    assert O.components_parity(chi((0, 1))) == 1
    assert O.components_parity(chi((0, 1)) ^ chi(1)) == 0
    assert O.components_parity(chi((0, 1)) ^ chi(1) ^ chi((1, 2))) == 1


def test_pair_parity():
    # sum 1 is hit twice, sums 0 and 2 once
    assert O.pair_parity([0, 1], [0, 1], chi(1)) == 0
    assert O.pair_parity([0, 1], [0, 1], chi((-1, 3))) == 0
    assert O.pair_parity([0, 1], [0, 1], chi(2)) == 1


def test_generators_are_deterministic():
    a, b = O.CasePanel(seed=1), O.CasePanel(seed=1)
    for i in range(20):
        assert O.gen_test_function(a, i) == O.gen_test_function(b, i)
        assert O.gen_spike_train(a, i) == O.gen_spike_train(b, i)
        assert O.gen_distribution(a, i) == O.gen_distribution(b, i)
        assert O.gen_test_function2(a, i) == O.gen_test_function2(b, i)
        assert O.gen_ast(a, i) == O.gen_ast(b, i)


def test_generated_pairs_evaluate():
    panel = O.CasePanel(seed=3)
    for i in range(200):
        D.apply(O.gen_distribution(panel, i, 4), O.gen_test_function(panel, i))


@pytest.mark.parametrize("name", sorted(O.SUITES))
def test_suites_pass_on_small_panels(name):
    report = O.run_suite(name, O.CasePanel(seed=9), cases=25)
    assert report.ok, report.counterexample
    assert report.passed > 0


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        O.run_suite("nope")


def test_known_refuted_does_not_fail_suite():
    rep = O.SuiteReport("x")
    rep.record(True, lambda: "")
    rep.refuted("claim", False, lambda: "instance")
    assert rep.ok
    rec = rep.as_record()
    assert rec["status"] == "ok"
    assert rec["known_refuted"]["claim"] == {"holds": 0, "fails": 1, "example": "instance"}


def test_failed_record_keeps_first_counterexample():
    rep = O.SuiteReport("x")
    rep.record(False, lambda: "first")
    rep.record(False, lambda: "second")
    assert not rep.ok and rep.counterexample == "first" and rep.failed == 2


def test_counterexample_suite_details():
    rep = O.run_suite("counterexample", O.CasePanel(seed=0), cases=20)
    assert rep.details["canonical_verdict"] == "identity refuted"
    assert rep.details["canonical_sequence"] == [1] * 10
    assert rep.details["canonical_target"] == 0


def test_oracle_handles_convolved_spikes():
    from bdist import tensor_conv as TC
    from bdist.point_sets import NONNEG, Progression

    up = D.Regular(L(progressions=[Progression(0, 1, NONNEG)]))
    h = TC.convolve(up, up)
    panel = O.CasePanel(seed=4)
    for i in range(30):
        phi = O.gen_test_function(panel, i)
        assert D.apply(h, phi) == O.apply_oracle(h, phi)
