from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from bdist import dist as D
from bdist import dsl
from bdist.errors import DslSyntaxError, DslTypeError, EmptyInterval, VersionMismatch, ZeroPeriod
from bdist.oracle import (
    CasePanel,
    gen_ast,
    gen_distribution,
    gen_spike_train,
    gen_step_function,
    gen_test_function2,
)
from bdist.point_sets import LocallyFiniteSet as L
from bdist.step_fn import chi

GOLDEN = sorted((Path(__file__).parent / "golden").glob("*.bd"))
seeds = st.integers(0, 10_000)


def test_parse_examples():
    assert dsl.evaluate("REG{0,1}") == D.regular([0, 1])
    assert dsl.evaluate("D-(REG{0})") == D.DerivLeft(D.delta(0))
    assert dsl.evaluate("CHI{(0,1)} + CHI{1}") == chi((0, 1)) ^ chi(1)
    assert dsl.print_canonical(dsl.parse("CHI{(0,1)} + CHI{1}")) == "CHI{(0, 1)} + CHI{1}"


def test_canonical_printing():
    assert dsl.print_canonical(dsl.parse("REG{1,0}")) == "REG{0, 1}"
    assert dsl.print_canonical(dsl.parse("DELTA( 2/4 )")) == "DELTA(1/2)"
    assert dsl.print_canonical(dsl.parse("REG{0.5}")) == "REG{1/2}"


def test_precedence():
    # "." binds tighter than "+"; "(x)" sits between them
    text = "CHI{(0,1)} . PARITY + INTDL"
    assert dsl.evaluate(text) == D.Xor(D.Scale(chi((0, 1)), D.Parity()), D.IntDerivLeft())
    text = dsl.print_canonical(dsl.parse("REG{0} (x) REG{1} + REG{2} (x) REG{3}"))
    assert text == "REG{0} (x) REG{1} + REG{2} (x) REG{3}"


def test_syntax_errors_are_positioned():
    with pytest.raises(DslSyntaxError) as err:
        dsl.parse("REG{0,,1}")
    assert err.value.pos == 6
    with pytest.raises(DslSyntaxError):
        dsl.parse("CHI{(0,1)")


def test_domain_errors_while_reading():
    with pytest.raises(ZeroPeriod):
        dsl.evaluate("REG PROG(0, 0)")
    with pytest.raises(EmptyInterval):
        dsl.evaluate("CHI{(1, 0)}")


def test_kind_errors():
    with pytest.raises(DslTypeError):
        dsl.evaluate("PARITY . CHI{(0,1)}")
    with pytest.raises(DslTypeError):
        dsl.evaluate("REG{0} + CHI{0}")


def test_version_header():
    assert dsl.serialize(chi((0, 1))) == "#bd 1\nCHI{(0, 1)}\n"
    assert dsl.deserialize("#bd 1\n# comment\nREG{0}\n") == D.delta(0)
    with pytest.raises(VersionMismatch):
        dsl.deserialize("#bd 2\nREG{0}\n")
    with pytest.raises(VersionMismatch):
        dsl.deserialize("REG{0}\n")


def test_set_round_trip():
    s = L([0, 1]) ^ L.prog(0, 2)
    assert dsl.deserialize(dsl.serialize(s)) == s


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_files(path):
    text = path.read_text()
    value = dsl.deserialize(text)
    assert dsl.serialize(value) == text
    body = text.splitlines()[1]
    assert dsl.print_canonical(dsl.parse(body)) == body


@given(seeds)
def test_print_parse_fixpoint(seed):
    ast = gen_ast(CasePanel(seed=seed), seed)
    text = dsl.print_canonical(ast)
    assert dsl.parse(text) == ast
    assert dsl.print_canonical(dsl.parse(text)) == text


@given(seeds)
def test_serialize_round_trip(seed):
    panel = CasePanel(seed=seed)
    for v in (
        gen_step_function(panel, 0),
        gen_spike_train(panel, 0),
        gen_test_function2(panel, 0),
        gen_distribution(panel, 0, 4),
    ):
        assert dsl.deserialize(dsl.serialize(v)) == v
