import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from bdist.cli import EXIT_DOMAIN, EXIT_FAIL, EXIT_NO_FAMILY, EXIT_PARSE, main

ROOT = Path(__file__).resolve().parent.parent
CLI_GOLDEN = Path(__file__).parent / "golden" / "cli"
CASES = json.loads((CLI_GOLDEN / "cases.json").read_text())


def run(argv):
    """Run the CLI in a fresh interpreter from the repository root."""
    env = dict(os.environ)
    env.pop("BDIST_SEED", None)
    proc = subprocess.run(
        [sys.executable, "-m", "bdist.cli", *argv], capture_output=True, text=True, cwd=ROOT, env=env
    )
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name):
    code, out = run(CASES[name])
    assert f"exit {code}\n" + out == (CLI_GOLDEN / f"{name}.out").read_text()


@pytest.mark.parametrize("name", ["eval_trace", "fund_parity", "algebra_b", "check_convolution", "plot_svg"])
def test_byte_identical_reruns(name):
    assert run(CASES[name]) == run(CASES[name])


def test_spec_examples(capsys):
    assert main(["eval", "--dist", "DELTA(0)", "--phi", "CHI{(-1,1)}"]) == 0
    assert main(["canon", "--fn", "CHI{(0,1)} + CHI{1} + CHI{(1,2)}"]) == 0
    assert main(["regular", "--dist", "DELTAL{0}", "--window", "-1", "1"]) == 0
    assert capsys.readouterr().out == "1\nCHI{(0, 2)}\nSINGULAR at t=0 (F*)\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--dist", "REG{0,,1}", "--phi", "CHI{0}"],
        ["eval", "--dist", "CHI{0}", "--phi", "CHI{0}"],
        ["eval", "--dist", "REG PROG(0, 0)", "--phi", "CHI{0}"],
        ["canon", "--fn", "CHI{(2, 1)}"],
        ["fund", "--dist", "PARITY", "--window", "1", "0"],
        ["plot", "--fn", "CHI{0}", "--window", "1", "1"],
        ["check", "--suite", "nope"],
        ["eval", "--dist", "@/nonexistent/file.bd", "--phi", "CHI{0}"],
        ["eval", "--dist", "REG{0}", "--phi", "#bd 9\nCHI{0}"],
    ],
)
def test_exit_parse(argv, capsys):
    assert main(argv) == EXIT_PARSE
    assert capsys.readouterr().err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--dist", "REG{0}", "--phi", "1"],
        ["eval", "--dist", "REG{0}", "--phi", "CHI{(0, inf)}"],
        ["conv", "--f", "REG PROG(0,1)", "--g", "REG PROG(0,2)"],
        ["conv", "--f", "PARITY", "--g", "INTDL"],
    ],
)
def test_exit_domain(argv, capsys):
    assert main(argv) == EXIT_DOMAIN


def test_strict_decomposition(capsys):
    assert main(["fund", "--dist", "PARITY", "--window", "0", "2"]) == 0
    assert main(["fund", "--dist", "PARITY", "--window", "0", "2", "--strict"]) == EXIT_NO_FAMILY
    assert main(["regular", "--dist", "PARITY", "--window", "0", "2", "--strict"]) == EXIT_NO_FAMILY
    assert main(["regular", "--dist", "REG{0}", "--window", "0", "2", "--strict"]) == 0


def test_check_failure_exit_code(monkeypatch, capsys):
    from bdist import oracle

    def broken(panel, cases):
        rep = oracle.SuiteReport("broken")
        rep.record(False, lambda: "x")
        return rep

    monkeypatch.setitem(oracle.SUITES, "broken", broken)
    assert main(["check", "--suite", "broken"]) == EXIT_FAIL
    assert json.loads(capsys.readouterr().out)["status"] == "fail"


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("BDIST_SEED", "5")
    main(["check", "--suite", "convolution", "--cases", "40"])
    from_env = capsys.readouterr().out
    assert from_env == (CLI_GOLDEN / "check_convolution.out").read_text().split("\n", 1)[1]


def test_plot_to_file(tmp_path, capsys):
    out = tmp_path / "wave.svg"
    argv = ["plot", "--fn", "CHI{(0,1)}", "--window", "-1", "2", "--format", "svg", "--out", str(out)]
    assert main(argv) == 0
    text = out.read_text()
    assert text.startswith("<?xml") and "<script" not in text and text.rstrip().endswith("</svg>")


def test_expression_files(tmp_path, capsys):
    f = tmp_path / "d.bd"
    f.write_text("#bd 1\nPARITY\n")
    assert main(["eval", "--dist", str(f), "--phi", "CHI{(0,1)}"]) == 0
    assert capsys.readouterr().out == "1\n"
