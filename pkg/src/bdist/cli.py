"""``bdist`` command line: evaluate, canonicalize, inspect, check and plot.

Exit codes: 0 success, 1 a check suite failed, 2 unreadable input (syntax,
kind or version errors), 3 domain errors, 4 a required vanishing family does
not exist (``--strict`` only).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import dist as D
from . import oracle as O
from . import tensor_conv as TC
from .core import Window, fmt_rat, rat
from .dsl import read_expr, to_text
from .errors import (
    BdistError,
    DomainError,
    DslSyntaxError,
    DslTypeError,
    EmptyInterval,
    NoVanishingFamily,
    UnknownSuite,
    VersionMismatch,
    ZeroPeriod,
)
from .fundamental import bundle, decompose, regularity_criterion
from .step_fn import StepFunction
from .test_fn import TestFunction2

EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_NO_FAMILY = 1, 2, 3, 4


class InputError(BdistError):
    """Unusable command-line input (wrong kind of value, bad window, ...)."""


def _read(text: str, kind, flag: str):
    try:
        value = read_expr(text)
    except (ZeroPeriod, EmptyInterval) as exc:
        raise InputError(f"{flag}: {exc}") from exc
    if not isinstance(value, kind):
        raise InputError(f"{flag} expects a {kind.__name__}, got {type(value).__name__}")
    return value


def _window(pair: Sequence[str]) -> Window:
    lo, hi = rat(pair[0]), rat(pair[1])
    if lo > hi:
        raise InputError("window needs lo <= hi")
    return Window(lo, hi)


def _out(lines) -> None:
    for line in lines:
        print(line)


# -- subcommands -----------------------------------------------------------------


def cmd_eval(args) -> int:
    f = _read(args.dist, D.Distribution, "--dist")
    phi = _read(args.phi, StepFunction, "--phi")
    if args.trace:
        value, trace = D.apply_traced(f, phi)
        for node, sign, eps, v in trace:
            side = "left" if sign > 0 else "right"
            print(f"# limit {side} of {to_text(node)} at eps={fmt_rat(eps)} -> {v}")
    else:
        value = D.apply(f, phi)
    print(value)
    return 0


def cmd_canon(args) -> int:
    print(to_text(_read(args.fn, object, "--fn")))
    return 0


def _decomposition_line(b, w, strict: bool) -> str:
    try:
        pts = decompose(b, w)
        return "decomposition: " + ", ".join(fmt_rat(t) for t in pts)
    except NoVanishingFamily as exc:
        if strict:
            raise
        pts = decompose(b, w, vanishing=False)
        print(f"note: {exc}", file=sys.stderr)
        return "decomposition (interior not vanishing): " + ", ".join(fmt_rat(t) for t in pts)


def cmd_fund(args) -> int:
    f = _read(args.dist, D.Distribution, "--dist")
    w = _window(args.window)
    b = bundle(f)
    pts = sorted({c for c in f.critical(w) if w.lo <= c <= w.hi} | {w.lo, w.hi})
    width = max(len(fmt_rat(t)) for t in pts) + 2
    lines = [f"window [{fmt_rat(w.lo)}, {fmt_rat(w.hi)}]", f"{'t':<{width}}F0  F*  F_*"]
    for t in pts:
        lines.append(f"{fmt_rat(t):<{width}}{b.F_point(t)}   {b.F_star(t)}   {b.F_substar(t)}")
    lines.append("pair" + " " * (2 * width - 2) + "F")
    for x, y in zip(pts, pts[1:]):
        label = f"({fmt_rat(x)}, {fmt_rat(y)})"
        lines.append(f"{label:<{2 * width + 2}}{b.F_open(x, y)}")
    _out(lines)
    print(_decomposition_line(b, w, args.strict))
    return 0


def cmd_regular(args) -> int:
    f = _read(args.dist, D.Distribution, "--dist")
    w = _window(args.window)
    b = bundle(f)
    print(regularity_criterion(b, w))
    if args.strict:
        decompose(b, w)
    return 0


def cmd_conv(args) -> int:
    f = _read(args.f, D.Distribution, "--f")
    g = _read(args.g, D.Distribution, "--g")
    h = TC.convolve(f, g)
    if args.phi is None:
        print(to_text(h))
    else:
        print(D.apply(h, _read(args.phi, StepFunction, "--phi")))
    return 0


def cmd_tensor(args) -> int:
    f = _read(args.f, D.Distribution, "--f")
    g = _read(args.g, D.Distribution, "--g")
    phi2 = _read(args.phi2, TestFunction2, "--phi2")
    print(TC.apply2(TC.tensor(f, g), phi2))
    return 0


def cmd_algebra(args) -> int:
    gens = tuple(_read(t.strip(), D.Distribution, "--gen") for t in args.gen.split(";") if t.strip())
    spec = TC.ConvolutionAlgebraSpec(gens, args.depth)
    report = TC.algebra_closure_check(spec, panel_size=args.cases, seed=args.seed)
    print(f"closed: {'yes' if report.closed else 'no'}")
    print(f"stabilized: {'yes' if report.stabilized else 'no'}")
    print(f"unity present: {'yes' if report.unity_present else 'no'}")
    print(f"commutative: {'yes' if report.commutative else 'no'}")
    print(f"associative: {'yes' if report.associative else 'no'}")
    print("basis: " + " ; ".join(to_text(v) for v in report.basis))
    for a, b in report.noncommuting:
        print(f"noncommuting: {to_text(a)} ; {to_text(b)}")
    return 0 if report.passed else EXIT_FAIL


def cmd_check(args) -> int:
    panel = O.CasePanel(seed=args.seed)
    names = list(O.SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        report = O.run_suite(name, panel, args.cases)
        print(json.dumps(report.as_record(), sort_keys=True, default=str))
        if not report.ok:
            status = EXIT_FAIL
    return status


def cmd_plot(args) -> int:
    from .plot import ascii_plot, svg_plot

    f = _read(args.fn, StepFunction, "--fn")
    w = _window(args.window)
    if w.lo >= w.hi:
        raise InputError("plot needs lo < hi")
    text = ascii_plot(f, w) if args.format == "ascii" else svg_plot(f, w)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser ------------------------------------------------------------------------


def _default_seed() -> int:
    try:
        return int(os.environ.get("BDIST_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bdist", description="Exact binary distribution calculus.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="apply a distribution to a test function")
    s.add_argument("--dist", required=True)
    s.add_argument("--phi", required=True)
    s.add_argument("--trace", action="store_true", help="print every limit evaluation")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("canon", help="print the canonical form of an expression")
    s.add_argument("--fn", "--expr", dest="fn", required=True)
    s.set_defaults(func=cmd_canon)

    for name, func, helptext in (
        ("fund", cmd_fund, "table of fundamental functions on a window"),
        ("regular", cmd_regular, "regularity verdict on a window"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--dist", required=True)
        s.add_argument("--window", nargs=2, required=True, metavar=("A", "B"))
        s.add_argument("--strict", action="store_true", help="require a vanishing decomposition")
        s.set_defaults(func=func)

    s = sub.add_parser("conv", help="convolution product")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--phi")
    s.set_defaults(func=cmd_conv)

    s = sub.add_parser("tensor", help="direct product applied to a two-variable test function")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--phi2", required=True)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("algebra", help="close generators under convolution")
    s.add_argument("--gen", required=True, help="generators separated by ';'")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--cases", type=int, default=24, help="test functions used to re-identify products")
    s.add_argument("--seed", type=int, default=_default_seed())
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("check", help="run identity suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--seed", type=int, default=_default_seed())
    s.add_argument("--cases", type=int, default=200)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("plot", help="waveform of a step function")
    s.add_argument("--fn", required=True)
    s.add_argument("--window", nargs=2, required=True, metavar=("A", "B"))
    s.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    s.add_argument("--out")
    s.set_defaults(func=cmd_plot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DslSyntaxError, DslTypeError, VersionMismatch, InputError, UnknownSuite, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoVanishingFamily as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FAMILY if getattr(args, "strict", False) else EXIT_DOMAIN
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
