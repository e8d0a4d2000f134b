"""Expression language for sets, step functions and distributions.

Grammar (``+`` is XOR everywhere; binding from tightest to loosest:
wrappers, ``*``/``.``, ``(x)``/``(*)``, ``+``; all binary operators are
left-associative)::

    rat  := INT | INT "/" POSINT | DECIMAL          (optional leading "-")
    set  := "{" [rat ("," rat)*] "}" | PROG(a,d) | PROGP(a,d) | PROGM(a,d)
          | set ("U" | "D") set
    fn   := "0" | "1" | CHI{(a,b)} | CHI{t} | TR(tau, fn) | LIMF-(fn) | LIMF+(fn)
          | DF-(fn) | DF+(fn) | fn "+" fn | fn "*" fn
    fn2  := CHI2{(a,b)x(c,d)} | CHI2{(a,b)x{u}} | CHI2{{t}x(c,d)} | CHI2{{t}x{u}}
          | TR2(tau, nu, fn2) | SWAP(fn2) | fn2 "+" fn2 | fn2 "*" fn2
    dist := REG set | DELTA(t) | DELTAL set | DELTAR set | PARITY | INTDL | INTDR
          | TR(tau, dist) | LIM-(dist) | LIM+(dist) | D-(dist) | D+(dist)
          | fn "." dist | dist "+" dist | dist "(x)" dist | dist "(*)" dist

Two-variable distributions additionally accept ``TR2(tau, nu, F)`` and the
partial wrappers ``LIMT-( )``, ``LIMT+( )``, ``LIMU-( )``, ``LIMU+( )``,
``DT-( )``, ``DT+( )``, ``DU-( )``, ``DU+( )``. Interval ends may be ``inf``
or ``-inf`` so that every step function has a textual form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import fmt_rat, rat
from .errors import DslSyntaxError, DslTypeError, EmptyInterval, VersionMismatch, ZeroPeriod
from .point_sets import ALL, NONNEG, NONPOS, LocallyFiniteSet, Progression
from .step_fn import StepFunction, chi_interval, chi_point, support_descriptor
from .test_fn import TestFunction2

VERSION_HEADER = "#bd 1"

# -- AST ------------------------------------------------------------------------


class Ast:
    """Marker base class for syntax nodes."""


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SetLit(Ast):
    points: tuple
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class ProgLit(Ast):
    kind: str  # PROG | PROGP | PROGM
    offset: Fraction
    period: Fraction
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class SetOp(Ast):
    op: str  # U | D
    left: Ast
    right: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class ConstFn(Ast):
    value: int
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class ChiInterval(Ast):
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class ChiPoint(Ast):
    t: Fraction
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Chi2(Ast):
    t_desc: tuple  # ("pt", t) | ("iv", a, b)
    u_desc: tuple
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Bin(Ast):
    op: str  # + * . (x) (*)
    left: Ast
    right: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Tr(Ast):
    tau: Fraction
    arg: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Tr2(Ast):
    tau: Fraction
    nu: Fraction
    arg: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Wrap(Ast):
    name: str  # SWAP LIMF- LIMF+ DF- DF+ LIM- LIM+ D- D+ LIMT-... DU+
    arg: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Reg(Ast):
    set: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class DeltaAt(Ast):
    t: Fraction
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class DeltaSide(Ast):
    side: str  # L | R
    set: Ast
    span: Optional[tuple] = _span()


@dataclass(frozen=True)
class Atom(Ast):
    name: str  # PARITY | INTDL | INTDR
    span: Optional[tuple] = _span()


# -- tokenizer ------------------------------------------------------------------

_WRAPPERS = (
    "LIMF-(", "LIMF+(", "LIMT-(", "LIMT+(", "LIMU-(", "LIMU+(", "LIM-(", "LIM+(",
    "DF-(", "DF+(", "DT-(", "DT+(", "DU-(", "DU+(", "D-(", "D+(", "SWAP(",
)
_KEYWORDS = _WRAPPERS + (
    "(x)", "(*)", "CHI2{", "CHI{", "DELTAL", "DELTAR", "DELTA(", "PROGP(", "PROGM(",
    "PROG(", "TR2(", "TR(", "PARITY", "INTDL", "INTDR", "REG",
)
_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<kw>" + "|".join(re.escape(k) for k in _KEYWORDS) + r")"
    r"|(?P<num>-?(?:\d+(?:/\d+|\.\d+)?|inf))"
    r"|(?P<word>[UDx])(?![A-Za-z0-9])"
    r"|(?P<punct>[{}(),+*.])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", pos))
    return out


# -- parser -----------------------------------------------------------------------

_BIN_LEVELS = [("+",), ("(x)", "(*)"), ("*", ".")]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DslSyntaxError(msg, tok.pos, self.text)

    def take(self, text=None, kind=None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = text or kind
            got = tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        self.i += 1
        return tok

    def peek(self, text) -> bool:
        return self.tok.text == text

    def parse(self) -> Ast:
        node = self.expr(0)
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self, level: int) -> Ast:
        if level == len(_BIN_LEVELS):
            return self.atom()
        start = self.tok.pos
        node = self.expr(level + 1)
        while self.tok.text in _BIN_LEVELS[level] and self.tok.kind in ("punct", "kw"):
            op = self.take().text
            right = self.expr(level + 1)
            node = Bin(op, node, right, (start, self.tok.pos))
        return node

    def rational(self, allow_inf=False) -> Optional[Fraction]:
        tok = self.take(kind="num")
        if tok.text in ("inf", "-inf"):
            if not allow_inf:
                raise self.error("infinite value not allowed here", tok)
            return None if tok.text == "inf" else "-inf"
        if "/" in tok.text and int(tok.text.split("/")[1]) == 0:
            raise self.error("zero denominator", tok)
        return rat(tok.text)

    def interval(self):
        """``( a , b )`` with optional infinite ends; returns (lo, hi)."""
        self.take("(")
        tok = self.tok
        lo = self.rational(allow_inf=True)
        self.take(",")
        hi = self.rational(allow_inf=True)
        self.take(")")
        if lo is None:
            raise self.error("interval cannot start at +inf", tok)
        lo = None if lo == "-inf" else lo
        if hi == "-inf":
            raise self.error("interval cannot end at -inf", tok)
        if lo is not None and hi is not None and lo >= hi:
            raise EmptyInterval(f"empty interval ({fmt_rat(lo)}, {fmt_rat(hi)}) at offset {tok.pos}")
        return lo, hi

    def set_literal(self) -> Ast:
        start = self.tok.pos
        if self.peek("{"):
            self.take("{")
            pts = []
            if not self.peek("}"):
                pts.append(self.rational())
                while self.peek(","):
                    self.take(",")
                    pts.append(self.rational())
            self.take("}")
            return SetLit(tuple(sorted(set(pts))), (start, self.tok.pos))
        if self.tok.text in ("PROG(", "PROGP(", "PROGM("):
            kind = self.take().text[:-1]
            a = self.rational()
            self.take(",")
            tok = self.tok
            d = self.rational()
            self.take(")")
            if d <= 0:
                raise ZeroPeriod(f"progression period must be positive (offset {tok.pos})")
            return ProgLit(kind, a, d, (start, self.tok.pos))
        raise self.error("expected a set")

    def set_expr(self) -> Ast:
        start = self.tok.pos
        node = self.set_literal()
        while self.tok.kind == "word" and self.tok.text in ("U", "D"):
            op = self.take().text
            node = SetOp(op, node, self.set_literal(), (start, self.tok.pos))
        return node

    def chi2_factor(self):
        if self.peek("{"):
            self.take("{")
            t = self.rational()
            self.take("}")
            return ("pt", t)
        lo, hi = self.interval()
        if lo is None or hi is None:
            raise self.error("two-variable indicators need bounded intervals")
        return ("iv", lo, hi)

    def atom(self) -> Ast:
        tok = self.tok
        start = tok.pos
        text = tok.text
        if tok.kind == "num":
            value = self.rational()
            if value not in (0, 1):
                raise self.error("only the constants 0 and 1 are functions", tok)
            return ConstFn(int(value), (start, self.tok.pos))
        if text == "(" and tok.kind == "punct":
            self.take("(")
            node = self.expr(0)
            self.take(")")
            return node
        if text == "CHI{":
            self.take()
            if self.peek("("):
                lo, hi = self.interval()
                node = ChiInterval(lo, hi)
            else:
                node = ChiPoint(self.rational())
            self.take("}")
            object.__setattr__(node, "span", (start, self.tok.pos))
            return node
        if text == "CHI2{":
            self.take()
            t_desc = self.chi2_factor()
            self.take("x")
            u_desc = self.chi2_factor()
            self.take("}")
            return Chi2(t_desc, u_desc, (start, self.tok.pos))
        if text == "TR(":
            self.take()
            tau = self.rational()
            self.take(",")
            arg = self.expr(0)
            self.take(")")
            return Tr(tau, arg, (start, self.tok.pos))
        if text == "TR2(":
            self.take()
            tau = self.rational()
            self.take(",")
            nu = self.rational()
            self.take(",")
            arg = self.expr(0)
            self.take(")")
            return Tr2(tau, nu, arg, (start, self.tok.pos))
        if text in _WRAPPERS:
            self.take()
            arg = self.expr(0)
            self.take(")")
            return Wrap(text[:-1], arg, (start, self.tok.pos))
        if text == "{" or text in ("PROG(", "PROGP(", "PROGM("):
            return self.set_expr()
        if text == "REG":
            self.take()
            return Reg(self.set_expr(), (start, self.tok.pos))
        if text in ("DELTAL", "DELTAR"):
            self.take()
            return DeltaSide(text[-1], self.set_expr(), (start, self.tok.pos))
        if text == "DELTA(":
            self.take()
            t = self.rational()
            self.take(")")
            return DeltaAt(t, (start, self.tok.pos))
        if text in ("PARITY", "INTDL", "INTDR"):
            self.take()
            return Atom(text, (start, self.tok.pos))
        raise self.error(f"unexpected {text or 'end of input'!r}")


def parse(text: str) -> Ast:
    return _Parser(text).parse()


# -- printer ----------------------------------------------------------------------

_PREC = {"+": 1, "(x)": 2, "(*)": 2, "*": 3, ".": 3}


def _fmt_end(q, low: bool) -> str:
    if q is None:
        return "-inf" if low else "inf"
    return fmt_rat(q)


def _fmt_desc(desc) -> str:
    if desc[0] == "pt":
        return "{" + fmt_rat(desc[1]) + "}"
    return f"({fmt_rat(desc[1])}, {fmt_rat(desc[2])})"


def print_canonical(node: Ast) -> str:
    return _print(node)


def _print(node: Ast) -> str:
    if isinstance(node, SetLit):
        return "{" + ", ".join(fmt_rat(p) for p in node.points) + "}"
    if isinstance(node, ProgLit):
        return f"{node.kind}({fmt_rat(node.offset)}, {fmt_rat(node.period)})"
    if isinstance(node, SetOp):
        right = _print(node.right)
        return f"{_print(node.left)} {node.op} {right}"
    if isinstance(node, ConstFn):
        return str(node.value)
    if isinstance(node, ChiInterval):
        return f"CHI{{({_fmt_end(node.lo, True)}, {_fmt_end(node.hi, False)})}}"
    if isinstance(node, ChiPoint):
        return f"CHI{{{fmt_rat(node.t)}}}"
    if isinstance(node, Chi2):
        return f"CHI2{{{_fmt_desc(node.t_desc)}x{_fmt_desc(node.u_desc)}}}"
    if isinstance(node, Bin):
        prec = _PREC[node.op]
        left = _print(node.left)
        right = _print(node.right)
        if isinstance(node.left, Bin) and _PREC[node.left.op] < prec:
            left = f"({left})"
        if isinstance(node.right, Bin) and _PREC[node.right.op] <= prec:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    if isinstance(node, Tr):
        return f"TR({fmt_rat(node.tau)}, {_print(node.arg)})"
    if isinstance(node, Tr2):
        return f"TR2({fmt_rat(node.tau)}, {fmt_rat(node.nu)}, {_print(node.arg)})"
    if isinstance(node, Wrap):
        return f"{node.name}({_print(node.arg)})"
    if isinstance(node, Reg):
        return "REG" + _print_set_operand(node.set)
    if isinstance(node, DeltaAt):
        return f"DELTA({fmt_rat(node.t)})"
    if isinstance(node, DeltaSide):
        return f"DELTA{node.side}" + _print_set_operand(node.set)
    if isinstance(node, Atom):
        return node.name
    raise TypeError(f"not a DSL node: {node!r}")


def _print_set_operand(node: Ast) -> str:
    text = _print(node)
    return text if text.startswith("{") else " " + text


# -- evaluation (AST -> value) ---------------------------------------------------


def _kind(v) -> str:
    from .dist import Distribution
    from .tensor_conv import Distribution2

    if isinstance(v, StepFunction):
        return "fn"
    if isinstance(v, TestFunction2):
        return "fn2"
    if isinstance(v, Distribution):
        return "dist"
    if isinstance(v, Distribution2):
        return "dist2"
    if isinstance(v, LocallyFiniteSet):
        return "set"
    raise TypeError(type(v))


def build(node: Ast):
    """Evaluate an AST to a set, step function, test function of two
    variables, distribution or two-variable distribution."""
    from . import dist as D
    from . import tensor_conv as TC

    if isinstance(node, SetLit):
        return LocallyFiniteSet(node.points)
    if isinstance(node, ProgLit):
        rng = {"PROG": ALL, "PROGP": NONNEG, "PROGM": NONPOS}[node.kind]
        return LocallyFiniteSet(progressions=[Progression(node.offset, node.period, rng)])
    if isinstance(node, SetOp):
        a, b = build(node.left), build(node.right)
        return a.union(b) if node.op == "U" else a.sym_diff(b)
    if isinstance(node, ConstFn):
        return StepFunction.constant(node.value)
    if isinstance(node, ChiInterval):
        return chi_interval(node.lo, node.hi)
    if isinstance(node, ChiPoint):
        return chi_point(node.t)
    if isinstance(node, Chi2):
        from .test_fn import chi2

        def desc(d):
            return d[1] if d[0] == "pt" else (d[1], d[2])

        return chi2(desc(node.t_desc), desc(node.u_desc))
    if isinstance(node, Reg):
        return D.Regular(build(node.set))
    if isinstance(node, DeltaAt):
        return D.delta(node.t)
    if isinstance(node, DeltaSide):
        cls = D.DeltaLeft if node.side == "L" else D.DeltaRight
        return cls(build(node.set))
    if isinstance(node, Atom):
        return {"PARITY": D.Parity, "INTDL": D.IntDerivLeft, "INTDR": D.IntDerivRight}[node.name]()
    if isinstance(node, Tr):
        arg = build(node.arg)
        k = _kind(arg)
        if k == "fn":
            return arg.translate(node.tau)
        if k == "dist":
            return D.Translate(node.tau, arg)
        raise DslTypeError(f"TR expects a function or distribution, got {k}")
    if isinstance(node, Tr2):
        arg = build(node.arg)
        k = _kind(arg)
        if k == "fn2":
            return arg.translate(node.tau, node.nu)
        if k == "dist2":
            return TC.Translate2(node.tau, node.nu, arg)
        raise DslTypeError(f"TR2 expects a two-variable value, got {k}")
    if isinstance(node, Wrap):
        return _build_wrap(node.name, build(node.arg))
    if isinstance(node, Bin):
        return _build_bin(node.op, build(node.left), build(node.right))
    raise TypeError(f"not a DSL node: {node!r}")


def _build_wrap(name: str, arg):
    from . import dist as D
    from . import tensor_conv as TC

    k = _kind(arg)
    fn_wraps = {
        "LIMF-": StepFunction.limit_left,
        "LIMF+": StepFunction.limit_right,
        "DF-": StepFunction.deriv_left,
        "DF+": StepFunction.deriv_right,
    }
    dist_wraps = {"LIM-": D.LimitLeft, "LIM+": D.LimitRight, "D-": D.DerivLeft, "D+": D.DerivRight}
    if name in fn_wraps and k == "fn":
        return fn_wraps[name](arg)
    if name in dist_wraps and k == "dist":
        return dist_wraps[name](arg)
    if name == "SWAP" and k == "fn2":
        return arg.transpose()
    if name[:-1] in ("LIMT", "LIMU", "DT", "DU") and k == "dist2":
        axis = TC.T_AXIS if name[-2] == "T" else TC.U_AXIS
        side = TC.LEFT if name[-1] == "-" else TC.RIGHT
        cls = TC.PartialLimit if name.startswith("LIM") else TC.PartialDeriv
        return cls(axis, side, arg)
    raise DslTypeError(f"{name}( ) cannot be applied to a {k}")


def _build_bin(op: str, a, b):
    from . import dist as D
    from . import tensor_conv as TC

    ka, kb = _kind(a), _kind(b)
    if op == "+":
        if ka != kb:
            raise DslTypeError(f"cannot add a {ka} and a {kb}")
        if ka in ("fn", "fn2"):
            return a ^ b
        if ka == "dist":
            return D.Xor(a, b)
        if ka == "dist2":
            return TC.xor2_dist(a, b)
    if op == "*" and ka == kb and ka in ("fn", "fn2"):
        return a & b
    if op == "." and ka == "fn" and kb == "dist":
        return D.Scale(a, b)
    if op == "(x)" and ka == kb == "dist":
        return TC.tensor(a, b)
    if op == "(*)" and ka == kb == "dist":
        return TC.convolve(a, b)
    raise DslTypeError(f"operator {op!r} does not combine a {ka} with a {kb}")


def evaluate(text: str):
    return build(parse(text))


# -- value -> AST --------------------------------------------------------------------


def _xor_chain(terms: list[Ast], op: str = "+") -> Ast:
    node = terms[0]
    for t in terms[1:]:
        node = Bin(op, node, t)
    return node


def set_to_ast(s: LocallyFiniteSet) -> Ast:
    terms: list[Ast] = []
    if s.points or not s.progressions:
        terms.append(SetLit(tuple(s.points)))
    for p in s.progressions:
        kind = {ALL: "PROG", NONNEG: "PROGP", NONPOS: "PROGM"}[p.range_]
        terms.append(ProgLit(kind, p.offset, p.period))
    if s.excluded:
        terms.append(SetLit(tuple(s.excluded)))
    node = terms[0]
    for t in terms[1:]:
        node = SetOp("D", node, t)
    return node


def step_to_ast(f: StepFunction) -> Ast:
    if not f.breakpoints:
        return ConstFn(f.left_tail)
    complement = f.left_tail == 1 and f.right_tail == 1
    g = f ^ StepFunction.constant(1) if complement else f
    terms: list[Ast] = [ConstFn(1)] if complement else []
    for c in support_descriptor(g).components:
        terms.append(ChiPoint(c.lo) if c.kind == "point" else ChiInterval(c.lo, c.hi))
    if not terms:
        return ConstFn(0)
    return _xor_chain(terms)


def tf2_to_ast(phi2: TestFunction2) -> Ast:
    if phi2.is_zero():
        return _zero2()

    def desc(bps, idx):
        k, rem = divmod(idx - 1, 2)
        return ("pt", bps[k]) if rem == 0 else ("iv", bps[k], bps[k + 1])

    terms = []
    for i, row in enumerate(phi2.cells):
        for j, v in enumerate(row):
            if v:
                terms.append(Chi2(desc(phi2.t_breakpoints, i), desc(phi2.u_breakpoints, j)))
    return _xor_chain(terms)


def _zero2() -> Ast:
    c = Chi2(("pt", Fraction(0)), ("pt", Fraction(0)))
    return Bin("+", c, c)


def dist_to_ast(f) -> Ast:
    from . import dist as D
    from . import tensor_conv as TC

    if isinstance(f, D.Regular):
        return Reg(set_to_ast(f.support))
    if isinstance(f, D.DeltaLeft):
        return DeltaSide("L", set_to_ast(f.points))
    if isinstance(f, D.DeltaRight):
        return DeltaSide("R", set_to_ast(f.points))
    if isinstance(f, D.Parity):
        return Atom("PARITY")
    if isinstance(f, D.IntDerivLeft):
        return Atom("INTDL")
    if isinstance(f, D.IntDerivRight):
        return Atom("INTDR")
    if isinstance(f, D.Xor):
        return Bin("+", dist_to_ast(f.a), dist_to_ast(f.b))
    if isinstance(f, D.Scale):
        return Bin(".", step_to_ast(f.psi), dist_to_ast(f.a))
    if isinstance(f, D.Translate):
        return Tr(f.tau, dist_to_ast(f.a))
    for cls, name in (
        (D.LimitLeft, "LIM-"),
        (D.LimitRight, "LIM+"),
        (D.DerivLeft, "D-"),
        (D.DerivRight, "D+"),
    ):
        if isinstance(f, cls):
            return Wrap(name, dist_to_ast(f.a))
    if isinstance(f, TC.ConvolvedSpikes):
        return Bin("(*)", Reg(set_to_ast(f.a)), Reg(set_to_ast(f.b)))
    if isinstance(f, TC.AtomConvolution):
        atoms = D.ZERO_DIST
        if f.point:
            atoms = D.xor_dist(atoms, D.Regular(LocallyFiniteSet(f.point)))
        if f.left:
            atoms = D.xor_dist(atoms, D.DeltaLeft(LocallyFiniteSet(f.left)))
        if f.right:
            atoms = D.xor_dist(atoms, D.DeltaRight(LocallyFiniteSet(f.right)))
        return Bin("(*)", dist_to_ast(f.f), dist_to_ast(atoms))
    if isinstance(f, TC.Tensor):
        return Bin("(x)", dist_to_ast(f.f), dist_to_ast(f.g))
    if isinstance(f, TC.Regular2):
        terms: list[Ast] = []
        for t, u in sorted(f.pairs):
            terms.append(Bin("(x)", Reg(SetLit((t,))), Reg(SetLit((u,)))))
        for a, b in f.products:
            terms.append(Bin("(x)", Reg(set_to_ast(a)), Reg(set_to_ast(b))))
        if not terms:
            terms = [Bin("(x)", Reg(SetLit(())), Reg(SetLit(())))]
        return _xor_chain(terms)
    if isinstance(f, TC.Xor2):
        return Bin("+", dist_to_ast(f.a), dist_to_ast(f.b))
    if isinstance(f, TC.Translate2):
        return Tr2(f.tau, f.nu, dist_to_ast(f.a))
    if isinstance(f, (TC.PartialLimit, TC.PartialDeriv)):
        base = "LIM" if isinstance(f, TC.PartialLimit) else "D"
        name = base + f.axis.upper() + ("-" if f.side == TC.LEFT else "+")
        return Wrap(name, dist_to_ast(f.a))
    raise TypeError(f"no textual form for {type(f).__name__}")


def to_ast(value) -> Ast:
    k = _kind(value)
    if k == "set":
        return set_to_ast(value)
    if k == "fn":
        return step_to_ast(value)
    if k == "fn2":
        return tf2_to_ast(value)
    return dist_to_ast(value)


def to_text(value) -> str:
    return print_canonical(to_ast(value))


def serialize(value) -> str:
    return f"{VERSION_HEADER}\n{to_text(value)}\n"


def deserialize(text: str):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#bd"):
        raise VersionMismatch("missing '#bd <version>' header")
    if lines[0].strip() != VERSION_HEADER:
        raise VersionMismatch(f"unsupported version line {lines[0].strip()!r}")
    body = "\n".join(l for l in lines[1:] if not l.lstrip().startswith("#"))
    return evaluate(body)


def read_expr(text: str):
    """Inline expression, ``@path`` or an existing ``.bd`` file path."""
    import os

    path = text[1:] if text.startswith("@") else text
    if text.startswith("@") or (path.endswith(".bd") and os.path.exists(path)):
        with open(path, encoding="utf-8") as fh:
            return deserialize(fh.read())
    return evaluate(text)
