"""Waveform rendering of step functions (ASCII and standalone SVG)."""
from __future__ import annotations

from fractions import Fraction

from .core import Window, fmt_rat
from .step_fn import StepFunction

CELL = 4  # characters per ASCII column


def _columns(f: StepFunction, w: Window) -> list[tuple[str, Fraction]]:
    """("pt", t) for breakpoints and window ends, ("iv", mid) between them."""
    pts = sorted({b for b in f.breakpoints if w.lo <= b <= w.hi} | {w.lo, w.hi})
    cols = [("pt", pts[0])]
    for a, b in zip(pts, pts[1:]):
        cols.append(("iv", (a + b) / 2))
        cols.append(("pt", b))
    return cols


def _is_break(f: StepFunction, t: Fraction) -> bool:
    return t in f.breakpoints


def ascii_plot(f: StepFunction, w: Window) -> str:
    """Two-level trace: ``----`` at 1, ``____`` at 0, ``*`` a value taken at a
    breakpoint, ``o`` the excluded end of a neighbouring piece."""
    cols = _columns(f, w)
    high, low, axis = [], [], []
    for kind, t in cols:
        if kind == "iv":
            v = f.eval(t)
            high.append("-" * CELL if v else " " * CELL)
            low.append(" " * CELL if v else "_" * CELL)
            axis.append(" " * CELL)
            continue
        v = f.eval(t)
        left, right = f.left_limit(t), f.right_limit(t)
        if not _is_break(f, t):
            high.append("-" * CELL if v else " " * CELL)
            low.append(" " * CELL if v else "_" * CELL)
            axis.append("|".ljust(CELL))
            continue
        mark_hi = "*" if v else ("o" if 1 in (left, right) else " ")
        mark_lo = "*" if not v else ("o" if 0 in (left, right) else " ")
        high.append(f" {mark_hi} ".ljust(CELL))
        low.append(f" {mark_lo} ".ljust(CELL))
        axis.append("|".ljust(CELL))
    labels = [f"  {i}: t = {fmt_rat(t)}" for i, (kind, t) in enumerate(c for c in cols if c[0] == "pt")]
    lines = ["1 " + "".join(high).rstrip(), "0 " + "".join(low).rstrip(), "  " + "".join(axis).rstrip()]
    lines.append("abscissas (left to right):")
    lines.extend(labels)
    return "\n".join(lines) + "\n"


def svg_plot(f: StepFunction, w: Window, width: int = 640, height: int = 120) -> str:
    """Standalone SVG: horizontal segments per piece, filled dots for values
    taken at breakpoints, open dots for excluded piece ends."""
    span = w.hi - w.lo
    margin = 20

    def x(t: Fraction) -> str:
        return f"{float(margin + (t - w.lo) / span * (width - 2 * margin)):.2f}"

    def y(v: int) -> str:
        return str(margin if v else height - margin)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" '
        'stroke="#bbbbbb" stroke-width="1"/>',
    ]
    pts = sorted({b for b in f.breakpoints if w.lo < b < w.hi} | {w.lo, w.hi})
    for a, b in zip(pts, pts[1:]):
        v = f.eval((a + b) / 2)
        parts.append(
            f'<line x1="{x(a)}" y1="{y(v)}" x2="{x(b)}" y2="{y(v)}" stroke="black" stroke-width="2"/>'
        )
    for t in pts:
        if not _is_break(f, t):
            continue
        v = f.eval(t)
        for side in {f.left_limit(t), f.right_limit(t)} - {v}:
            parts.append(f'<circle cx="{x(t)}" cy="{y(side)}" r="4" fill="white" stroke="black"/>')
        parts.append(f'<circle cx="{x(t)}" cy="{y(v)}" r="4" fill="black"/>')
        parts.append(
            f'<text x="{x(t)}" y="{height - 4}" font-size="10" text-anchor="middle">{fmt_rat(t)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
