"""Limits of translates are not applications to the limit function.

Sliding the indicator of (0, 1) to the right by 1/(n+1) keeps one open piece,
so the parity functional stays at 1. The left-limit function of the same
indicator is the half-open (0, 1], two pieces, and parity gives 0.
"""
from bdist.dist import translate_limit_counterexample

r = translate_limit_counterexample(10)
print("sequence:", " ".join(map(str, r.sequence)))
print("target:  ", r.target)
print("verdict: ", r.verdict)
