"""Convolution of spike trains is multiplication of GF(2) polynomials.

A finite spike train {e1, e2, ...} plays the part of x^e1 + x^e2 + ...;
convolving two trains collects pairwise sums and keeps those hit an odd
number of times. Lateral deltas do not commute with each other.
"""
from bdist import DeltaLeft, DeltaRight, apply, chi, convolve, regular
from bdist.dsl import to_text
from bdist.point_sets import LocallyFiniteSet

a = regular([0, 1])
print("(1 + x)^2            ->", to_text(convolve(a, a)))
b = regular([0, 1, 2])
print("(1 + x)(1 + x + x^2) ->", to_text(convolve(a, b)))

origin = LocallyFiniteSet([0])
dl, dr = DeltaLeft(origin), DeltaRight(origin)
phi = chi((-1, 0))
print("<delta- * delta+, chi((-1,0))> =", apply(convolve(dl, dr), phi))
print("<delta+ * delta-, chi((-1,0))> =", apply(convolve(dr, dl), phi))
