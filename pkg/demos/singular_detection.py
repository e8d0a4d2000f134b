"""Telling spike trains from singular distributions.

The interval function F(a, b) and the point function F0(t) of a distribution
are enough to decide whether it comes from a spike train on a window.
"""
from bdist import DeltaLeft, IntDerivLeft, Parity, bundle, chi, regular, regularity_criterion
from bdist.core import Window
from bdist.dist import apply
from bdist.point_sets import LocallyFiniteSet

w = Window(-2, 2)
sources = {
    "spike train {0, 1}": regular([0, 1]),
    "left delta at 0": DeltaLeft(LocallyFiniteSet([0])),
    "integrated left derivative": IntDerivLeft(),
    "parity of pieces": Parity(),
}
for label, f in sources.items():
    print(f"{label:28} {regularity_criterion(bundle(f), w)}")

# the left delta reads the value just before 0, never the value at 0
f = DeltaLeft(LocallyFiniteSet([0]))
print("<delta-, chi{0}>      =", apply(f, chi(0)))
print("<delta-, chi((-1,0))> =", apply(f, chi((-1, 0))))
