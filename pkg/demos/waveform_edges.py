"""Edge detection on a sampled waveform with lateral derivatives.

A glitchy enable line is modeled as a step function. D- marks every instant
where the value differs from what arrived from the left, D+ where it differs
from what follows; isolated glitches show up in both.
"""
from bdist import chi
from bdist.core import Window
from bdist.dsl import to_text
from bdist.plot import ascii_plot

line = chi((0, 3)) ^ chi(1) ^ chi(5) ^ chi((6, 8)) ^ chi(6)
print("signal:", to_text(line))
print(ascii_plot(line, Window(-1, 9)))

print("left edges  D-:", to_text(line.deriv_left()))
print("right edges D+:", to_text(line.deriv_right()))
glitches = line.deriv_left() & line.deriv_right()
print("isolated glitches (both sides disagree):", to_text(glitches))
