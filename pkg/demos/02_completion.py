"""
Points of the completion
========================

A Cauchy sequence of elements with a stated rate of convergence is a point
of the completion.  Limits come back as exact enclosures.
"""

from fractions import Fraction as F

from caratheodory import check_modulus, constant_point, dist_completion, fatcantor, measure_completion, reindex
from caratheodory.families import fatcantor_stage

x = fatcantor()

# stage n has measure 1/2 + 2^-(n+1)
for n in range(5):
    print(n, fatcantor_stage(n).measure())

# the measure of the limit, certified to width 2^-19
e = measure_completion(x, 20)
print(e, e.contains(F(1, 2)), e.width)

# the modulus is checked, not trusted
print(check_modulus(x, 12))

# two re-indexings of the same sequence are the same point
y = reindex(x, lambda n: n + 3)
for depth in (4, 8, 12):
    print(depth, dist_completion(x, y, depth))

# constant sequences give exact answers
print(measure_completion(constant_point(y(0)), 16))
