"""
Exact interval sets
===================

Elements of the interval algebra are finite unions of half-open intervals in
[0, 1).  Every operation is exact and returns a canonical form.
"""

from fractions import Fraction as F

from caratheodory import canonicalize, complement, distance, measure, symm_diff

a = canonicalize([(F(0), F(1, 2))])
b = canonicalize([(F(1, 4), F(3, 4))])

# overlapping and touching pieces collapse into one canonical set
print(canonicalize([(F(1, 2), F(3, 4)), (F(0), F(1, 2))]))

# the symmetric difference and the distance it induces
print(symm_diff(a, b), distance(a, b))

# a set and its complement are always at distance one
print(complement(a), distance(a, complement(a)))

# first stage of the fat Cantor construction
stage1 = canonicalize([(F(0), F(3, 8)), (F(5, 8), F(1))])
print(measure(stage1))
