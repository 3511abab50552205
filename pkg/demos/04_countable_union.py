"""
Countable unions
================

A countable union needs to know how much measure is left in the tail of the
family.  That knowledge is passed in as a certificate.
"""

from fractions import Fraction as F

from caratheodory import (
    CertificationIncomplete,
    Increasing,
    SearchCap,
    SummableBound,
    countable_union,
    dyadicblocks,
    increasing_blocks,
    measure_completion,
    verify_countable_union_hom,
)
from caratheodory.families import dyadic_blocks_tail
from caratheodory.sigma_ops import remainder_enclosure

# nested sets [0, 1 - 1/(i+1)) fill up [0, 1)
e = countable_union(increasing_blocks, Increasing())
for L in (1, 4, 16, 64):
    st = e.stage(L)
    print(L, st.members, remainder_enclosure(e, L, 16).hi <= F(1, L))
print(measure_completion(e, 16))

# disjoint blocks [1 - 2^-i, 1 - 2^-(i+1)) with a geometric tail bound
d = countable_union(dyadicblocks, SummableBound(dyadic_blocks_tail, "2^(-N-1)"))
print(measure_completion(d, 16))
print(verify_countable_union_hom(dyadicblocks, SummableBound(dyadic_blocks_tail), 16).verdict)

# a bounded search reports how far it got instead of guessing
capped = countable_union(increasing_blocks, SearchCap(100))
try:
    capped.stage(64)
except CertificationIncomplete as exc:
    print(exc)
