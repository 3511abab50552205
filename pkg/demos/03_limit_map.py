"""
From completion points to measurable sets
=========================================

Each point is sent to the limsup of a fast subsequence.  The set itself is
never built: a handle keeps the approximating sets and a bound on how far
each one is from the limit.
"""

from caratheodory import (
    apply_F,
    fatcantor,
    handle_distance,
    increasing,
    perturb,
    verify_complement_hom,
    verify_intersect_hom,
    verify_isometry,
    verify_union_hom,
)

x, y = fatcantor(), perturb(7)
h = apply_F(x)

# the bound halves with every index
for n in range(0, 12, 3):
    print(n, len(h(n)), h.bound(n))

# distance between the limit sets matches the completion distance
print(handle_distance(apply_F(x), apply_F(y), 16))
r = verify_isometry(x, y, 16)
print(r.verdict, {k: str(v) for k, v in r.enclosures.items()})

# the map respects unions, intersections and complements
for r in (verify_union_hom(x, increasing(), 16), verify_intersect_hom(x, y, 16), verify_complement_hom(y, 16)):
    print(r.claim, r.verdict, {k: str(v) for k, v in r.enclosures.items()})
