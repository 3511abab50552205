"""Seeded random inputs for the verification suites and the tests.

Interval sets use dyadic breakpoints of bounded denominator with a
geometrically distributed number of breakpoints, which keeps the exact
arithmetic small while still exercising merging and canonicalization.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import dsl
from .completion import CauchyPoint, constant_point, reindex
from .families import fatcantor, increasing, perturb
from .outer_measure import Cover
from .set_algebra import (
    INTERVAL_UNIT,
    FiniteSubset,
    FiniteWeighted,
    IntervalSet,
    canonicalize,
    difference,
)

DENOMINATOR_BITS = 6


def _geometric(rng, p=0.35, cap=12):
    n = 0
    while n < cap and rng.random() > p:
        n += 1
    return n


def random_interval_set(rng: random.Random, bits: int = DENOMINATOR_BITS) -> IntervalSet:
    scale = 1 << bits
    count = 2 * _geometric(rng)
    # distinct sorted breakpoints never make adjacent parts, so they are already canonical
    points = sorted(rng.sample(range(scale + 1), min(count, scale + 1) & ~1))
    return IntervalSet.from_bounds(scale, points)


def random_element(rng: random.Random, config=INTERVAL_UNIT):
    if isinstance(config, FiniteWeighted):
        return FiniteSubset(rng.getrandbits(config.atoms), config)
    return random_interval_set(rng)


def random_weights(rng: random.Random, atoms: int) -> FiniteWeighted:
    """Positive dyadic weights ``k/64`` with ``1 <= k <= 16``."""
    return FiniteWeighted(tuple(Fraction(rng.randint(1, 16), 64) for _ in range(atoms)))


def random_cover(rng: random.Random, e, config=INTERVAL_UNIT) -> Cover:
    """Random pieces; about half the time topped up so that they do cover ``e``."""
    pieces = [random_element(rng, config) for _ in range(rng.randint(1, 4))]
    if rng.random() < 0.5:
        rest = e
        for p in pieces:
            rest = difference(rest, p)
        if isinstance(rest, IntervalSet) and len(rest) > 1 and rng.random() < 0.5:
            # split the remainder across two pieces
            parts = rest.parts
            cut = rng.randint(1, len(parts) - 1)
            pieces.append(canonicalize(parts[:cut]))
            pieces.append(canonicalize(parts[cut:]))
        else:
            pieces.append(rest)
    rng.shuffle(pieces)
    return Cover(pieces)


def random_family_point(rng: random.Random) -> CauchyPoint:
    kind = rng.choice(("fatcantor", "increasing", "perturb"))
    if kind == "fatcantor":
        return fatcantor()
    if kind == "increasing":
        return increasing()
    return perturb(rng.randrange(1 << 32))


def random_reindexing(rng: random.Random, x: CauchyPoint) -> CauchyPoint:
    """``n -> x(n + b + [n >= c])`` with ``b`` in 0..2 and ``c`` in 0..8.

    Growth stays near the identity: the fast index is strictly increasing, so
    a steep re-index would read fat Cantor at exponentially large stages.
    """
    b, c = rng.randint(0, 2), rng.randint(0, 8)
    return reindex(x, lambda n: n + b + (n >= c), label=f"{x.label}[n+{b}+(n>={c})]")


def random_expr(rng: random.Random, depth: int = 4) -> dsl.Expr:
    """A random syntax tree covering every node kind (not necessarily evaluable)."""
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.randrange(4)
        if kind == 0:
            q = lambda: Fraction(rng.randint(0, 16), rng.choice((1, 2, 3, 4, 8, 16)))
            return dsl.IntervalLit(q(), q())
        if kind == 1:
            return dsl.Atoms(tuple(rng.sample(range(8), rng.randint(0, 3))))
        if kind == 2:
            return dsl.Name(rng.choice(("empty", "universe", "fatcantor", "increasing", "x1")))
        return dsl.Call(rng.choice(("dyadicblocks", "perturb")), (Fraction(rng.randint(0, 99)),))
    kind = rng.randrange(4)
    if kind == 0:
        return dsl.Complement(random_expr(rng, depth - 1))
    node = (dsl.Union, dsl.Intersect, dsl.Diff)[kind - 1]
    return node(random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def constant_family(elements, pad):
    """Family ``i -> constant(elements[i-1])`` that repeats ``pad`` after the list ends."""
    points = [constant_point(e) for e in elements]
    tail = constant_point(pad)
    return lambda i: points[i - 1] if i <= len(points) else tail
