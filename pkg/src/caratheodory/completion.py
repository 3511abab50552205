"""Points of the metric completion, represented as Cauchy sequences with a rate.

A :class:`CauchyPoint` bundles a deterministic approximant ``i -> Element``
with a modulus ``k -> index`` promising

    distance(approximant(i), approximant(j)) <= 2**-k   for all i, j >= modulus(k).

Limits such as the completion distance are never decided exactly.  They are
returned as :class:`Enclosure` intervals with exact rational endpoints that
are certified to contain the true value.
"""

from __future__ import annotations

import threading
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UsageError
from .set_algebra import Element, as_rational, distance, format_rational


def dyadic(k: int) -> Fraction:
    """``2**-k`` as an exact fraction (``k`` may be negative)."""
    return Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k)


@dataclass(frozen=True)
class Enclosure:
    """Exact interval ``[lo, hi]`` certified to contain some limit value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise UsageError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def around(cls, center, radius, floor=None) -> "Enclosure":
        lo = center - radius
        if floor is not None and lo < floor:
            lo = floor
        return cls(lo, center + radius)

    @classmethod
    def exact(cls, value) -> "Enclosure":
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def center(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def gap(self, other: "Enclosure") -> Fraction:
        """Distance between the two intervals; zero when they intersect."""
        return max(Fraction(0), self.lo - other.hi, other.lo - self.hi)

    def within(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def widen(self, radius) -> "Enclosure":
        return Enclosure(self.lo - radius, self.hi + radius)

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + other, self.hi + other)

    def __sub__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo - other.hi, self.hi - other.lo)
        return Enclosure(self.lo - other, self.hi - other)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return Enclosure(-self.hi, -self.lo)
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def to_json(self):
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


class CauchyPoint:
    """A Cauchy sequence of elements of one algebra together with its modulus.

    ``settled``, when known, is an index from which the approximants no
    longer change; enclosures past it carry no slack.  Approximants are
    memoized, which is unobservable because they must be pure.
    """

    def __init__(self, config, approximant, modulus, label="", settled=None, cache_size=16):
        self.config = config
        self.label = label
        self.settled = settled
        self._approximant = lru_cache(maxsize=cache_size)(approximant)
        self._modulus = modulus
        self._fast = None
        self._lock = threading.Lock()

    def approximant(self, i: int) -> Element:
        if i < 0:
            raise UsageError(f"negative approximant index {i}")
        return self._approximant(i)

    __call__ = approximant

    def modulus(self, k: int) -> int:
        return self._modulus(k)

    def fast(self) -> "FastPoint":
        with self._lock:
            if self._fast is None:
                self._fast = FastPoint(self)
            return self._fast

    def __repr__(self):
        return f"<{type(self).__name__} {self.label or '?'} over {self.config}>"


class FastPoint(CauchyPoint):
    """The subsequence ``n -> source(f(n))`` with ``f(n) = max(modulus(n), f(n-1) + 1)``.

    For all ``m >= n``, ``distance(self(n), self(m)) <= 2**-n``.
    """

    def __init__(self, source: CauchyPoint):
        self.source = source
        self._indices = []
        self._index_lock = threading.Lock()
        settled = None
        if source.settled is not None:
            n = 0
            while self.index(n) < source.settled:
                n += 1
            settled = n
        super().__init__(
            source.config,
            lambda n: source.approximant(self.index(n)),
            lambda k: k,
            label=f"fast({source.label})",
            settled=settled,
        )

    def index(self, n: int) -> int:
        """The re-index ``f(n)``; strictly increasing."""
        with self._index_lock:
            idx = self._indices
            while len(idx) <= n:
                k = len(idx)
                m = self.source.modulus(k)
                idx.append(m if k == 0 else max(m, idx[-1] + 1))
            return idx[n]

    def tail_bound(self, n: int) -> Fraction:
        """Certified bound on the completion distance from ``self(n)`` to the limit."""
        if self.settled is not None and n >= self.settled:
            return Fraction(0)
        bound = dyadic(n)
        # below the algebra's resolution the tail contract forces a constant tail
        if bound < self.config.resolution:
            return Fraction(0)
        return bound


def _same_config(*points):
    cfg = points[0].config
    for p in points[1:]:
        if p.config != cfg:
            raise UsageError(f"points come from different algebras: {cfg} and {p.config}")
    return cfg


def _check_depth(depth):
    if not isinstance(depth, int) or depth < 1:
        raise UsageError(f"depth must be a positive integer, got {depth!r}")


def constant_point(a: Element, label=None) -> CauchyPoint:
    return CauchyPoint(a.config, lambda n: a, lambda k: 0, label=label or repr(a), settled=0)


def zero_point(config) -> CauchyPoint:
    return constant_point(config.empty(), label="empty")


def reindex(x: CauchyPoint, r, label=None) -> CauchyPoint:
    """The subsequence ``n -> x(r(n))`` for a strictly increasing ``r``.

    Its modulus is the least ``n`` with ``r(n) >= x.modulus(k)``.
    """

    def modulus(k):
        target = x.modulus(k)
        # r(n) >= n, so the answer lies in [0, target]
        return bisect_left(range(target + 1), target, key=r)

    settled = None
    if x.settled is not None:
        settled = bisect_left(range(x.settled + 1), x.settled, key=r)
    return CauchyPoint(
        x.config, lambda n: x.approximant(r(n)), modulus, label=label or f"reindex({x.label})", settled=settled
    )


def check_modulus(x: CauchyPoint, depth: int) -> bool:
    """Spot-check the modulus contract for every ``k <= depth``.

    For each ``k`` all pairs among the indices ``modulus(k) .. modulus(k) +
    max(1, depth - k)`` and the far index ``modulus(depth) + 1`` are compared.
    The window shrinks as ``k`` grows, so the deepest index touched is the far
    one (fat Cantor stage ``n`` has ``2**n`` parts), while the far index still
    exposes slowly converging sequences.  ``False`` is a verdict, not an error.
    """
    _check_depth(depth)
    far = x.modulus(depth) + 1
    for k in range(depth + 1):
        m = x.modulus(k)
        bound = dyadic(k)
        indices = list(range(m, m + max(1, depth - k) + 1))
        if far > indices[-1]:
            indices.append(far)
        window = [x.approximant(i) for i in indices]
        for i, a in enumerate(window):
            for b in window[i + 1:]:
                if distance(a, b) > bound:
                    return False
    return True


def extract_fast(x: CauchyPoint) -> FastPoint:
    return x.fast()


def dist_completion(x: CauchyPoint, y: CauchyPoint, depth: int) -> Enclosure:
    """Enclosure of the completion distance, of width at most ``2**-(depth-2)``."""
    _same_config(x, y)
    _check_depth(depth)
    fx, fy = extract_fast(x), extract_fast(y)
    a = distance(fx(depth), fy(depth))
    return Enclosure.around(a, fx.tail_bound(depth) + fy.tail_bound(depth), floor=0)


def measure_completion(x: CauchyPoint, depth: int) -> Enclosure:
    return dist_completion(x, zero_point(x.config), depth)


def equivalent_within(x: CauchyPoint, y: CauchyPoint, depth: int) -> Enclosure:
    """Enclosure of ``lim d(x_n, y_n)``; the points are equivalent iff that limit is 0."""
    return dist_completion(x, y, depth)
