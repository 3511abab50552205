"""Exact elements of the two shipped base algebras.

Two algebras of sets are provided:

* ``IntervalUnit`` -- finite unions of half-open intervals ``[lo, hi)`` inside
  ``[0, 1)`` with Lebesgue length as the measure.
* ``FiniteWeighted`` -- all subsets of ``n`` atoms, each atom carrying a
  strictly positive rational weight.

Every scalar is a :class:`fractions.Fraction`.  Interval sets are stored as a
strictly increasing array of integer boundaries over one common denominator,
reduced so that the representation of a point set is unique.  Large sets are
combined with a vectorized sweep in numpy; small ones with a plain merge.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, UsageError

Rational = Fraction

# int64 is used while every scaled boundary (<= denominator) stays below this.
_INT64_SAFE = 1 << 62
# below this many boundaries the pure-Python merge beats numpy's call overhead
_SMALL = 96

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"not an exact rational: {value!r}")


def format_rational(value) -> str:
    """Serialize as ``"p/q"`` in lowest terms, always with the denominator."""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise DomainError(f"malformed rational {text!r}")
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


# ---------------------------------------------------------------------------
# algebra configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalUnit:
    """Lebesgue length on finite unions of half-open subintervals of [0, 1)."""

    @property
    def total_mass(self) -> Fraction:
        return Fraction(1)

    @property
    def resolution(self) -> Fraction:
        # distinct elements can be arbitrarily close
        return Fraction(0)

    def empty(self) -> "IntervalSet":
        return IntervalSet._EMPTY

    def universe(self) -> "IntervalSet":
        return IntervalSet._UNIVERSE

    def __str__(self):
        return "interval"


@dataclass(frozen=True)
class FiniteWeighted:
    """Weighted power set of ``len(weights)`` atoms; every weight must be positive."""

    weights: tuple

    def __post_init__(self):
        ws = tuple(as_rational(w) for w in self.weights)
        if not ws:
            raise DomainError("a finite algebra needs at least one atom")
        if any(w <= 0 for w in ws):
            raise DomainError("atom weights must be strictly positive")
        object.__setattr__(self, "weights", ws)

    @property
    def atoms(self) -> int:
        return len(self.weights)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def resolution(self) -> Fraction:
        """Smallest positive distance between two elements."""
        return min(self.weights)

    def empty(self) -> "FiniteSubset":
        return FiniteSubset(0, self)

    def universe(self) -> "FiniteSubset":
        return FiniteSubset((1 << self.atoms) - 1, self)

    def __str__(self):
        return "finite:" + ",".join(format_rational(w) for w in self.weights)


INTERVAL_UNIT = IntervalUnit()


def parse_config(text: str):
    """Parse ``interval`` or ``finite:w1,w2,...``."""
    text = text.strip()
    if text == "interval":
        return INTERVAL_UNIT
    if text.startswith("finite:"):
        parts = [p for p in text[len("finite:"):].split(",") if p.strip()]
        return FiniteWeighted(tuple(parse_rational(p) for p in parts))
    raise UsageError(f"unknown algebra {text!r}; expected 'interval' or 'finite:w1,w2,...'")


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    def __str__(self):
        return f"[{self.lo},{self.hi})"


class Element:
    """A member of a base algebra.  Subclasses are immutable."""

    config = None
    __slots__ = ()

    def _check(self, other):
        if not isinstance(other, Element) or other.config != self.config:
            raise UsageError(
                f"cannot combine elements of {self.config} and "
                f"{getattr(other, 'config', type(other).__name__)}"
            )

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __xor__(self, other):
        return symm_diff(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    def __le__(self, other):
        return self.issubset(other)


def _keep(op):
    return {
        "or": lambda x, y: x or y,
        "and": lambda x, y: x and y,
        "xor": lambda x, y: x != y,
        "sub": lambda x, y: x and not y,
    }[op]


def _keep_vec(op, x, y):
    if op == "or":
        return x | y
    if op == "and":
        return x & y
    if op == "xor":
        return x ^ y
    return x & ~y


def _merge_small(xs, ys, op):
    keep = _keep(op)
    out = []
    i = j = 0
    nx, ny = len(xs), len(ys)
    inx = iny = state = False
    while i < nx or j < ny:
        if j >= ny or (i < nx and xs[i] <= ys[j]):
            p = xs[i]
        else:
            p = ys[j]
        if i < nx and xs[i] == p:
            inx = not inx
            i += 1
        if j < ny and ys[j] == p:
            iny = not iny
            j += 1
        s = keep(inx, iny)
        if s != state:
            out.append(p)
            state = s
    return out


def _merge_large(xs, ys, op):
    vals = np.concatenate([xs, ys])
    from_y = np.zeros(len(vals), dtype=bool)
    from_y[len(xs):] = True
    # two sorted runs: the stable sort merges them in linear time
    order = np.argsort(vals, kind="stable")
    vals, from_y = vals[order], from_y[order]
    # parity of boundaries crossed so far = membership just right of each point
    iny = (np.cumsum(from_y) & 1).astype(bool)
    inx = (np.cumsum(~from_y) & 1).astype(bool)
    # a value present in both inputs: keep only its last occurrence
    last = np.ones(len(vals), dtype=bool)
    last[:-1] = vals[1:] != vals[:-1]
    vals, inx, iny = vals[last], inx[last], iny[last]
    s = _keep_vec(op, inx, iny)
    change = s != np.concatenate(([False], s[:-1]))
    return vals[change]


def _array(values, den):
    if den < _INT64_SAFE:
        arr = np.asarray(values, dtype=np.int64)
    else:
        arr = np.empty(len(values), dtype=object)
        arr[:] = list(values)
    arr.flags.writeable = False
    return arr


def _scaled(bounds, factor, den):
    if factor == 1:
        return bounds
    if den >= _INT64_SAFE and bounds.dtype != object:
        bounds = bounds.astype(object)
    return bounds * factor


class IntervalSet(Element):
    """Canonical finite union of half-open intervals in [0, 1).

    ``bounds`` holds ``lo0, hi0, lo1, hi1, ...`` as integer numerators over
    ``den``; consecutive parts never touch.  Build instances with
    :func:`canonicalize` or :meth:`from_bounds`.
    """

    __slots__ = ("_den", "_bounds", "_hash")
    config = INTERVAL_UNIT
    _EMPTY: "IntervalSet"
    _UNIVERSE: "IntervalSet"

    def __init__(self, den, bounds):
        # trusted: bounds strictly increasing, even length, within [0, den]
        self._den = den
        self._bounds = bounds
        self._hash = None

    @classmethod
    def from_bounds(cls, den: int, bounds) -> "IntervalSet":
        """Build from strictly increasing integer boundaries over ``den``, reducing the denominator."""
        bounds = list(bounds) if not isinstance(bounds, np.ndarray) else bounds
        n = len(bounds)
        if n == 0:
            return cls._EMPTY
        if isinstance(bounds, np.ndarray) and bounds.dtype != object:
            g = math.gcd(int(np.gcd.reduce(bounds)), den)
        else:
            g = math.gcd(den, *(int(b) for b in bounds))
        if g > 1:
            den //= g
            if isinstance(bounds, np.ndarray):
                bounds = bounds // g
            else:
                bounds = [b // g for b in bounds]
        if isinstance(bounds, np.ndarray):
            arr = bounds.astype(np.int64 if den < _INT64_SAFE else object)
            arr.flags.writeable = False
        else:
            arr = _array(bounds, den)
        return cls(den, arr)

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def bounds(self) -> np.ndarray:
        return self._bounds

    @property
    def parts(self) -> tuple:
        b = self._bounds.tolist()
        d = self._den
        return tuple(Interval(Fraction(b[i], d), Fraction(b[i + 1], d)) for i in range(0, len(b), 2))

    def __len__(self):
        return len(self._bounds) // 2

    def is_empty(self) -> bool:
        return len(self._bounds) == 0

    def measure(self) -> Fraction:
        b = self._bounds
        if len(b) == 0:
            return Fraction(0)
        if len(b) <= _SMALL or b.dtype == object:
            total = sum(b[1::2].tolist()) - sum(b[0::2].tolist())
        else:
            # each difference <= den and they sum to <= den, so no overflow
            total = int((b[1::2] - b[0::2]).sum())
        return Fraction(total, self._den)

    def contains(self, q) -> bool:
        # boundaries are integers, so b <= q*den iff b <= floor(q*den)
        scaled = math.floor(as_rational(q) * self._den)
        k = int(np.searchsorted(self._bounds, scaled, side="right"))
        return k % 2 == 1

    def issubset(self, other) -> bool:
        return difference(self, other).is_empty()

    def _combine(self, other, op):
        self._check(other)
        if op == "or":
            if other is self or other.is_empty():
                return self
            if self.is_empty():
                return other
        elif op == "and":
            if other is self:
                return self
            if self.is_empty() or other.is_empty():
                return IntervalSet._EMPTY
        elif op == "xor":
            if other is self:
                return IntervalSet._EMPTY
            if other.is_empty():
                return self
            if self.is_empty():
                return other
        elif op == "sub":
            if other is self or self.is_empty():
                return IntervalSet._EMPTY
            if other.is_empty():
                return self
        d1, d2 = self._den, other._den
        den = d1 * d2 // math.gcd(d1, d2)
        xs = _scaled(self._bounds, den // d1, den)
        ys = _scaled(other._bounds, den // d2, den)
        if len(xs) + len(ys) <= _SMALL:
            out = _merge_small(xs.tolist(), ys.tolist(), op)
        else:
            out = _merge_large(xs, ys, op)
        return IntervalSet.from_bounds(den, out)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._den == other._den and np.array_equal(self._bounds, other._bounds)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._den, tuple(self._bounds.tolist())))
        return self._hash

    def __repr__(self):
        if len(self) > 6:
            head = " ".join(str(p) for p in self.parts[:3])
            return f"IntervalSet({head} ... {len(self)} parts)"
        return "IntervalSet(" + " ".join(str(p) for p in self.parts) + ")"

    def to_json(self):
        return [[format_rational(p.lo), format_rational(p.hi)] for p in self.parts]


IntervalSet._EMPTY = IntervalSet(1, _array([], 1))
IntervalSet._UNIVERSE = IntervalSet(1, _array([0, 1], 1))


class FiniteSubset(Element):
    """Subset of the atoms of a :class:`FiniteWeighted` algebra, as a bitmask."""

    __slots__ = ("mask", "config")

    def __init__(self, mask: int, config: FiniteWeighted):
        if not isinstance(config, FiniteWeighted):
            raise UsageError("FiniteSubset needs a FiniteWeighted config")
        if mask < 0 or mask >> config.atoms:
            raise DomainError(f"mask {mask:#x} names atoms outside 0..{config.atoms - 1}")
        self.mask = mask
        self.config = config

    @classmethod
    def from_atoms(cls, atoms: Iterable[int], config: FiniteWeighted) -> "FiniteSubset":
        mask = 0
        for a in atoms:
            if not 0 <= a < config.atoms:
                raise DomainError(f"atom a{a} outside 0..{config.atoms - 1}")
            mask |= 1 << a
        return cls(mask, config)

    @property
    def atoms(self) -> tuple:
        return tuple(i for i in range(self.config.atoms) if self.mask >> i & 1)

    def is_empty(self) -> bool:
        return self.mask == 0

    def measure(self) -> Fraction:
        ws = self.config.weights
        return sum((ws[i] for i in self.atoms), Fraction(0))

    def issubset(self, other) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def _combine(self, other, op):
        self._check(other)
        a, b = self.mask, other.mask
        m = {"or": a | b, "and": a & b, "xor": a ^ b, "sub": a & ~b}[op]
        return FiniteSubset(m, self.config)

    def __eq__(self, other):
        if not isinstance(other, FiniteSubset):
            return NotImplemented
        return self.mask == other.mask and self.config == other.config

    def __hash__(self):
        return hash((self.mask, self.config))

    def __repr__(self):
        return "FiniteSubset({" + ",".join(f"a{i}" for i in self.atoms) + "})"

    def to_json(self):
        return {"atoms": list(self.atoms)}


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def canonicalize(raw: Iterable) -> IntervalSet:
    """Canonical :class:`IntervalSet` covering the union of raw ``(lo, hi)`` pairs.

    Pairs with ``lo == hi`` are dropped.  Raises :class:`DomainError` for an
    endpoint outside [0, 1] or for ``lo > hi``.
    """
    pairs = []
    for item in raw:
        lo, hi = (as_rational(v) for v in item)
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise DomainError(f"interval [{lo},{hi}) leaves [0,1]")
        if lo > hi:
            raise DomainError(f"interval [{lo},{hi}) has lo > hi")
        if lo < hi:
            pairs.append((lo, hi))
    if not pairs:
        return IntervalSet._EMPTY
    den = math.lcm(*(v.denominator for p in pairs for v in p))
    ints = sorted((int(lo * den), int(hi * den)) for lo, hi in pairs)
    out = []
    cur_lo, cur_hi = ints[0]
    for lo, hi in ints[1:]:
        if lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
        else:
            out += (cur_lo, cur_hi)
            cur_lo, cur_hi = lo, hi
    out += (cur_lo, cur_hi)
    return IntervalSet.from_bounds(den, out)


def union(a: Element, b: Element) -> Element:
    return a._combine(b, "or")


def intersect(a: Element, b: Element) -> Element:
    return a._combine(b, "and")


def difference(a: Element, b: Element) -> Element:
    return a._combine(b, "sub")


def symm_diff(a: Element, b: Element) -> Element:
    return a._combine(b, "xor")


def complement(a: Element) -> Element:
    return difference(a.config.universe(), a)


def measure(a: Element) -> Fraction:
    return a.measure()


def distance(a: Element, b: Element) -> Fraction:
    """The pseudometric ``measure(a △ b)``."""
    return symm_diff(a, b).measure()


def element_to_json(a: Element):
    return a.to_json()


def element_from_json(data, config=INTERVAL_UNIT) -> Element:
    if isinstance(config, FiniteWeighted):
        if not isinstance(data, dict) or "atoms" not in data:
            raise UsageError("finite elements serialize as {\"atoms\": [...]}")
        return FiniteSubset.from_atoms(data["atoms"], config)
    return canonicalize((parse_rational(lo), parse_rational(hi)) for lo, hi in data)


def dumps(a: Element) -> str:
    return json.dumps(a.to_json(), separators=(",", ":"))
