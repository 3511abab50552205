"""Boolean structure on completion points and the certified countable union.

Binary operations act on the *fast* subsequences of their inputs, so the
new modulus is closed-form: ``A∪B △ A'∪B' ⊆ (A△A') ∪ (B△B')`` gives a tail
of ``2**-(k+1) + 2**-(k+1)`` at index ``k + 1``.

The countable union follows the finite-stage construction

    Y_L = B^1_{K_L} ∪ ... ∪ B^{N_L}_{K_L}

where ``N_L`` makes the certified tail beyond member ``N_L`` smaller than
``1/(2L)`` and ``K_L`` makes the summed approximation error of the used
members smaller than ``1/(2L)``.  Stage ``L`` is then within ``1/L`` of the
union, and index ``k`` of the result is stage ``2**(k+1)``.
"""

from __future__ import annotations

import ast
import math
import operator
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable

from .completion import (
    CauchyPoint,
    Enclosure,
    _check_depth,
    _same_config,
    extract_fast,
    measure_completion,
)
from .errors import CertificationIncomplete, UsageError
from .set_algebra import complement, intersect, union


def _joint_settled(*fasts):
    if any(f.settled is None for f in fasts):
        return None
    return max(f.settled for f in fasts)


def _binary(x, y, op, name):
    _same_config(x, y)
    fx, fy = extract_fast(x), extract_fast(y)
    return CauchyPoint(
        x.config,
        lambda n: op(fx(n), fy(n)),
        lambda k: k + 1,
        label=f"{name}({x.label}, {y.label})",
        settled=_joint_settled(fx, fy),
    )


def union_pt(x: CauchyPoint, y: CauchyPoint) -> CauchyPoint:
    return _binary(x, y, union, "union")


def intersect_pt(x: CauchyPoint, y: CauchyPoint) -> CauchyPoint:
    return _binary(x, y, intersect, "intersect")


def complement_pt(x: CauchyPoint) -> CauchyPoint:
    # A △ B = Aᶜ △ Bᶜ, so the fast tail carries over unchanged
    fx = extract_fast(x)
    return CauchyPoint(x.config, lambda n: complement(fx(n)), lambda k: k, label=f"not({x.label})", settled=fx.settled)


def difference_pt(x: CauchyPoint, y: CauchyPoint) -> CauchyPoint:
    return intersect_pt(x, complement_pt(y))


def finite_union_pt(points) -> CauchyPoint:
    """Union of finitely many points in one step (not a nested chain of :func:`union_pt`)."""
    points = list(points)
    if not points:
        raise UsageError("finite_union_pt needs at least one point")
    _same_config(*points)
    fasts = [extract_fast(p) for p in points]
    shift = (len(fasts) - 1).bit_length()  # 2**shift >= number of points
    settled = _joint_settled(*fasts)
    if settled is not None:
        settled = max(0, settled - shift)
    return CauchyPoint(
        points[0].config,
        lambda n: reduce(union, (f(n + shift) for f in fasts)),
        lambda k: k,
        label=f"union[{len(points)}]",
        settled=settled,
    )


def disjoint_within(x: CauchyPoint, y: CauchyPoint, depth: int) -> Enclosure:
    """Enclosure of ``lim μ(x_n ∩ y_n)``; disjoint when its ``hi`` is within tolerance."""
    return measure_completion(intersect_pt(x, y), depth)


def additivity_defect(x: CauchyPoint, y: CauchyPoint, depth: int) -> Enclosure:
    """Enclosure of ``|μ̄(x ∪ y) - μ̄(x) - μ̄(y)|`` by interval arithmetic."""
    u = measure_completion(union_pt(x, y), depth)
    return abs(u - measure_completion(x, depth) - measure_completion(y, depth))


# ---------------------------------------------------------------------------
# tail certificates
# ---------------------------------------------------------------------------


DEFAULT_CAP = 1 << 24


@dataclass(frozen=True)
class Increasing:
    """The family is nested increasing.  Only the last used member is needed per stage."""

    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class SummableBound:
    """``bound(N)`` bounds the measure of the union of members beyond ``N``.

    It must be non-negative, non-increasing and tend to zero.
    """

    bound: Callable[[int], Fraction]
    text: str = ""


@dataclass(frozen=True)
class SearchCap:
    """No structural knowledge; search at most ``cap`` members using the complement of the partial union."""

    cap: int


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_bound(node, n):
    if isinstance(node, ast.Expression):
        return _eval_bound(node.body, n)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id == "N":
        return Fraction(n)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_bound(node.operand, n)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _eval_bound(node.left, n), _eval_bound(node.right, n)
        if isinstance(node.op, ast.Pow):
            if b.denominator != 1:
                raise UsageError("exponents in a tail bound must be integers")
            return a ** int(b)
        if type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](a, b)
    raise UsageError(f"unsupported construct in tail bound: {ast.dump(node)}")


def bound_from_text(text: str) -> Callable[[int], Fraction]:
    """Compile a rational expression in ``N`` such as ``2^(-N-1)`` into a bound function."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"malformed tail bound {text!r}") from exc
    _eval_bound(tree, 1)  # reject bad constructs eagerly
    return lambda n: _eval_bound(tree, n)


def parse_certificate(text: str):
    """``increasing``, ``summable:<expr in N>`` or ``cap:<int>``."""
    text = text.strip()
    if text == "increasing":
        return Increasing()
    if text.startswith("summable:"):
        expr = text[len("summable:"):]
        return SummableBound(bound_from_text(expr), text=expr)
    if text.startswith("cap:"):
        try:
            cap = int(text[4:])
        except ValueError:
            raise UsageError(f"malformed cap in {text!r}") from None
        if cap < 1:
            raise UsageError("cap must be positive")
        return SearchCap(cap)
    raise UsageError(f"unknown certificate {text!r}; expected increasing, summable:<expr>, cap:<int>")


# ---------------------------------------------------------------------------
# countable union
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stage:
    L: int
    members: int  # N_L
    index: int  # K_L, fast index used in every member
    tail: Fraction  # certified bound on the part of the union beyond N_L
    error: Fraction  # summed approximation error of the used members at K_L
    element: object  # Y_L


_SUMMABLE_LIMIT = 1 << 62


class CountableUnion(CauchyPoint):
    """The union of a family ``i -> CauchyPoint`` (``i >= 1``) built stage by stage.

    Evaluating an approximant may raise :class:`CertificationIncomplete`
    when the certificate cannot reach the requested stage.
    """

    def __init__(self, family, cert, label=None):
        self._member = lru_cache(maxsize=None)(family)
        self.cert = cert
        self._stages = {}
        self._stage_lock = threading.RLock()
        self._tail_cache = {}
        config = self._member(1).config
        super().__init__(
            config,
            lambda n: self.stage(max(n, 1)).element,
            lambda k: 1 << (k + 1),
            label=label or "countable_union",
        )

    def member(self, i: int) -> CauchyPoint:
        if i < 1:
            raise UsageError("family members are indexed from 1")
        p = self._member(i)
        if p.config != self.config:
            raise UsageError(f"member {i} lives in {p.config}, not {self.config}")
        return p

    def _tail(self, n, L):
        """Certified upper bound on the measure of the union beyond member ``n``."""
        cert = self.cert
        if isinstance(cert, SummableBound):
            v = Fraction(cert.bound(n))
            if v < 0:
                raise UsageError(f"tail bound is negative at N={n}")
            return v
        # precision of the measure used to certify; any precision is sound
        depth = L.bit_length() + 3
        key = (n, depth)
        if key not in self._tail_cache:
            if isinstance(cert, Increasing):
                covered = measure_completion(self.member(n), depth)
            else:
                covered = measure_completion(finite_union_pt(self.member(i) for i in range(1, n + 1)), depth)
            self._tail_cache[key] = max(Fraction(0), self.config.total_mass - covered.lo)
        return self._tail_cache[key]

    def _cap(self):
        if isinstance(self.cert, SummableBound):
            return _SUMMABLE_LIMIT
        return self.cert.cap

    def _choose_members(self, L):
        target = Fraction(1, 2 * L)
        cap = self._cap()
        lo, n = 0, 1
        while True:
            t = self._tail(n, L)
            if t < target:
                break
            if n >= cap:
                if isinstance(self.cert, SummableBound):
                    raise UsageError("summable tail bound does not decrease to zero")
                # largest L' with 1/(2L') > t
                best = math.ceil(Fraction(1) / (2 * t)) - 1
                raise CertificationIncomplete(L, Fraction(1, best) if best >= 1 else None)
            lo, n = n, min(2 * n, cap)
        # the bounds are non-increasing in n, so bisect for the least passing n
        hi = n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            tm = self._tail(mid, L)
            if tm < target:
                hi, t = mid, tm
            else:
                lo = mid
        if hi != n:
            t = self._tail(hi, L)
        return hi, t

    def stage(self, L: int) -> Stage:
        if L < 1:
            raise UsageError("stages are indexed from 1")
        with self._stage_lock:
            if L in self._stages:
                return self._stages[L]
            target = Fraction(1, 2 * L)
            n, tail = self._choose_members(L)
            used = [n] if isinstance(self.cert, Increasing) else range(1, n + 1)
            fasts = [extract_fast(self.member(i)) for i in used]
            k = 0
            while True:
                err = sum((f.tail_bound(k) for f in fasts), Fraction(0))
                if err < target:
                    break
                k += 1
            element = reduce(union, (f(k) for f in fasts))
            st = Stage(L, n, k, tail, err, element)
            self._stages[L] = st
            return st

    def partial_union(self, n: int) -> CauchyPoint:
        """The finite union of members ``1..n`` as a completion point."""
        return finite_union_pt(self.member(i) for i in range(1, n + 1))


def countable_union(family, cert, label=None) -> CountableUnion:
    if not isinstance(cert, (Increasing, SummableBound, SearchCap)):
        raise UsageError(f"not a tail certificate: {cert!r}")
    return CountableUnion(family, cert, label=label)


def remainder_enclosure(e: CountableUnion, L: int, depth: int) -> Enclosure:
    """Enclosure of ``μ̄(E ∩ (member_1 ∪ ... ∪ member_{N_L})ᶜ)``, which is below ``1/L``."""
    n = e.stage(L).members
    return measure_completion(intersect_pt(e, complement_pt(e.partial_union(n))), depth)


def domination_enclosures(e: CountableUnion, n: int, depth: int):
    """Enclosures of ``μ̄(U_n ∩ E)`` and ``μ̄(U_n)`` for the partial union ``U_n``; they agree when ``U_n ⊆ E``."""
    _check_depth(depth)
    u = e.partial_union(n)
    return measure_completion(intersect_pt(u, e), depth), measure_completion(u, depth)
