"""The map from completion points to limsup representatives, and its verifiers.

A completion point ``x`` is sent to the set ``limsup_n x(g(n))`` where ``g``
is its fast re-index shifted by one (so ``g(n) > n``).  The limsup is never
materialized: a :class:`MeasurableHandle` *is* the fast subsequence plus the
telescoped bound

    μ*(x(g(N)) △ limsup) <= Σ_{k > N} 2**-k = 2**-N

which is what every comparison below uses.  Handles denote sets up to
null sets, so combining two handles index-wise stays within the summed bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .completion import (
    CauchyPoint,
    Enclosure,
    _check_depth,
    _same_config,
    dist_completion,
    dyadic,
    equivalent_within,
    extract_fast,
    measure_completion,
)
from .errors import CertificationIncomplete, UsageError
from .set_algebra import FiniteSubset, as_rational, complement, difference, distance, format_rational, intersect, union
from .sigma_ops import Increasing, complement_pt, countable_union, intersect_pt, union_pt


class MeasurableHandle:
    """A set in the σ-algebra, given by approximants ``approximant(n)`` with
    ``μ*(approximant(n) △ S) <= bound(n)``.
    """

    def __init__(self, config, approximant, bound, label="", fast=None):
        self.config = config
        self._approximant = approximant
        self._bound = bound
        self.label = label
        self.fast = fast

    def approximant(self, n: int):
        return self._approximant(n)

    __call__ = approximant

    def bound(self, n: int) -> Fraction:
        return self._bound(n)

    def __repr__(self):
        return f"<MeasurableHandle {self.label}>"


def apply_F(x: CauchyPoint) -> MeasurableHandle:
    fx = extract_fast(x)
    return MeasurableHandle(
        x.config,
        lambda n: fx(n + 1),
        # consecutive fast approximants differ by <= 2**-k; zero once settled
        lambda n: 2 * fx.tail_bound(n + 1),
        label=f"F({x.label})",
        fast=fx,
    )


def _handle_op(s, t, op, name):
    if s.config != t.config:
        raise UsageError("handles come from different algebras")
    return MeasurableHandle(
        s.config,
        lambda n: op(s(n), t(n)),
        lambda n: s.bound(n) + t.bound(n),
        label=f"{name}({s.label}, {t.label})",
    )


def handle_union(s, t) -> MeasurableHandle:
    return _handle_op(s, t, union, "union")


def handle_intersect(s, t) -> MeasurableHandle:
    return _handle_op(s, t, intersect, "intersect")


def handle_complement(s) -> MeasurableHandle:
    return MeasurableHandle(s.config, lambda n: complement(s(n)), s.bound, label=f"not({s.label})")


def handle_distance(s: MeasurableHandle, t: MeasurableHandle, depth: int) -> Enclosure:
    """Enclosure of ``μ*(S △ T)`` from the depth-indexed approximants."""
    if s.config != t.config:
        raise UsageError("handles come from different algebras")
    _check_depth(depth)
    return Enclosure.around(distance(s(depth), t(depth)), s.bound(depth) + t.bound(depth), floor=0)


def handle_measure(s: MeasurableHandle, depth: int) -> Enclosure:
    _check_depth(depth)
    return Enclosure.around(s(depth).measure(), s.bound(depth), floor=0)


class Truth(enum.Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ThreeValued:
    value: Truth
    counts: dict = field(default_factory=dict)

    def __bool__(self):
        raise TypeError("a three-valued answer has no truth value; compare .value")


def handle_ae_equal(s, t, tolerance, depth) -> ThreeValued:
    """IN (equal a.e.) when the distance enclosure is within ``tolerance``, OUT when provably above it."""
    tolerance = as_rational(tolerance)
    if tolerance <= 0:
        raise UsageError("tolerance must be positive")
    e = handle_distance(s, t, depth)
    counts = {"lo": format_rational(e.lo), "hi": format_rational(e.hi)}
    if e.hi <= tolerance:
        return ThreeValued(Truth.IN, counts)
    if e.lo > tolerance:
        return ThreeValued(Truth.OUT, counts)
    return ThreeValued(Truth.UNKNOWN, counts)


def member_at_depth(s: MeasurableHandle, q, window: range) -> ThreeValued:
    """Diagnostic limsup probe: IN if ``q`` lies in every approximant over ``window``, OUT if in none.

    ``q`` is a rational in [0, 1) for interval handles or an atom index for
    finite ones.  Heuristic only; no verifier relies on it.
    """
    window = range(window.start, window.stop) if isinstance(window, range) else range(*window)
    if len(window) == 0:
        raise UsageError("empty window")
    hits = 0
    for n in window:
        a = s(n)
        inside = bool(a.mask >> int(q) & 1) if isinstance(a, FiniteSubset) else a.contains(q)
        hits += inside
    counts = {"hits": hits, "probes": len(window)}
    if hits == len(window):
        return ThreeValued(Truth.IN, counts)
    if hits == 0:
        return ThreeValued(Truth.OUT, counts)
    return ThreeValued(Truth.UNKNOWN, counts)


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------


PASS, FAIL, PARTIAL = "PASS", "FAIL", "PARTIAL"


@dataclass(frozen=True)
class Report:
    claim: str
    depth: int
    enclosures: dict
    verdict: str
    slack: Fraction
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self):
        out = {
            "claim": self.claim,
            "depth": self.depth,
            "enclosures": {k: v.to_json() for k, v in self.enclosures.items()},
            "verdict": self.verdict,
            "slack": format_rational(self.slack),
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _hom_slack(depth):
    return dyadic(depth - 3)


def verify_well_defined(x, y, depth) -> Report:
    """Equivalent points must have handles at distance zero."""
    _same_config(x, y)
    slack = _hom_slack(depth)
    eq = equivalent_within(x, y, depth)
    hd = handle_distance(apply_F(x), apply_F(y), depth)
    encl = {"equivalence": eq, "handle_distance": hd}
    if eq.lo > 0:
        return Report("well_defined", depth, encl, PASS, slack, notes="inputs not equivalent; vacuous")
    verdict = PASS if hd.hi <= eq.hi + slack else FAIL
    return Report("well_defined", depth, encl, verdict, slack)


def verify_isometry(x, y, depth) -> Report:
    """The completion distance and the handle distance must enclose a common value."""
    _same_config(x, y)
    dc = dist_completion(x, y, depth)
    hd = handle_distance(apply_F(x), apply_F(y), depth)
    gap = dc.gap(hd)
    verdict = PASS if dc.intersects(hd) else FAIL
    return Report("isometry", depth, {"completion": dc, "handles": hd}, verdict, gap, notes="slack is the interval gap")


def _hom_verdict(e, slack):
    return PASS if e.contains(0) and e.hi <= slack else FAIL


def verify_union_hom(x, y, depth) -> Report:
    slack = _hom_slack(depth)
    e = handle_distance(apply_F(union_pt(x, y)), handle_union(apply_F(x), apply_F(y)), depth)
    return Report("union_hom", depth, {"defect": e}, _hom_verdict(e, slack), slack)


def verify_intersect_hom(x, y, depth) -> Report:
    """Checks the direct path and the De Morgan path ``(xᶜ ∪ yᶜ)ᶜ`` against each other too."""
    slack = _hom_slack(depth)
    direct = apply_F(intersect_pt(x, y))
    e = handle_distance(direct, handle_intersect(apply_F(x), apply_F(y)), depth)
    via = apply_F(complement_pt(union_pt(complement_pt(x), complement_pt(y))))
    dm = handle_distance(via, direct, depth)
    verdict = PASS if _hom_verdict(e, slack) == PASS and _hom_verdict(dm, slack) == PASS else FAIL
    return Report("intersect_hom", depth, {"defect": e, "de_morgan": dm}, verdict, slack)


def verify_complement_hom(x, depth) -> Report:
    slack = _hom_slack(depth)
    e = handle_distance(apply_F(complement_pt(x)), handle_complement(apply_F(x)), depth)
    return Report("complement_hom", depth, {"defect": e}, _hom_verdict(e, slack), slack)


DEFAULT_STAGES = (1, 2, 4, 8, 16, 32, 64)


def verify_countable_union_hom(family, cert, depth, stages=DEFAULT_STAGES) -> Report:
    """Compare the handle of the countable union with finite unions of member handles.

    At stage ``L`` the members ``1..N_L`` are used; their handles are read at
    a deeper index so their summed bounds stay below ``2**-(depth+1)``.
    Besides the listed stages, the stage the handle itself reads at ``depth``
    is checked ("limit"); its defect should enclose 0.  PASS iff every
    defect enclosure has ``hi <= 1/L + 2**-(depth-2)``.

    The stages only look at members the certificate selects, so a wrong
    certificate would go unnoticed.  As an independent check, members
    ``1, 2, 4, ...`` up to four times the limit stage's member count must lie
    inside the union: the enclosure of ``μ*(member \\ F(E))`` must contain 0.
    """
    _check_depth(depth)
    e = countable_union(family, cert)
    handle = apply_F(e)
    slack = dyadic(depth - 2)
    encl = {}
    verdict = PASS

    def defect(L):
        n = e.stage(L).members
        deeper = depth + 1 + n.bit_length()
        # nested members: the first n handles unite to handle n up to a null set
        used = [n] if isinstance(cert, Increasing) else range(1, n + 1)
        members = [apply_F(e.member(i)) for i in used]
        joined = members[0](deeper)
        for h in members[1:]:
            joined = union(joined, h(deeper))
        radius = handle.bound(depth) + sum((h.bound(deeper) for h in members), Fraction(0))
        return Enclosure.around(distance(handle(depth), joined), radius, floor=0)

    try:
        for L in stages:
            encl[f"stage_{L}"] = d = defect(L)
            if d.hi > Fraction(1, L) + slack:
                verdict = FAIL
        # index depth of the handle is stage 2**(g+1) of the union, g its fast re-index
        limit_stage = e.fast().index(depth + 1)
        limit_stage = max(limit_stage, 1)
        encl["limit"] = d = defect(limit_stage)
        if d.hi > Fraction(1, limit_stage) + slack:
            verdict = FAIL
        worst = None
        i, top = 1, 4 * e.stage(limit_stage).members
        while i <= top:
            h = apply_F(e.member(i))
            c = Enclosure.around(
                difference(h(depth), handle(depth)).measure(), h.bound(depth) + handle.bound(depth), floor=0
            )
            if worst is None or c.lo > worst.lo:
                worst = c
            i *= 2
        encl["containment"] = worst
        if worst.lo > 0:
            verdict = FAIL
        encl["measure"] = handle_measure(handle, depth)
    except CertificationIncomplete as exc:
        achieved = "nothing" if exc.achieved is None else format_rational(exc.achieved)
        return Report(
            "countable_union_hom", depth, encl, PARTIAL, slack,
            notes=f"certified only to {achieved}; stage {exc.requested} unreachable",
        )
    return Report("countable_union_hom", depth, encl, verdict, slack)
