"""Seeded verification suites run by ``caratheodory verify``.

Each suite returns a plain ``dict`` summary with a ``verdict`` of PASS, FAIL
or PARTIAL.  Summaries contain no timings or addresses, so identical
arguments give byte-identical JSON.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .completion import constant_point, dist_completion, dyadic, measure_completion
from .errors import CertificationIncomplete, UsageError
from .families import dyadic_blocks_tail, dyadicblocks, increasing_blocks
from .generators import (
    constant_family,
    random_cover,
    random_element,
    random_family_point,
    random_reindexing,
    random_weights,
)
from .limit_map import (
    FAIL,
    PARTIAL,
    PASS,
    apply_F,
    handle_complement,
    handle_distance,
    handle_intersect,
    handle_union,
    verify_complement_hom,
    verify_countable_union_hom,
    verify_intersect_hom,
    verify_isometry,
    verify_union_hom,
    verify_well_defined,
)
from .outer_measure import Cover, cover_cost, is_cover
from .set_algebra import (
    INTERVAL_UNIT,
    FiniteSubset,
    complement,
    distance,
    format_rational,
    intersect,
    measure,
    union,
)
from .sigma_ops import Increasing, SummableBound, complement_pt, countable_union, intersect_pt, union_pt

MAX_FAILURES = 5


def _summary(suite, checks, violations, failures, **extra):
    out = {
        "suite": suite,
        "checks": checks,
        "violations": violations,
        "verdict": PASS if violations == 0 else FAIL,
        "failures": failures[:MAX_FAILURES],
    }
    out.update(extra)
    return out


def metric(trials=10_000, seed=0, config=INTERVAL_UNIT, **_):
    """Pseudometric axioms on random triples, exactly."""
    rng = random.Random(seed)
    violations, failures = 0, []
    for t in range(trials):
        a, b, c = (random_element(rng, config) for _ in range(3))
        ab, ba, bc, ac = distance(a, b), distance(b, a), distance(b, c), distance(a, c)
        problems = []
        if distance(a, a) != 0:
            problems.append("d(a,a) != 0")
        if ab != ba:
            problems.append("asymmetric")
        if (ab == 0) != (a == b):
            problems.append("d(a,b)=0 disagrees with a == b")
        if ac > ab + bc:
            problems.append("triangle")
        if problems:
            violations += 1
            failures.append({"trial": t, "problems": problems})
    return _summary("metric", trials, violations, failures, trials=trials, seed=seed)


def restriction(trials=1_000, seed=0, config=INTERVAL_UNIT, covers=100, **_):
    """Every cover costs at least the measure; the singleton cover attains it."""
    rng = random.Random(seed)
    violations, failures, covering = 0, [], 0
    for t in range(trials):
        e = random_element(rng, config)
        m = measure(e)
        if cover_cost(Cover([e])) != m:
            violations += 1
            failures.append({"trial": t, "problem": "singleton cover does not attain the measure"})
        for _ in range(covers):
            c = random_cover(rng, e, config)
            if is_cover(e, c):
                covering += 1
                if cover_cost(c) < m:
                    violations += 1
                    failures.append({"trial": t, "problem": "cover cheaper than measure"})
    return _summary(
        "restriction", trials * (covers + 1), violations, failures, trials=trials, seed=seed, covering=covering
    )


def isometry(trials=100, seed=0, depth=16, **_):
    """Completion distance versus handle distance on random family pairs."""
    rng = random.Random(seed)
    width_cap = dyadic(depth - 2)
    violations, failures, max_gap = 0, [], Fraction(0)
    for t in range(trials):
        x, y = random_family_point(rng), random_family_point(rng)
        r = verify_isometry(x, y, depth)
        max_gap = max(max_gap, r.slack)
        wide = any(e.width > width_cap for e in r.enclosures.values())
        if not r.passed or wide:
            violations += 1
            failures.append({"trial": t, "pair": [x.label, y.label], "report": r.to_json()})
    return _summary(
        "isometry", trials, violations, failures, trials=trials, seed=seed, depth=depth,
        max_gap=format_rational(max_gap),
    )


def sigma_hom(trials=100, seed=0, depth=16, **_):
    """Union, intersection (direct and De Morgan) and complement commute with F."""
    rng = random.Random(seed)
    violations, failures, worst = 0, [], Fraction(0)
    for t in range(trials):
        x, y = random_family_point(rng), random_family_point(rng)
        for r in (verify_union_hom(x, y, depth), verify_intersect_hom(x, y, depth), verify_complement_hom(x, depth)):
            worst = max([worst] + [e.hi for e in r.enclosures.values()])
            if not r.passed:
                violations += 1
                failures.append({"trial": t, "pair": [x.label, y.label], "report": r.to_json()})
    return _summary(
        "sigma-hom", 3 * trials, violations, failures, trials=trials, seed=seed, depth=depth,
        max_defect=format_rational(worst),
    )


def well_defined(trials=50, seed=0, depth=16, **_):
    """Two re-indexings of one family must have handles at distance zero."""
    rng = random.Random(seed)
    violations, failures = 0, []
    for t in range(trials):
        base = random_family_point(rng)
        x = random_reindexing(rng, base)
        y = random_reindexing(rng, base)
        while y.label == x.label:
            y = random_reindexing(rng, base)
        r = verify_well_defined(x, y, depth)
        if not r.passed or r.enclosures["handle_distance"].hi > dyadic(depth - 3):
            violations += 1
            failures.append({"trial": t, "pair": [x.label, y.label], "report": r.to_json()})
    return _summary("well-defined", trials, violations, failures, trials=trials, seed=seed, depth=depth)


COUNTABLE_FAMILIES = {
    "increasing": (increasing_blocks, Increasing()),
    "dyadic": (dyadicblocks, SummableBound(dyadic_blocks_tail, text="2^(-N-1)")),
}


def countable_union_suite(depth=16, family=None, certificate=None, **_):
    """The countable-union construction on the builtin families of points."""
    names = [family] if family else sorted(COUNTABLE_FAMILIES)
    reports = {}
    for name in names:
        if name not in COUNTABLE_FAMILIES:
            raise UsageError(f"unknown family {name!r}; known: {', '.join(sorted(COUNTABLE_FAMILIES))}")
        fam, cert = COUNTABLE_FAMILIES[name]
        reports[name] = verify_countable_union_hom(fam, certificate or cert, depth).to_json()
    verdicts = {r["verdict"] for r in reports.values()}
    verdict = FAIL if FAIL in verdicts else PARTIAL if PARTIAL in verdicts else PASS
    return {"suite": "countable-union", "depth": depth, "reports": reports, "verdict": verdict}


def oracle(atoms=8, seed=0, depth=16, unions=50, **_):
    """Brute force over a weighted power set: everything must hold with zero defect.

    On a finite algebra with positive weights the completion is the algebra
    itself, so every enclosure at sufficient depth must be a single point.
    """
    rng = random.Random(seed)
    config = random_weights(rng, atoms)
    if dyadic(depth) >= config.resolution:
        raise UsageError(f"depth {depth} is too shallow for weights down to {config.resolution}")
    elements = [FiniteSubset(m, config) for m in range(1 << atoms)]
    points = [constant_point(e) for e in elements]
    handles = [apply_F(p) for p in points]
    zero = Fraction(0)
    violations, failures, checks = 0, [], 0

    def fail(what, **info):
        nonlocal violations
        violations += 1
        failures.append({"check": what, **info})

    for a, p, h in zip(elements, points, handles):
        checks += 3
        m = measure_completion(p, depth)
        if (m.lo, m.hi) != (measure(a), measure(a)):
            fail("measure", element=a.to_json())
        if h(depth) != a or h.bound(depth) != 0:
            fail("F is not the identity", element=a.to_json())
        e = handle_distance(apply_F(complement_pt(p)), handle_complement(h), depth)
        if (e.lo, e.hi) != (zero, zero) or h(depth) != complement(handle_complement(h)(depth)):
            fail("complement", element=a.to_json())
    for (a, p, h), (b, q, k) in product(zip(elements, points, handles), repeat=2):
        checks += 3
        d = distance(a, b)
        dc = dist_completion(p, q, depth)
        hd = handle_distance(h, k, depth)
        if (dc.lo, dc.hi, hd.lo, hd.hi) != (d, d, d, d):
            fail("isometry", pair=[a.to_json(), b.to_json()])
        eu = handle_distance(apply_F(union_pt(p, q)), handle_union(h, k), depth)
        if (eu.lo, eu.hi) != (zero, zero) or handle_union(h, k)(depth) != union(a, b):
            fail("union", pair=[a.to_json(), b.to_json()])
        ei = handle_distance(apply_F(intersect_pt(p, q)), handle_intersect(h, k), depth)
        if (ei.lo, ei.hi) != (zero, zero) or handle_intersect(h, k)(depth) != intersect(a, b):
            fail("intersection", pair=[a.to_json(), b.to_json()])
    for t in range(unions):
        checks += 1
        length = rng.randint(1, 12)
        members = [elements[rng.randrange(1 << atoms)] for _ in range(length)]
        total = config.total_mass
        cert = SummableBound(lambda n, length=length, total=total: zero if n >= length else total)
        target = config.empty()
        for m in members:
            target = union(target, m)
        try:
            u = countable_union(constant_family(members, members[-1]), cert)
            d = dist_completion(u, constant_point(target), depth)
            h = apply_F(u)
            exact = (d.lo, d.hi) == (zero, zero) and h(depth) == target and h.bound(depth) == 0
        except CertificationIncomplete:
            exact = False
        if not exact:
            fail("countable union", trial=t, members=[m.to_json() for m in members])
    return _summary(
        "oracle", checks, violations, failures, atoms=atoms, seed=seed, depth=depth,
        weights=[format_rational(w) for w in config.weights],
    )


SUITES = {
    "metric": metric,
    "restriction": restriction,
    "isometry": isometry,
    "sigma-hom": sigma_hom,
    "well-defined": well_defined,
    "countable-union": countable_union_suite,
    "oracle": oracle,
}


def run_suite(name, **options):
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name](**{k: v for k, v in options.items() if v is not None})
