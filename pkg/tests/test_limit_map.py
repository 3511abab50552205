import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caratheodory.completion import (
    constant_point,
    dist_completion,
    dyadic,
    equivalent_within,
    reindex,
    zero_point,
)
from caratheodory.errors import UsageError
from caratheodory.families import (
    dyadic_blocks_tail,
    dyadicblocks,
    fatcantor,
    fatcantor_stage,
    increasing,
    increasing_blocks,
    perturb,
)
from caratheodory.generators import random_family_point
from caratheodory.limit_map import (
    FAIL,
    PARTIAL,
    PASS,
    Truth,
    apply_F,
    handle_ae_equal,
    handle_complement,
    handle_distance,
    handle_measure,
    handle_union,
    member_at_depth,
    verify_complement_hom,
    verify_countable_union_hom,
    verify_intersect_hom,
    verify_isometry,
    verify_union_hom,
    verify_well_defined,
)
from caratheodory.set_algebra import INTERVAL_UNIT, FiniteSubset, FiniteWeighted, canonicalize, distance
from caratheodory.sigma_ops import Increasing, SearchCap, SummableBound

HALF = canonicalize([(F(0), F(1, 2))])
QUARTERS = canonicalize([(F(1, 4), F(3, 4))])
ZERO = zero_point(INTERVAL_UNIT)


def test_apply_F_examples():
    h = apply_F(constant_point(HALF))
    assert all(h(n) == HALF for n in range(6)) and h.bound(3) == 0
    h = apply_F(fatcantor())
    for n in range(8):
        assert h(n) == fatcantor_stage(n + 1)
        assert h.bound(n) == dyadic(n)
        # the telescoped bound really covers every later approximant
        assert all(distance(h(n), h(m)) <= h.bound(n) for m in range(n, 10))
    assert apply_F(ZERO)(5).is_empty()
    x = perturb(2)
    assert apply_F(x)(4) is apply_F(x)(4)


def test_handle_distance_examples():
    h = apply_F(perturb(8))
    assert handle_distance(h, h, 10).contains(0)
    e = handle_distance(apply_F(constant_point(HALF)), apply_F(constant_point(QUARTERS)), 10)
    assert (e.lo, e.hi) == (F(1, 2), F(1, 2))
    e = handle_distance(apply_F(fatcantor()), apply_F(ZERO), 20)
    assert e.contains(F(1, 2)) and e.width <= dyadic(18)
    assert handle_measure(apply_F(fatcantor()), 20).contains(F(1, 2))
    with pytest.raises(UsageError):
        handle_distance(h, apply_F(zero_point(FiniteWeighted((F(1),)))), 4)


def test_ae_equal_examples():
    h = apply_F(fatcantor())
    assert handle_ae_equal(h, h, F(1, 1000), 12).value is Truth.IN
    a, b = apply_F(constant_point(HALF)), apply_F(constant_point(QUARTERS))
    assert handle_ae_equal(a, b, F(1, 4), 8).value is Truth.OUT
    x = fatcantor()
    r1, r2 = reindex(x, lambda n: n + 1), reindex(x, lambda n: n + 2)
    assert handle_ae_equal(apply_F(r1), apply_F(r2), dyadic(6), 12).value is Truth.IN
    assert handle_ae_equal(a, b, F(1, 2), 8).value is Truth.IN
    with pytest.raises(UsageError):
        handle_ae_equal(a, b, 0, 8)
    with pytest.raises(TypeError):
        bool(handle_ae_equal(a, b, F(1, 4), 8))


def test_member_at_depth_examples():
    h = apply_F(constant_point(HALF))
    assert member_at_depth(h, F(1, 4), range(0, 5)).value is Truth.IN
    assert member_at_depth(h, F(3, 4), range(0, 5)).value is Truth.OUT
    fc = apply_F(fatcantor())
    assert member_at_depth(fc, F(1, 2), range(0, 8)).value is Truth.OUT
    assert member_at_depth(fc, F(0), range(0, 8)).counts == {"hits": 8, "probes": 8}
    cfg = FiniteWeighted((F(1, 2), F(1, 2)))
    assert member_at_depth(apply_F(constant_point(FiniteSubset(2, cfg))), 1, range(3)).value is Truth.IN
    with pytest.raises(UsageError):
        member_at_depth(h, F(0), range(0))


def test_verify_well_defined_examples():
    x = fatcantor()
    r = verify_well_defined(x, x, 16)
    assert r.passed and all(e.contains(0) for e in r.enclosures.values())
    r = verify_well_defined(reindex(x, lambda n: n + 1), reindex(x, lambda n: n + 3), 16)
    assert r.passed and r.enclosures["handle_distance"].hi <= dyadic(13)
    r = verify_well_defined(constant_point(HALF), constant_point(QUARTERS), 16)
    assert r.passed and "vacuous" in r.notes


def test_verify_isometry_examples():
    r = verify_isometry(constant_point(HALF), constant_point(QUARTERS), 16)
    assert r.passed and all(e.contains(F(1, 2)) for e in r.enclosures.values())
    r = verify_isometry(fatcantor(), ZERO, 16)
    assert r.passed and all(e.contains(F(1, 2)) for e in r.enclosures.values())
    rng = random.Random(1)
    for _ in range(20):
        r = verify_isometry(random_family_point(rng), random_family_point(rng), 16)
        assert r.passed and all(e.width <= dyadic(14) for e in r.enclosures.values())


def test_verify_homomorphisms():
    a, b = constant_point(HALF), constant_point(QUARTERS)
    r = verify_union_hom(a, b, 16)
    assert r.passed and (r.enclosures["defect"].lo, r.enclosures["defect"].hi) == (0, 0)
    r = verify_complement_hom(fatcantor(), 16)
    assert r.passed and r.enclosures["defect"].hi <= dyadic(13)
    r = verify_intersect_hom(fatcantor(), perturb(3), 16)
    assert r.passed and r.enclosures["de_morgan"].contains(0)


@pytest.mark.parametrize("depth", [6, 10, 14, 18])
def test_homomorphism_defects_shrink(depth):
    x, y = increasing(), perturb(17)
    for r in (verify_union_hom(x, y, depth), verify_intersect_hom(x, y, depth), verify_complement_hom(y, depth)):
        assert r.passed
        assert all(e.hi <= dyadic(depth - 3) for e in r.enclosures.values())


def test_report_json_shape():
    r = verify_isometry(fatcantor(), ZERO, 12)
    data = json.loads(json.dumps(r.to_json()))
    assert set(data) >= {"claim", "depth", "enclosures", "verdict", "slack"}
    assert data["verdict"] == PASS and data["enclosures"]["completion"]["lo"].count("/") == 1


def test_a_wrong_handle_fails():
    # a union "handle" that ignores one operand must be caught
    x, y = constant_point(HALF), constant_point(QUARTERS)
    wrong = handle_distance(apply_F(x), handle_union(apply_F(x), apply_F(y)), 16)
    assert wrong.lo > dyadic(13)


def test_countable_union_reports():
    r = verify_countable_union_hom(increasing_blocks, Increasing(), 16)
    assert r.verdict == PASS and r.enclosures["measure"].contains(1)
    r = verify_countable_union_hom(dyadicblocks, SummableBound(dyadic_blocks_tail), 16)
    assert r.verdict == PASS and r.enclosures["limit"].contains(0) and r.enclosures["measure"].contains(F(1, 2))
    for name, e in r.enclosures.items():
        if name.startswith("stage_"):
            L = int(name[6:])
            assert e.hi <= F(1, L) + dyadic(14)


def test_countable_union_single_member_is_well_defined():
    x = perturb(12)
    r = verify_countable_union_hom(lambda i: x, SummableBound(lambda n: F(0)), 14)
    assert r.verdict == PASS


def test_countable_union_partial():
    r = verify_countable_union_hom(increasing_blocks, SearchCap(100), 16)
    assert r.verdict == PARTIAL and "certified only to 1/50" in r.notes


def test_countable_union_catches_a_lying_certificate():
    # claims nothing lies beyond member 1 while blocks keep adding measure
    r = verify_countable_union_hom(dyadicblocks, SummableBound(lambda n: F(0)), 12)
    assert r.verdict == FAIL


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_injectivity_witness(seed):
    rng = random.Random(seed)
    x, y = random_family_point(rng), random_family_point(rng)
    for depth in (8, 12, 16):
        if handle_distance(apply_F(x), apply_F(y), depth).lo > 0:
            assert equivalent_within(x, y, depth + 2).lo > 0
            break


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_surjectivity_witness(seed):
    h = apply_F(random_family_point(random.Random(seed)))
    back = apply_F(h.fast)
    e = handle_distance(back, h, 14)
    assert e.contains(0) and e.hi <= dyadic(12)


def test_finite_oracle_reports_are_exact():
    cfg = FiniteWeighted((F(1, 2), F(1, 4), F(1, 8), F(1, 8)))
    pts = [constant_point(FiniteSubset(m, cfg)) for m in range(16)]
    for x in pts[::3]:
        for y in pts[::5]:
            for r in (verify_isometry(x, y, 8), verify_union_hom(x, y, 8), verify_intersect_hom(x, y, 8),
                      verify_complement_hom(x, 8)):
                assert r.passed
                if r.claim != "isometry":
                    assert all((e.lo, e.hi) == (0, 0) for e in r.enclosures.values())
            d = dist_completion(x, y, 8)
            assert d.lo == d.hi
