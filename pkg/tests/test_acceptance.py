"""The acceptance gate: nine criteria, each at its stated tolerance and time limit.

Every test records one ``PASS``/``FAIL`` line, printed in the pytest terminal
summary (and directly when run as ``python3 tests/test_acceptance.py``).
"""

import random
import time
from fractions import Fraction as F

import pytest

import acceptance_log
from caratheodory.completion import check_modulus, dyadic, measure_completion
from caratheodory.dsl import parse, to_text
from caratheodory.families import BUILTINS, dyadic_blocks_tail, dyadicblocks, eval_family, fatcantor, increasing_blocks
from caratheodory.generators import random_expr
from caratheodory.limit_map import verify_countable_union_hom
from caratheodory.sigma_ops import Increasing, SummableBound, countable_union, remainder_enclosure
from caratheodory.suites import run_suite

DEPTH = 16
SEED = 2024


def gate(number, title, limit, check):
    """Run ``check`` (returns ``(ok, detail)``), time it and record the verdict line."""
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    line = f"[{verdict}] {number}. {title}: {detail}; {elapsed:.2f}s (limit {limit}s)"
    acceptance_log.LINES.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def test_1_metric_axioms():
    def check():
        r = run_suite("metric", trials=10_000, seed=SEED)
        return r["violations"] == 0, f"{r['violations']} violations in {r['checks']} triples"

    gate(1, "metric axioms", 10, check)


def test_2_restriction():
    def check():
        r = run_suite("restriction", trials=1_000, covers=100, seed=SEED)
        return r["violations"] == 0, f"{r['violations']} violations, {r['covering']} true covers"

    gate(2, "restriction of the outer measure", 30, check)


def test_3_finite_oracle():
    def check():
        r = run_suite("oracle", atoms=8, seed=SEED, depth=DEPTH, unions=50)
        return r["violations"] == 0, f"{r['violations']} non-exact results in {r['checks']} checks"

    gate(3, "finite-algebra oracle, 8 atoms", 60, check)


def test_4_fatcantor_measure():
    def check():
        e = measure_completion(fatcantor(), 20)
        ok = e.contains(F(1, 2)) and e.width <= dyadic(18)
        return ok, f"[{e.lo}, {e.hi}] width 2^-{(1 / e.width).numerator.bit_length() - 1}"

    gate(4, "fat Cantor measure at depth 20", 5, check)


def test_5_isometry():
    def check():
        r = run_suite("isometry", trials=100, seed=SEED, depth=DEPTH)
        return r["violations"] == 0, f"{r['violations']} failures, max gap {r['max_gap']}"

    gate(5, "isometry on 100 pairs", 60, check)


def test_6_sigma_homomorphism():
    def check():
        r = run_suite("sigma-hom", trials=100, seed=SEED, depth=DEPTH)
        worst = F(r["max_defect"])
        ok = r["violations"] == 0 and worst <= dyadic(DEPTH - 3)
        return ok, f"{r['violations']} failures, worst defect hi {float(worst):.3g} <= 2^-13"

    gate(6, "union/intersection/complement homomorphism", 120, check)


def test_7_countable_union():
    def check():
        problems = []
        families = {
            "increasing": (increasing_blocks, Increasing(), F(1)),
            "dyadic": (dyadicblocks, SummableBound(dyadic_blocks_tail, "2^(-N-1)"), F(1, 2)),
        }
        for name, (fam, cert, total) in families.items():
            e = countable_union(fam, cert)
            for L in range(1, 65):
                if remainder_enclosure(e, L, DEPTH).hi > F(1, L):
                    problems.append(f"{name} remainder at L={L}")
            if not measure_completion(e, DEPTH).contains(total):
                problems.append(f"{name} measure misses {total}")
            r = verify_countable_union_hom(fam, cert, DEPTH)
            if not r.passed:
                problems.append(f"{name} union defect")
            for key, enc in r.enclosures.items():
                if key.startswith("stage_") and enc.hi > F(1, int(key[6:])) + dyadic(DEPTH - 2):
                    problems.append(f"{name} {key}")
        return not problems, "; ".join(problems) or "remainders <= 1/L for L <= 64, measures 1 and 1/2 enclosed"

    gate(7, "countable union", 120, check)


def test_8_well_defined():
    def check():
        r = run_suite("well-defined", trials=50, seed=SEED, depth=DEPTH)
        return r["violations"] == 0, f"{r['violations']} of {r['checks']} pairs over 2^-13"

    gate(8, "well-definedness on re-indexings", 30, check)


def test_9_dsl():
    def check():
        rng = random.Random(SEED)
        bad = 0
        for _ in range(500):
            e = random_expr(rng, 5)
            text = to_text(e)
            if parse(text) != e or to_text(parse(text)) != text:
                bad += 1
        params = {name: (3,) * arity for name, (_, arity) in BUILTINS.items()}
        moduli = all(check_modulus(eval_family(name, p), 12) for name, p in params.items())
        return bad == 0 and moduli, f"{bad} round-trip failures, check_modulus {'ok' if moduli else 'FAILED'}"

    gate(9, "DSL round trip and builtin moduli", 10, check)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
