"""Builtin Cauchy families on the interval algebra, each shipped with a proven modulus.

fatcantor
    Stage ``n`` removes, from each of the ``2**(n-1)`` blocks left by stage
    ``n-1``, the centred open middle interval of length ``4**-n``.  Stage
    measure is ``1/2 + 2**-(n+1)`` and stages are nested, so for ``i < j``
    the distance is ``2**-(i+1) - 2**-(j+1) < 2**-i``: ``modulus(k) = k``.

increasing
    ``[0, 1 - 1/(i+2))``.  Nested, so ``d(i, j) = 1/(i+2) - 1/(j+2) < 1/(i+2)``
    which is below ``2**-k`` once ``i >= 2**k``: ``modulus(k) = 2**k``.

dyadicblocks(i)
    The constant point ``[1 - 2**-i, 1 - 2**-(i+1))``.

perturb(seed)
    A seeded random interval set flipped at step ``n`` on at most two dyadic
    cells of length ``2**-(n+3)``.  Step ``n`` moves the set by at most
    ``2**-(n+2)``, so ``d(i, j) < 2**-(i+2)``: ``modulus(k) = k``.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .completion import CauchyPoint, constant_point, dyadic
from .errors import DomainError, UsageError
from .set_algebra import INTERVAL_UNIT, IntervalSet, canonicalize, symm_diff

_INT64_STAGES = 30  # stage n has denominator 2**(2n+1) before reduction


@lru_cache(maxsize=4)
def _fatcantor_raw(n):
    if n == 0:
        return 2, np.array([0, 2], dtype=np.int64)
    den, b = _fatcantor_raw(n - 1)
    if n > _INT64_STAGES and b.dtype != object:
        b = b.astype(object)
    lo, hi = b[0::2], b[1::2]
    mid = 2 * (lo + hi)
    # removed half-width 4**-n / 2 is exactly one unit of 2**-(2n+1)
    out = np.stack([4 * lo, mid - 1, mid + 1, 4 * hi], axis=1).ravel()
    out.flags.writeable = False
    return 4 * den, out


def fatcantor_stage(n: int) -> IntervalSet:
    """The stage-``n`` element of the fat Cantor construction (stage 0 is [0, 1))."""
    if n < 0:
        raise DomainError(f"negative stage {n}")
    den, b = _fatcantor_raw(n)
    return IntervalSet.from_bounds(den, b)


def fatcantor_stage_measure(n: int) -> Fraction:
    """Closed form ``1/2 + 2**-(n+1)``."""
    return Fraction(1, 2) + dyadic(n + 1)


def fatcantor() -> CauchyPoint:
    return CauchyPoint(INTERVAL_UNIT, fatcantor_stage, lambda k: k, label="fatcantor", cache_size=4)


def increasing() -> CauchyPoint:
    return CauchyPoint(
        INTERVAL_UNIT,
        lambda i: IntervalSet.from_bounds(i + 2, [0, i + 1]),
        lambda k: 1 << k,
        label="increasing",
    )


def dyadic_block(i: int) -> IntervalSet:
    if i < 0:
        raise DomainError(f"negative block index {i}")
    return canonicalize([(1 - dyadic(i), 1 - dyadic(i + 1))])


def dyadicblocks(i: int) -> CauchyPoint:
    return constant_point(dyadic_block(i), label=f"dyadicblocks({i})")


class _PerturbWalk:
    def __init__(self, seed):
        self.seed = seed
        rng = random.Random(seed)
        cells = [(Fraction(j, 16), Fraction(j + 1, 16)) for j in range(16) if rng.random() < 0.5]
        self._steps = [canonicalize(cells)]
        self._lock = threading.Lock()

    def _flip(self, n):
        rng = random.Random((self.seed << 32) + n)
        scale = 1 << (n + 3)
        cells = [(Fraction(j, scale), Fraction(j + 1, scale)) for j in rng.sample(range(scale), rng.randint(1, 2))]
        return canonicalize(cells)

    def __call__(self, n):
        with self._lock:
            steps = self._steps
            while len(steps) <= n:
                steps.append(symm_diff(steps[-1], self._flip(len(steps))))
            return steps[n]


def perturb(seed: int) -> CauchyPoint:
    return CauchyPoint(INTERVAL_UNIT, _PerturbWalk(seed), lambda k: k, label=f"perturb({seed})")


# families of points, indexed from 1, for countable unions


def increasing_blocks(i: int) -> CauchyPoint:
    """Member ``i >= 1`` of the nested family ``[0, 1 - 1/(i+1))``; the union is [0, 1)."""
    return constant_point(IntervalSet.from_bounds(i + 1, [0, i]), label=f"[0,1-1/{i + 1})")


def dyadic_blocks_tail(n: int) -> Fraction:
    """Measure of the union of ``dyadicblocks(i)`` over ``i > n``."""
    return dyadic(n + 1)


BUILTINS = {
    "fatcantor": (fatcantor, 0),
    "increasing": (increasing, 0),
    "dyadicblocks": (dyadicblocks, 1),
    "perturb": (perturb, 1),
}


def eval_family(name: str, params=(), config=INTERVAL_UNIT) -> CauchyPoint:
    """Instantiate a builtin family; unknown names and bad parameters are usage errors."""
    if name not in BUILTINS:
        raise UsageError(f"unknown family {name!r}; known: {', '.join(sorted(BUILTINS))}")
    if config != INTERVAL_UNIT:
        raise UsageError(f"family {name!r} lives on the interval algebra, not {config}")
    make, arity = BUILTINS[name]
    params = tuple(params)
    if len(params) != arity:
        raise UsageError(f"{name} takes {arity} parameter(s), got {len(params)}")
    for p in params:
        if Fraction(p).denominator != 1 or p < 0:
            raise UsageError(f"{name} parameters must be non-negative integers, got {p}")
    return make(*(int(p) for p in params))
