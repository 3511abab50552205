"""Exact set algebras with measures, Cauchy completions of them, and certified limits.

Elements of a set algebra are exact (finite unions of rational intervals in
[0, 1), or subsets of a weighted finite set).  Points of the completion are
Cauchy sequences with explicit moduli, and every limit quantity is reported
as a certified rational enclosure.
"""

from .completion import (
    CauchyPoint,
    Enclosure,
    FastPoint,
    check_modulus,
    constant_point,
    dist_completion,
    equivalent_within,
    extract_fast,
    measure_completion,
    reindex,
)
from .dsl import eval_element, eval_point, parse, to_text
from .errors import CertificationIncomplete, DomainError, MeasureError, ParseError, UsageError
from .families import dyadicblocks, eval_family, fatcantor, increasing, increasing_blocks, perturb
from .limit_map import (
    MeasurableHandle,
    Report,
    Truth,
    apply_F,
    handle_ae_equal,
    handle_complement,
    handle_distance,
    handle_intersect,
    handle_measure,
    handle_union,
    verify_complement_hom,
    verify_countable_union_hom,
    verify_intersect_hom,
    verify_isometry,
    verify_union_hom,
    verify_well_defined,
)
from .outer_measure import Cover, cover_cost, is_cover, outer_measure_element
from .set_algebra import (
    INTERVAL_UNIT,
    FiniteSubset,
    FiniteWeighted,
    IntervalSet,
    IntervalUnit,
    canonicalize,
    complement,
    difference,
    distance,
    intersect,
    measure,
    symm_diff,
    union,
)
from .sigma_ops import (
    Increasing,
    SearchCap,
    SummableBound,
    complement_pt,
    countable_union,
    difference_pt,
    intersect_pt,
    union_pt,
)

__all__ = [name for name in dir() if not name.startswith("_")]
