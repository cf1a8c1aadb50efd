"""Partial metrics, partial n-metrics and their fixed point theory on finite data."""

from .alignment import (
    AlignmentResult,
    ScoringScheme,
    best_alignment,
    multi_score,
    score_pair,
    space_from_words,
    validate_scheme,
)
from .core import (
    AxiomReport,
    Family,
    FiniteSpace,
    MetricKind,
    SpaceError,
    Tolerance,
    check_axioms,
    induce_metric,
    lift_to_n,
    shift_by_constant,
    space_from_dict,
    space_to_dict,
    term_replacement_margin,
)
from .fixedpoint import (
    ContractionSpec,
    SolveOptions,
    SolveResult,
    check_consistent,
    check_nonexpansive,
    check_orbital_contraction,
    find_coincidence_point,
    find_common_fixed_point,
    find_fixed_point,
    iterate_orbit,
)
from .sequences import (
    CauchyVerdict,
    DistanceEvaluator,
    check_cauchy_pair,
    check_limit,
    check_special_limit,
    classify_cauchy,
)
from .spaces import CatalogSpec, build_space, numeric_evaluator, sample_real_space
from .topology import closure_of, generate_topology, topologies_coincide

__version__ = "0.1.0"
