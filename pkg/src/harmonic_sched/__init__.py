"""Minimum-time production schemes for agents of differing speeds."""

__version__ = "0.1.0"

from .core import (
    AgentClass,
    AssignmentMatrix,
    NotGridAligned,
    ProblemSpec,
    Scheme,
    SchemeError,
    Segment,
    WorkRecord,
    matrix_to_scheme,
    rational_arithmetic,
    scheme_to_matrix,
    work_record,
)
from .cyclic import ProductionPlan, build_cyclic, direct_sum, extend_to_p, gcd_reduce, object_progress
from .euclid import (
    EuclidTrace,
    StageReport,
    build_euclidean,
    euclid_trace,
    fibonacci_analysis,
    halt_number,
    halt_statistics,
    stage_lengths,
    stage_records,
)
from .harmonic import (
    HarmonicPartition,
    atomic_unit,
    build_proportions,
    harmonic_mean,
    harmonic_pairs,
    irreducible_representation,
    optimum_time,
    split_search,
)
from .timing import TimingReport, biker_hiker_time, optimal_time_two_type, total_time
from .verifier import ValidationReport, greedy_simulate, is_uniform, type_matrix, validate
