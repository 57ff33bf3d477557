"""Adaptive-sample-size nonmonotone spectral projected subgradient methods.

Solves constrained finite-sum problems of hinge-loss type by projected
subgradient steps whose length comes from a spectral (Barzilai-Borwein
style) coefficient and a nonmonotone acceptance test, while the number
of data rows in play grows adaptively from a small starting sample to
the whole dataset. The package bundles the solver, the regularized
hinge-loss benchmark problem with cost-metered oracles, a scikit-learn
classifier wrapper, and a benchmark CLI (``ansps run|compare|sweep``).
"""

from .data import Dataset, ParseError, dumps_libsvm, make_synthetic, parse_libsvm, write_libsvm
from .estimator import ANSPSClassifier
from .hinge import GridSearchResult, HingeOracle, HingeProblem, default_region, grid_search_optimum
from .linesearch import NONMONOTONE_RULES, NonmonotoneState, candidate_steps, line_search
from .regions import Box, L2Ball, Nonnegative, WholeSpace, distance_to_region, project, sample_point
from .sampling import STRATEGIES, SampleSchedule, saa_error_measure
from .solver import (
    ComplexityReport,
    NumericError,
    SolverConfig,
    SolverState,
    complexity_report,
    finalize,
    init_state,
    run,
    step,
)
from .spectral import RULES, SpectralState, pair_differences, raw_bb, scale_subgradient, search_direction
from .trace import CSV_HEADER, RunTrace, TraceRow

__version__ = "0.1.0"

__all__ = [
    "ANSPSClassifier",
    "Box",
    "CSV_HEADER",
    "ComplexityReport",
    "Dataset",
    "GridSearchResult",
    "HingeOracle",
    "HingeProblem",
    "L2Ball",
    "NONMONOTONE_RULES",
    "Nonnegative",
    "NonmonotoneState",
    "NumericError",
    "ParseError",
    "RULES",
    "RunTrace",
    "STRATEGIES",
    "SampleSchedule",
    "SolverConfig",
    "SolverState",
    "SpectralState",
    "TraceRow",
    "WholeSpace",
    "candidate_steps",
    "complexity_report",
    "default_region",
    "distance_to_region",
    "dumps_libsvm",
    "finalize",
    "grid_search_optimum",
    "init_state",
    "line_search",
    "make_synthetic",
    "pair_differences",
    "parse_libsvm",
    "project",
    "raw_bb",
    "run",
    "sample_point",
    "saa_error_measure",
    "scale_subgradient",
    "search_direction",
    "step",
    "write_libsvm",
]
