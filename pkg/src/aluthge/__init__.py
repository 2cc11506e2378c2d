"""Generalized Aluthge transforms, numerical radius computation, and a
randomized verification harness for the associated operator inequalities,
at dense desk scale (n x n complex matrices, n <= 16)."""

from .catalog import CATALOG, Evaluator, check, check_all
from .ensembles import MatrixEnsemble, generate
from .harness import (
    ExperimentConfig,
    ExperimentSummary,
    min_slack_search,
    run,
    summary_json_bytes,
    write_slack_csv,
    write_summary,
)
from .linalg import (
    HermitianEigen,
    InvalidInputError,
    Svd,
    adjoint,
    as_matrix,
    herm_eigen,
    multiply,
    operator_norm,
    spectral_radius,
    svd,
)
from .matjson import dumps_matrix, loads_matrix, read_matrix, write_matrix
from .pairs import (
    FunctionPair,
    GaugeFunction,
    builtin_custom_pairs,
    expm1_gauge,
    make_power_gauge,
    make_power_pair,
    parse_gauge_spec,
    parse_pair_spec,
)
from .polar import PolarFactors, abs_value, matrix_function, polar_decompose
from .radii import (
    RadiusEstimate,
    check_power_inequality,
    numerical_radius_ellipse2x2,
    numerical_radius_sampling,
    numerical_radius_sweep,
    offdiag_radius_sweep,
)
from .report import InequalityReport, Tolerances
from .transforms import TransformResult, aluthge_general, aluthge_t, block2x2, offdiag_embed

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "Evaluator",
    "ExperimentConfig",
    "ExperimentSummary",
    "FunctionPair",
    "GaugeFunction",
    "HermitianEigen",
    "InequalityReport",
    "InvalidInputError",
    "MatrixEnsemble",
    "PolarFactors",
    "RadiusEstimate",
    "Svd",
    "Tolerances",
    "TransformResult",
    "abs_value",
    "adjoint",
    "aluthge_general",
    "aluthge_t",
    "as_matrix",
    "block2x2",
    "builtin_custom_pairs",
    "check",
    "check_all",
    "check_power_inequality",
    "dumps_matrix",
    "expm1_gauge",
    "generate",
    "herm_eigen",
    "loads_matrix",
    "make_power_gauge",
    "make_power_pair",
    "matrix_function",
    "min_slack_search",
    "multiply",
    "numerical_radius_ellipse2x2",
    "numerical_radius_sampling",
    "numerical_radius_sweep",
    "offdiag_embed",
    "offdiag_radius_sweep",
    "operator_norm",
    "parse_gauge_spec",
    "parse_pair_spec",
    "polar_decompose",
    "read_matrix",
    "run",
    "spectral_radius",
    "summary_json_bytes",
    "svd",
    "write_matrix",
    "write_slack_csv",
    "write_summary",
]
