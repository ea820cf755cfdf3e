"""zetastrips: contour-traced strip decomposition of the zeta zero record.

The public surface is re-exported here; see README.md for a tour.
"""

from .backend import backend_name, select_backend
from .config import (
    EvalParams,
    RunConfig,
    config_from_sources,
    env_overrides,
    with_overrides,
)
from .errors import (
    BranchError,
    ConfigError,
    DegenerateError,
    DomainError,
    MissingPrimaryError,
    NearZeroError,
    NoCrossingError,
    PartitionError,
    PoleError,
    PrecisionError,
    ScanResolutionError,
    SeedError,
    StallError,
    ZetaError,
)
from .pipeline import CheckResult, RunSummary, run, validate
from .stats import (
    FitResult,
    HalvesReport,
    ScatterReport,
    SeriesRow,
    dispersion_compare,
    linfit,
    scatter_dispersion,
    series,
)
from .strips import (
    PrimaryScore,
    RoundedStrip,
    Strip,
    build_strips,
    primary_score,
    round_half_up,
    rounded_strip,
    strip_width,
)
from .tracing import (
    Aborted,
    ContourTrace,
    LeftBoundary,
    RightBoundary,
    ZeroHit,
    classify_zero_contour,
    crossing_at_sigma,
    seed_starts,
    trace_im_zero,
)
from .zetacore import (
    ComplexPoint,
    EvalResult,
    PhaseValue,
    asymptotic_im,
    eval_dirichlet,
    eval_zeta,
    eval_zeta_deriv,
    eval_zeta_with_deriv,
    functional_eq_residual,
    hardy_z,
    log_chi,
    phase,
    reflected_zeta,
    rs_theta,
    strip_asymptote,
)
from .zeros import (
    CountCheck,
    CriticalZero,
    count_zeros_rvm,
    find_critical_zeros,
    refine_zero,
    verify_count,
)

__version__ = "0.1.0"

__all__ = [
    "Aborted",
    "BranchError",
    "CheckResult",
    "ComplexPoint",
    "ConfigError",
    "ContourTrace",
    "CountCheck",
    "CriticalZero",
    "DegenerateError",
    "DomainError",
    "EvalParams",
    "EvalResult",
    "FitResult",
    "HalvesReport",
    "LeftBoundary",
    "MissingPrimaryError",
    "NearZeroError",
    "NoCrossingError",
    "PartitionError",
    "PhaseValue",
    "PoleError",
    "PrecisionError",
    "PrimaryScore",
    "RightBoundary",
    "RoundedStrip",
    "RunConfig",
    "RunSummary",
    "ScanResolutionError",
    "ScatterReport",
    "SeedError",
    "SeriesRow",
    "StallError",
    "Strip",
    "ZeroHit",
    "ZetaError",
    "asymptotic_im",
    "backend_name",
    "build_strips",
    "classify_zero_contour",
    "config_from_sources",
    "count_zeros_rvm",
    "crossing_at_sigma",
    "dispersion_compare",
    "env_overrides",
    "eval_dirichlet",
    "eval_zeta",
    "eval_zeta_deriv",
    "eval_zeta_with_deriv",
    "find_critical_zeros",
    "functional_eq_residual",
    "hardy_z",
    "linfit",
    "log_chi",
    "phase",
    "primary_score",
    "refine_zero",
    "reflected_zeta",
    "round_half_up",
    "rounded_strip",
    "rs_theta",
    "run",
    "scatter_dispersion",
    "seed_starts",
    "select_backend",
    "series",
    "strip_asymptote",
    "strip_width",
    "trace_im_zero",
    "validate",
    "verify_count",
    "with_overrides",
]
