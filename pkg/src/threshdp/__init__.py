"""Multilevel histogram thresholding via dynamic programming.

Two solvers over one precomputed region-score matrix: a fixed-count solver
returning the optimal n thresholds under Otsu, Kapur, or Kittler
objectives, and a free-count solver that discovers the threshold count
itself by minimizing a modified (overlapping-boundary) minimum-error
criterion. Plus quantization, quality metrics, PGM/CSV/JSON formats,
experiment harnesses, and a CLI.
"""

from ._backend import BACKEND, available as available_backends
from .fixed_n import FixedNTables, fixed_n_tables, solve_fixed_n, sweep_optimal_values
from .histogram import (
    GrayHistogram,
    IntervalStats,
    NormalizedHistogram,
    PrefixMoments,
    build_histogram,
    histogram_from_counts,
    interval_stats,
    normalize,
    prefix_moments,
)
from .met_dp import MetDpTables, backtrack, fill_tables, solve_free
from .metrics import QualityReport, mse, psnr, quality_report, ssim
from .objectives import (
    BoundaryMode,
    InfeasibleError,
    ObjectiveKind,
    ScoreMatrix,
    ThresholdSet,
    build_score_matrix,
    cumulative_plogp,
    evaluate_thresholds,
    global_mean,
    q_kapur,
    q_kittler,
    q_met,
    q_otsu,
)
from .quantize import QuantizedImage, Region, apply_thresholds

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundaryMode",
    "FixedNTables",
    "GrayHistogram",
    "InfeasibleError",
    "IntervalStats",
    "MetDpTables",
    "NormalizedHistogram",
    "ObjectiveKind",
    "PrefixMoments",
    "QualityReport",
    "QuantizedImage",
    "Region",
    "ScoreMatrix",
    "ThresholdSet",
    "apply_thresholds",
    "available_backends",
    "backtrack",
    "build_histogram",
    "build_score_matrix",
    "cumulative_plogp",
    "evaluate_thresholds",
    "fill_tables",
    "fixed_n_tables",
    "global_mean",
    "histogram_from_counts",
    "interval_stats",
    "mse",
    "normalize",
    "prefix_moments",
    "psnr",
    "q_kapur",
    "q_kittler",
    "q_met",
    "q_otsu",
    "quality_report",
    "solve_fixed_n",
    "solve_free",
    "ssim",
    "sweep_optimal_values",
    "__version__",
]
