"""Statistical procedures used by the trend-analysis pipeline."""

from .trend import TrendReport, mann_kendall, theil_sen, entry_time_trend
from .nonparam import (
    mann_whitney_u,
    shapiro_wilk,
    wilcoxon_signed_rank,
    InsufficientDataError,
)
from .lmm import LmmFit, fit_lmm
from .its import ItsReport, interrupted_time_series, zscore_per_participant
from .bootstrap import bootstrap_band
from .cohort import retention_curve

__all__ = [
    "TrendReport",
    "mann_kendall",
    "theil_sen",
    "entry_time_trend",
    "mann_whitney_u",
    "wilcoxon_signed_rank",
    "shapiro_wilk",
    "InsufficientDataError",
    "LmmFit",
    "fit_lmm",
    "ItsReport",
    "interrupted_time_series",
    "zscore_per_participant",
    "bootstrap_band",
    "retention_curve",
]
