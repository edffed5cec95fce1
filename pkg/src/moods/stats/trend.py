"""Mann-Kendall trend test and Theil-Sen robust slope.

The MK statistic is S = sum over ordered pairs i < j of sign(y_j - y_i).
Its variance under the null uses the standard tie correction

    Var(S) = [ n(n-1)(2n+5) - sum_k t_k (t_k - 1)(2 t_k + 5) ] / 18

over tie groups of size t_k, and Z applies a +/-1 continuity correction.
The slope/intercept attached to the report come from the Theil-Sen
estimator with the convention b = median(y) - m * median(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import norm

from .nonparam import InsufficientDataError


@dataclass(frozen=True)
class TrendReport:
    """Slope/intercept plus the MK test statistics for one series."""

    slope: float
    intercept: float
    s_statistic: int
    var_s: float
    z: float
    p_value: float
    n: int

    def to_record(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "s_statistic": self.s_statistic,
            "var_s": self.var_s,
            "z": self.z,
            "p_value": self.p_value,
            "n": self.n,
        }


def theil_sen(y: Sequence[float], x: Optional[Sequence[float]] = None) -> tuple[float, float]:
    """Median-of-pairwise-slopes estimator.

    ``x`` defaults to 0..n-1. Pairs sharing an x value are skipped.
    Returns (m, b) with b = median(y) - m * median(x).
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 2:
        raise InsufficientDataError("theil_sen needs at least 2 points")
    x = np.arange(n, dtype=float) if x is None else np.asarray(x, dtype=float)
    if x.size != n:
        raise ValueError("x and y lengths differ")
    i, j = np.triu_indices(n, k=1)
    dx = x[j] - x[i]
    keep = dx != 0
    if not np.any(keep):
        raise InsufficientDataError("all x values identical")
    slopes = (y[j] - y[i])[keep] / dx[keep]
    m = float(np.median(slopes))
    b = float(np.median(y) - m * np.median(x))
    return m, b


def _mk_s_and_var(y: np.ndarray) -> tuple[int, float]:
    n = y.size
    diff = np.sign(y[None, :] - y[:, None])
    s = int(np.triu(diff, k=1).sum())
    _, counts = np.unique(y, return_counts=True)
    ties = counts[counts > 1]
    var_s = (n * (n - 1) * (2 * n + 5) - np.sum(ties * (ties - 1) * (2 * ties + 5))) / 18.0
    return s, float(var_s)


def mann_kendall(y: Sequence[float], x: Optional[Sequence[float]] = None) -> TrendReport:
    """Two-sided MK trend test over an ordered series (n >= 3)."""
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        raise InsufficientDataError(f"mann_kendall needs n >= 3, got {y.size}")
    s, var_s = _mk_s_and_var(y)
    if s == 0 or var_s <= 0:
        z = 0.0
    elif s > 0:
        z = (s - 1) / np.sqrt(var_s)
    else:
        z = (s + 1) / np.sqrt(var_s)
    # |S| = 1 collapses to Z = 0 under the continuity correction.
    z = float(z)
    p = float(2.0 * norm.sf(abs(z)))
    m, b = theil_sen(y, x)
    return TrendReport(
        slope=m, intercept=b, s_statistic=s, var_s=var_s, z=z, p_value=min(p, 1.0), n=int(y.size)
    )


def entry_time_trend(
    durations: Sequence[Sequence[float]] | Sequence[float],
    max_episodes: Optional[int] = 60,
) -> TrendReport:
    """Trend of stressor entry time over episode index.

    Accepts either a single ordered series of entry durations (seconds) or a
    list of per-participant series; per-participant series are aligned by
    episode index and averaged across participants before testing.
    ``max_episodes`` restricts the fit to the well-populated head of the
    learning curve (the long tail is sparse and floor-bound).
    """
    if len(durations) == 0:
        raise InsufficientDataError("no entry durations")
    first = durations[0]
    if np.isscalar(first) or isinstance(first, (int, float)):
        series = np.asarray(durations, dtype=float)
    else:
        max_len = max(len(d) for d in durations)
        sums = np.zeros(max_len)
        counts = np.zeros(max_len)
        for d in durations:
            d = np.asarray(d, dtype=float)
            sums[: d.size] += d
            counts[: d.size] += 1
        series = sums / np.maximum(counts, 1)
        series = series[counts > 0]
    if max_episodes is not None:
        series = series[:max_episodes]
    return mann_kendall(series)
