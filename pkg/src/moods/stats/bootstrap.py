"""Bootstrap envelopes for population-level weekly curves.

Resampling is over participants (with replacement), not observations; each
resample refits the population curve and the band is the pointwise
percentile envelope. Every resample draws from its own seed substream so
results do not depend on evaluation order.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

import numpy as np

from .nonparam import InsufficientDataError


def bootstrap_band(
    cohort: Mapping[str, object],
    fit: Callable[[Sequence[object]], np.ndarray],
    n_resamples: int = 1000,
    seed: int = 0,
    lower_pct: float = 5.0,
    upper_pct: float = 95.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise (lower, upper) percentile band for ``fit`` over the cohort.

    ``fit`` maps a list of participant data blobs to a fixed-length curve.
    """
    if not cohort:
        raise InsufficientDataError("empty cohort")
    if not 0 <= lower_pct < upper_pct <= 100:
        raise ValueError("percentiles must satisfy 0 <= lower < upper <= 100")
    pids = sorted(cohort)
    data = [cohort[pid] for pid in pids]
    base = np.asarray(fit(data), dtype=float)
    curves = np.empty((n_resamples, base.size))
    seeds = np.random.SeedSequence(seed).spawn(n_resamples)
    for b in range(n_resamples):
        rng = np.random.default_rng(seeds[b])
        idx = rng.integers(0, len(data), size=len(data))
        curves[b] = np.asarray(fit([data[i] for i in idx]), dtype=float)
    lower = np.percentile(curves, lower_pct, axis=0)
    upper = np.percentile(curves, upper_pct, axis=0)
    return lower, upper
