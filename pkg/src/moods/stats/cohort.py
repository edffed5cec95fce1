"""Cohort retention (survival) curves from last-active days."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .nonparam import InsufficientDataError


def retention_curve(days_active: Sequence[int]) -> list[tuple[int, float]]:
    """Survival step function from per-participant active-day counts.

    ``days_active[i]`` is the number of days participant i remained active
    (enrollment day counts as day 1). Returns (day, fraction active >= day)
    points: day 0 at 1.0 plus one point after each distinct dropout day.
    """
    if len(days_active) == 0:
        raise InsufficientDataError("no participants")
    da = np.asarray(days_active, dtype=int)
    n = da.size
    points = [(0, 1.0)]
    for d in np.unique(da):
        day = int(d) + 1
        points.append((day, float(np.sum(da >= day) / n)))
    return points


def retention_at(days_active: Sequence[int], day: int) -> float:
    """Fraction of participants active for at least ``day`` days."""
    da = np.asarray(days_active, dtype=int)
    if da.size == 0:
        raise InsufficientDataError("no participants")
    return float(np.sum(da >= day) / da.size)
