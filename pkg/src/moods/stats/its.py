"""Interrupted time series around self-initiated behavior change.

Participants are aligned on their action week. Daily stress intensities are
z-scored per participant over their whole study, the action week itself is
dropped, and up to 20 annotation days on each side are indexed -20..-1 and
+1..+20. A pooled segmented regression

    z = a + b * day + c * post + d * (day * post)

estimates the pre slope (b), post slope (b + d), and the level change at the
interruption (c) with an OLS t-test p-value. The counterfactual line extends
the pre-action fit across the post window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import t as student_t

from .nonparam import InsufficientDataError

WINDOW_DAYS = 20


@dataclass(frozen=True)
class ItsReport:
    pre_slope: float
    post_slope: float
    level_change: float
    p_value: float
    n_participants: int
    n_pre_days: int
    n_post_days: int
    window_days: int
    intercept: float
    counterfactual: tuple[tuple[float, float], ...]

    def to_record(self) -> dict:
        return {
            "pre_slope": self.pre_slope,
            "post_slope": self.post_slope,
            "level_change": self.level_change,
            "p_value": self.p_value,
            "n_participants": self.n_participants,
            "n_pre_days": self.n_pre_days,
            "n_post_days": self.n_post_days,
            "window_days": self.window_days,
            "intercept": self.intercept,
            "counterfactual": [list(pt) for pt in self.counterfactual],
        }


def zscore(values: Sequence[float]) -> tuple[np.ndarray, bool]:
    """(x - mean) / sd; a zero-sd series maps to zeros with a degenerate flag."""
    x = np.asarray(values, dtype=float)
    sd = x.std(ddof=0)
    if sd == 0.0:
        return np.zeros_like(x), True
    return (x - x.mean()) / sd, False


def zscore_per_participant(
    daily: Mapping[str, Sequence[tuple[int, float]]],
) -> dict[str, list[tuple[int, float]]]:
    """Normalize each participant's (day, intensity) series over the whole study."""
    out: dict[str, list[tuple[int, float]]] = {}
    for pid, series in daily.items():
        days = [d for d, _ in series]
        z, _ = zscore([v for _, v in series])
        out[pid] = list(zip(days, z.tolist()))
    return out


def interrupted_time_series(
    daily: Mapping[str, Sequence[tuple[int, float]]],
    action_week: Mapping[str, int],
    window_days: int = WINDOW_DAYS,
) -> ItsReport:
    """Segmented regression on pooled z-scored daily intensities.

    ``daily`` maps participant -> ordered (study_day, mean intensity) pairs
    with study days 0-based; ``action_week`` gives each participant's
    1-based action week. Participants lacking a pre-action or post-action
    week of data are dropped; the action week's days are excluded.
    """
    xs: list[float] = []
    zs: list[float] = []
    post: list[float] = []
    n_pre = n_post = 0
    used = 0
    for pid, series in sorted(daily.items()):
        if pid not in action_week:
            continue
        week = int(action_week[pid])
        days = np.array([d for d, _ in series], dtype=int)
        values = np.array([v for _, v in series], dtype=float)
        z, degenerate = zscore(values)
        if degenerate:
            continue
        week_of_day = days // 7 + 1
        pre_mask = week_of_day < week
        post_mask = week_of_day > week
        if not pre_mask.any() or not post_mask.any():
            continue
        used += 1
        pre_idx = np.flatnonzero(pre_mask)[-window_days:]
        post_idx = np.flatnonzero(post_mask)[:window_days]
        # most recent pre annotation day sits at -1, first post day at +1
        for offset, idx in enumerate(pre_idx):
            xs.append(float(offset - len(pre_idx)))
            zs.append(float(z[idx]))
            post.append(0.0)
        for offset, idx in enumerate(post_idx):
            xs.append(float(offset + 1))
            zs.append(float(z[idx]))
            post.append(1.0)
        n_pre += len(pre_idx)
        n_post += len(post_idx)
    if used == 0:
        raise InsufficientDataError("no participant has both pre- and post-action data")

    x = np.asarray(xs)
    p = np.asarray(post)
    y = np.asarray(zs)
    design = np.column_stack([np.ones_like(x), x, p, x * p])
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        raise InsufficientDataError("degenerate design (single-sided data)")
    resid = y - design @ coef
    dof = y.size - design.shape[1]
    if dof <= 0:
        raise InsufficientDataError("not enough days for inference")
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(design.T @ design)
    level_change = float(coef[2])
    se = float(np.sqrt(cov[2, 2]))
    tstat = level_change / se if se > 0 else 0.0
    p_value = float(2.0 * student_t.sf(abs(tstat), dof))

    post_days = sorted({int(v) for v, flag in zip(x, p) if flag == 1.0})
    counterfactual = tuple(
        (float(d), float(coef[0] + coef[1] * d)) for d in post_days
    )
    return ItsReport(
        pre_slope=float(coef[1]),
        post_slope=float(coef[1] + coef[3]),
        level_change=level_change,
        p_value=p_value,
        n_participants=used,
        n_pre_days=n_pre,
        n_post_days=n_post,
        window_days=window_days,
        intercept=float(coef[0]),
        counterfactual=counterfactual,
    )
