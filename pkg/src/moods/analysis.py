"""Metric extraction and the report pipeline over a study dataset.

Weekly stress intensity is the mean 0-4 rating per participant-week;
population series aggregate either participant means (default, each
participant weighs equally) or pooled ratings. Weekly stress frequency
comes from survey values 1-4. Missing weeks stay missing.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .dataset import StudyDataset
from .stats import (
    LmmFit,
    TrendReport,
    bootstrap_band,
    entry_time_trend,
    fit_lmm,
    interrupted_time_series,
    mann_kendall,
    retention_curve,
)
from .stats.cohort import retention_at
from .stats.nonparam import InsufficientDataError

ACTION_WEEK_RANGE = (4, 11)


def weekly_intensity_by_participant(
    ds: StudyDataset, up_to_week: Optional[int] = None
) -> dict[str, dict[int, float]]:
    sums: dict[str, dict[int, list[int]]] = {}
    for row in ds.annotated_events(up_to_week=up_to_week):
        pid = row.annotation.participant_id
        sums.setdefault(pid, {}).setdefault(row.week_index, []).append(row.intensity)
    return {
        pid: {week: float(np.mean(vals)) for week, vals in weeks.items()}
        for pid, weeks in sums.items()
    }


def weekly_intensity_population(
    ds: StudyDataset,
    n_weeks: int,
    weighting: str = "participant_mean",
) -> list[Optional[float]]:
    """Cohort weekly mean intensity; ``weighting`` is participant_mean or pooled."""
    if weighting == "participant_mean":
        per = weekly_intensity_by_participant(ds)
        out: list[Optional[float]] = []
        for week in range(1, n_weeks + 1):
            vals = [weeks[week] for weeks in per.values() if week in weeks]
            out.append(float(np.mean(vals)) if vals else None)
        return out
    if weighting == "pooled":
        buckets: dict[int, list[int]] = {}
        for row in ds.annotated_events():
            buckets.setdefault(row.week_index, []).append(row.intensity)
        return [
            float(np.mean(buckets[w])) if buckets.get(w) else None
            for w in range(1, n_weeks + 1)
        ]
    raise ValueError(f"unknown weighting: {weighting}")


def weekly_frequency_population(ds: StudyDataset, n_weeks: int) -> list[Optional[float]]:
    buckets: dict[int, list[int]] = {}
    for s in ds.surveys_for():
        buckets.setdefault(s.week_index, []).append(s.frequency_value)
    return [
        float(np.mean(buckets[w])) if buckets.get(w) else None
        for w in range(1, n_weeks + 1)
    ]


def daily_intensity_by_participant(ds: StudyDataset) -> dict[str, list[tuple[int, float]]]:
    """Per participant: (0-based study day, mean intensity) for annotated days."""
    buckets: dict[str, dict[int, list[int]]] = {}
    for row in ds.annotated_events():
        pid = row.annotation.participant_id
        day = ds.clock(pid).day_index(row.event.start, row.event.tz_offset_min)
        buckets.setdefault(pid, {}).setdefault(day, []).append(row.intensity)
    return {
        pid: [(day, float(np.mean(vals))) for day, vals in sorted(days.items())]
        for pid, days in buckets.items()
    }


def _series_trend(series: list[Optional[float]], skip_weeks: int = 0) -> TrendReport:
    pairs = [
        (w, v)
        for w, v in enumerate(series, start=1)
        if v is not None and w > skip_weeks
    ]
    if len(pairs) < 3:
        raise InsufficientDataError("fewer than 3 weeks with data")
    x = [w - 1 for w, _ in pairs]  # week 1 sits at x = 0
    y = [v for _, v in pairs]
    return mann_kendall(y, x=x)


def intensity_trend(
    ds: StudyDataset,
    n_weeks: int,
    weighting: str = "participant_mean",
    skip_weeks: int = 0,
) -> TrendReport:
    return _series_trend(weekly_intensity_population(ds, n_weeks, weighting), skip_weeks)


def frequency_trend(ds: StudyDataset, n_weeks: int, skip_weeks: int = 0) -> TrendReport:
    return _series_trend(weekly_frequency_population(ds, n_weeks), skip_weeks)


def intensity_lmm(ds: StudyDataset, n_weeks: int) -> LmmFit:
    rows = []
    for pid, weeks in weekly_intensity_by_participant(ds).items():
        for week, value in sorted(weeks.items()):
            if week <= n_weeks:
                rows.append((pid, float(week), value))
    return fit_lmm(rows)


def frequency_lmm(ds: StudyDataset, n_weeks: int) -> LmmFit:
    rows = [
        (s.participant_id, float(s.week_index), float(s.frequency_value))
        for s in ds.surveys_for()
        if s.week_index <= n_weeks
    ]
    return fit_lmm(rows)


def its_report(ds: StudyDataset, window_days: int = 20):
    """ITS aligned on each participant's first reported action week."""
    lo, hi = ACTION_WEEK_RANGE
    action_weeks = {
        pid: w for pid, w in ds.action_weeks().items() if lo <= w <= hi
    }
    daily = daily_intensity_by_participant(ds)
    return interrupted_time_series(daily, action_weeks, window_days=window_days)


def intensity_band(
    ds: StudyDataset, n_weeks: int, n_resamples: int = 500, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Bootstrap 5-95 band around the weekly participant-mean intensity curve."""
    per = weekly_intensity_by_participant(ds)

    def curve(blobs):
        out = np.full(n_weeks, np.nan)
        for week in range(1, n_weeks + 1):
            vals = [b[week] for b in blobs if week in b]
            if vals:
                out[week - 1] = np.mean(vals)
        return out

    return bootstrap_band(per, curve, n_resamples=n_resamples, seed=seed)


def engagement_summary(ds: StudyDataset) -> dict:
    """Prompt/response/stressor rates over days with at least one prompt.

    Only visible annotations count, so the summary is identical whether
    private rows are present in storage or already removed.
    """
    prompt_days: set[tuple[str, int]] = set()
    for t in ds.tickets:
        event = ds.events.get(t.event_id)
        if event is None:
            continue
        day = ds.clock(t.participant_id).day_index(event.start, event.tz_offset_min)
        prompt_days.add((t.participant_id, day))
    n_prompt_days = len(prompt_days)
    n_prompts = len(ds.tickets)
    rows = ds.annotated_events()
    responses = [r for r in rows if not r.annotation.is_manual]
    stressors = [r for r in rows if r.annotation.stressor_text]
    return {
        "n_participants": len(ds.participants),
        "n_prompts": n_prompts,
        "n_responses": len(responses),
        "n_stressors": len(stressors),
        "prompts_per_day": n_prompts / n_prompt_days if n_prompt_days else 0.0,
        "responses_per_day": len(responses) / n_prompt_days if n_prompt_days else 0.0,
        "response_fraction": len(responses) / n_prompts if n_prompts else 0.0,
        "stressors_per_day": len(stressors) / n_prompt_days if n_prompt_days else 0.0,
    }


def retention_report(ds: StudyDataset) -> dict:
    days = list(ds.days_active().values())
    curve = retention_curve(days)
    return {
        "n_participants": len(days),
        "day30_rate": retention_at(days, 30),
        "curve": [[int(d), f] for d, f in curve],
    }


def entry_time_report(ds: StudyDataset) -> TrendReport:
    durations = ds.entry_durations()
    if not durations:
        raise InsufficientDataError("no entry durations recorded")
    return entry_time_trend(list(durations.values()))


def trends_report(ds: StudyDataset, n_weeks: int, weighting: str = "participant_mean") -> dict:
    """The document served by the trends endpoint and CLI."""
    report: dict = {"n_weeks": n_weeks, "weighting": weighting}
    intensity_series = weekly_intensity_population(ds, n_weeks, weighting)
    frequency_series = weekly_frequency_population(ds, n_weeks)
    report["intensity"] = {
        "series": intensity_series,
        "trend": _series_trend(intensity_series).to_record(),
    }
    report["frequency"] = {
        "series": frequency_series,
        "trend": _series_trend(frequency_series).to_record(),
    }
    return report


def full_report(ds: StudyDataset, n_weeks: int, bootstrap_resamples: int = 300) -> dict:
    """End-to-end analysis document produced by the study replay."""
    report = trends_report(ds, n_weeks)
    report["engagement"] = engagement_summary(ds)
    report["retention"] = retention_report(ds)
    try:
        report["lmm_intensity"] = intensity_lmm(ds, n_weeks).to_record()
    except InsufficientDataError as exc:
        report["lmm_intensity"] = {"error": str(exc)}
    try:
        report["lmm_frequency"] = frequency_lmm(ds, n_weeks).to_record()
    except InsufficientDataError as exc:
        report["lmm_frequency"] = {"error": str(exc)}
    try:
        report["its"] = its_report(ds).to_record()
    except InsufficientDataError as exc:
        report["its"] = {"error": str(exc)}
    try:
        report["entry_time"] = entry_time_report(ds).to_record()
    except InsufficientDataError as exc:
        report["entry_time"] = {"error": str(exc)}
    lo, hi = intensity_band(ds, n_weeks, n_resamples=bootstrap_resamples)
    report["intensity_band"] = {
        "lower": [None if math.isnan(v) else float(v) for v in lo],
        "upper": [None if math.isnan(v) else float(v) for v in hi],
    }
    return report
