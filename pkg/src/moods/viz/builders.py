"""Builders for the 16 chart kinds.

All builders consume visible (non-private) annotated events cumulative
through the bundle week. Conventions shared across charts:

* "stressed duration" sums event minutes rated Probably stressed or
  Stressed; stressor charts slice the stressor-bearing subset of those
  events, bucketing a missing semantic location as "unspecified" so the
  prevalence / location / context charts conserve the same total.
* top-5 prominence (context, prevalence-style charts) ranks by stressed
  duration; top-5 frequency (duration charts, week 12-13) ranks by report
  count, mirroring how each chart is described to participants.
* quartiles use linear interpolation; densities use a Gaussian kernel with
  Silverman's bandwidth.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Optional, Sequence

import numpy as np

from ..dataset import AnnotatedEvent
from .spec import (
    ChartSpec,
    DEFAULT_PALETTE,
    SEQUENTIAL_PALETTE,
    TIME_BLOCKS,
    abbreviate,
    label_with_detail,
    time_block,
)

UNSPECIFIED_LOCATION = "unspecified"
WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")


def stressed_rows(rows: Sequence[AnnotatedEvent]) -> list[AnnotatedEvent]:
    """Stressor-bearing stressed-rated events: the conserved slice shared by
    the prevalence, location-prominence, and context charts."""
    return [r for r in rows if r.stressed_minutes > 0 and r.stressor]


def stressor_rows(rows: Sequence[AnnotatedEvent]) -> list[AnnotatedEvent]:
    """Every stressor-bearing annotation (any rating that required one)."""
    return [r for r in rows if r.stressor]


def location_of(row: AnnotatedEvent) -> str:
    return row.location or UNSPECIFIED_LOCATION


def _duration_by_stressor(rows: Sequence[AnnotatedEvent]) -> dict[str, float]:
    totals: dict[str, float] = defaultdict(float)
    for r in stressed_rows(rows):
        totals[r.stressor] += r.stressed_minutes
    return dict(totals)


def _count_by_stressor(rows: Sequence[AnnotatedEvent]) -> dict[str, int]:
    counts: dict[str, int] = defaultdict(int)
    for r in stressor_rows(rows):
        counts[r.stressor] += 1
    return dict(counts)


def top_stressors_by_duration(rows, n=5) -> list[str]:
    totals = _duration_by_stressor(rows)
    return [s for s, _ in sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))[:n]]


def top_stressors_by_count(rows, n=5) -> list[str]:
    counts = _count_by_stressor(rows)
    return [s for s, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:n]]


def _coverage_hours(rows: Sequence[AnnotatedEvent]) -> int:
    return len({(r.local_start.date(), r.local_start.hour) for r in rows})


def build_overall_summary(rows: Sequence[AnnotatedEvent], week_index: int) -> ChartSpec:
    """Four gauges: overall and current-week stress load and stressor counts."""
    hours_all = _coverage_hours(rows)
    week_rows = [r for r in rows if r.week_index == week_index]
    hours_week = _coverage_hours(week_rows)
    stressed_all = sum(r.stressed_minutes for r in rows)
    stressed_week = sum(r.stressed_minutes for r in week_rows)
    n_stressors = len(stressor_rows(rows))
    n_stressors_week = len(stressor_rows(week_rows))
    gauges = [
        {
            "label": "stressed minutes per hour (overall)",
            "value": round(stressed_all / hours_all, 3) if hours_all else 0.0,
            "no_data": hours_all == 0,
        },
        {
            "label": "stressed minutes per hour (this week)",
            "value": round(stressed_week / hours_week, 3) if hours_week else 0.0,
            "no_data": hours_week == 0,
        },
        {
            "label": "stressors per week (overall)",
            "value": round(n_stressors / week_index, 3),
            "no_data": n_stressors == 0,
        },
        {
            "label": "daily stressors (this week)",
            "value": round(n_stressors_week / 7.0, 3),
            "no_data": n_stressors_week == 0,
        },
    ]
    return ChartSpec(
        chart_id="overall_summary",
        week_index=week_index,
        title="Overall and recent stress summary",
        kind="gauges",
        series=[{"label": "summary", "points": gauges}],
        interactive=False,
    )


def build_prominent_stressor_context(rows, week_index: int) -> ChartSpec:
    """Three-ring hierarchy: top-5 stressors -> locations -> time blocks."""
    top5 = top_stressors_by_duration(rows, 5)
    base = [r for r in stressed_rows(rows) if r.stressor in top5]
    tree = []
    for stressor in top5:
        s_rows = [r for r in base if r.stressor == stressor]
        label, detail = label_with_detail(stressor)
        locations = []
        by_loc: dict[str, list[AnnotatedEvent]] = defaultdict(list)
        for r in s_rows:
            by_loc[location_of(r)].append(r)
        for loc in sorted(by_loc, key=lambda l: (-sum(r.stressed_minutes for r in by_loc[l]), l)):
            blocks: dict[str, float] = defaultdict(float)
            for r in by_loc[loc]:
                blocks[time_block(r.local_start.hour)] += r.stressed_minutes
            loc_label, loc_detail = label_with_detail(loc)
            locations.append(
                {
                    "label": loc_label,
                    "detail": loc_detail,
                    "value": round(sum(blocks.values()), 6),
                    "children": [
                        {"label": b, "value": round(blocks[b], 6)}
                        for b in TIME_BLOCKS
                        if b in blocks
                    ],
                }
            )
        tree.append(
            {
                "label": label,
                "detail": detail,
                "value": round(sum(r.stressed_minutes for r in s_rows), 6),
                "children": locations,
            }
        )
    return ChartSpec(
        chart_id="prominent_stressor_context",
        week_index=week_index,
        title="Context of the five most prominent stressors",
        kind="sunburst",
        series=[{"label": "stressors", "points": tree}],
        flags={"total_stressed_minutes": round(sum(n["value"] for n in tree), 6)},
    )


def build_map_view(rows, week_index: int) -> ChartSpec:
    """Stress report locations with stressor/day/time detail payloads."""
    pts = []
    locations_seen: dict[str, int] = {}
    new_this_week = set()
    for r in stressor_rows(rows):
        if r.annotation.gps is None:
            continue
        loc = location_of(r)
        locations_seen[loc] = min(locations_seen.get(loc, r.week_index), r.week_index)
        lat, lon = r.annotation.gps
        pts.append(
            {
                "x": lon,
                "y": lat,
                "label": abbreviate(loc),
                "detail": {
                    "stressor": r.stressor,
                    "location": loc,
                    "day": r.local_start.date().isoformat(),
                    "time": r.local_start.time().isoformat("minutes"),
                },
            }
        )
    for loc, first_week in locations_seen.items():
        if first_week == week_index:
            new_this_week.add(loc)
    pts.sort(key=lambda p: (p["detail"]["day"], p["detail"]["time"], p["x"], p["y"]))
    legend_items = [
        {"label": loc, "new_this_week": loc in new_this_week}
        for loc in sorted(locations_seen)
    ]
    return ChartSpec(
        chart_id="map_view",
        week_index=week_index,
        title="Where stress was reported",
        kind="map_points",
        series=[{"label": "reports", "points": pts}],
        legend={"items": legend_items},
        axes={"x": "longitude", "y": "latitude"},
    )


def _percentage_donut(chart_id, title, totals: dict[str, float], week_index: int) -> ChartSpec:
    grand = sum(totals.values())
    segments = []
    for name in sorted(totals, key=lambda n: (-totals[n], n)):
        label, detail = label_with_detail(name)
        pct = 100.0 * totals[name] / grand if grand else 0.0
        detail = dict(detail, stressed_minutes=round(totals[name], 6))
        segments.append({"label": label, "value": round(pct, 6), "detail": detail})
    return ChartSpec(
        chart_id=chart_id,
        week_index=week_index,
        title=title,
        kind="donut",
        series=[{"label": "share of stressed duration", "points": segments}],
        flags={"total_stressed_minutes": round(grand, 6), "no_data": grand == 0.0},
    )


def build_stressor_prevalence(rows, week_index: int) -> ChartSpec:
    return _percentage_donut(
        "stressor_prevalence",
        "Share of stressed time by stressor",
        _duration_by_stressor(rows),
        week_index,
    )


def build_location_prominence(rows, week_index: int) -> ChartSpec:
    totals: dict[str, float] = defaultdict(float)
    for r in stressed_rows(rows):
        totals[location_of(r)] += r.stressed_minutes
    return _percentage_donut(
        "location_prominence",
        "Share of stressed time by location",
        dict(totals),
        week_index,
    )


def build_calendar_view(rows, week_index: int) -> ChartSpec:
    """Weekday x hour grid; cell color carries the mean detector score."""
    cells: dict[tuple[int, int], list[AnnotatedEvent]] = defaultdict(list)
    for r in stressor_rows(rows):
        cells[(r.local_start.weekday(), r.local_start.hour)].append(r)
    points = []
    for (dow, hour) in sorted(cells):
        bucket = cells[(dow, hour)]
        dates = {r.local_start.date() for r in bucket}
        stressed = sum(r.stressed_minutes for r in bucket)
        points.append(
            {
                "x": hour,
                "y": WEEKDAYS[dow],
                "value": round(float(np.mean([r.event.score for r in bucket])), 3),
                "detail": {
                    "stressors": sorted({r.stressor for r in bucket}),
                    "mean_score": round(float(np.mean([r.event.score for r in bucket])), 3),
                    "avg_stressed_minutes": round(stressed / len(dates), 3),
                    "n_reports": len(bucket),
                },
            }
        )
    return ChartSpec(
        chart_id="calendar_view",
        week_index=week_index,
        title="When stressors occur",
        kind="calendar_heatmap",
        series=[{"label": "mean stress likelihood", "points": points}],
        axes={"x": "hour of day", "y": "day of week"},
        color_scale={"palette": SEQUENTIAL_PALETTE, "domain": [0, 100]},
    )


def build_stressor_ranking(rows, week_index: int, top_n: int = 5) -> ChartSpec:
    """Stressors ranked by mean detector score (not by self-rating)."""
    by_stressor: dict[str, list[float]] = defaultdict(list)
    for r in stressor_rows(rows):
        by_stressor[r.stressor].append(r.event.score)
    ranked = sorted(
        by_stressor.items(), key=lambda kv: (-float(np.mean(kv[1])), kv[0])
    )[:top_n]
    bars = []
    for stressor, scores in ranked:
        label, detail = label_with_detail(stressor)
        detail = dict(detail, n_reports=len(scores))
        bars.append({"label": label, "value": round(float(np.mean(scores)), 3),
                     "detail": detail})
    return ChartSpec(
        chart_id="stressor_ranking",
        week_index=week_index,
        title="Stressors with the highest stress likelihood",
        kind="bars",
        series=[{"label": "mean stress likelihood", "points": bars}],
        axes={"x": "stressor", "y": "mean score (0-100)"},
    )


def _weekly_counts(rows) -> dict[str, dict[int, int]]:
    counts: dict[str, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for r in stressor_rows(rows):
        counts[r.stressor][r.week_index] += 1
    return counts


def _stressor_series(rows, week_index, value_of) -> list[dict]:
    """One series per stressor ordered by total count; toggleable legend."""
    counts = _weekly_counts(rows)
    order = sorted(counts, key=lambda s: (-sum(counts[s].values()), s))
    series = []
    for stressor in order:
        label, detail = label_with_detail(stressor)
        points = [
            value_of(week, counts[stressor].get(week, 0))
            for week in range(1, week_index + 1)
        ]
        series.append({"label": label, "detail": detail,
                       "points": [p for p in points if p is not None]})
    return series


def build_weekly_trend(rows, week_index: int) -> ChartSpec:
    series = _stressor_series(
        rows, week_index, lambda week, count: {"x": week, "y": count}
    )
    return ChartSpec(
        chart_id="weekly_trend",
        week_index=week_index,
        title="Stressor reports per week",
        kind="lines",
        series=series,
        axes={"x": "week", "y": "reports"},
        legend={"toggleable": True},
    )


def build_weekly_prevalence(rows, week_index: int) -> ChartSpec:
    series = _stressor_series(
        rows,
        week_index,
        lambda week, count: {"x": week, "size": count, "detail": {"week": week, "count": count}}
        if count
        else None,
    )
    return ChartSpec(
        chart_id="weekly_prevalence",
        week_index=week_index,
        title="Relative weekly prevalence of stressors",
        kind="bubbles",
        series=series,
        axes={"x": "week", "y": "stressor", "size": "reports"},
        legend={"toggleable": True},
    )


def _category_week_scatter(chart_id, title, rows, week_index, category_of, y_label) -> ChartSpec:
    buckets: dict[str, dict[tuple[int, str], int]] = defaultdict(lambda: defaultdict(int))
    for r in stressor_rows(rows):
        buckets[r.stressor][(r.week_index, category_of(r))] += 1
    order = sorted(buckets, key=lambda s: (-sum(buckets[s].values()), s))
    series = []
    for stressor in order:
        label, detail = label_with_detail(stressor)
        pts = [
            {"x": week, "y": cat, "size": count,
             "detail": {"week": week, y_label: cat, "count": count}}
            for (week, cat), count in sorted(buckets[stressor].items())
        ]
        series.append({"label": label, "detail": detail, "points": pts})
    return ChartSpec(
        chart_id=chart_id,
        week_index=week_index,
        title=title,
        kind="scatter",
        series=series,
        axes={"x": "week", "y": y_label},
        legend={"toggleable": True},
    )


def build_time_of_day_trend(rows, week_index: int) -> ChartSpec:
    return _category_week_scatter(
        "time_of_day_trend",
        "Time of day when stressors occur",
        rows,
        week_index,
        lambda r: time_block(r.local_start.hour),
        "time_block",
    )


def build_location_trend(rows, week_index: int) -> ChartSpec:
    return _category_week_scatter(
        "location_trend",
        "Where stressors occur over time",
        rows,
        week_index,
        location_of,
        "location",
    )


def build_day_of_week(rows, week_index: int) -> ChartSpec:
    buckets: dict[str, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for r in stressor_rows(rows):
        buckets[r.stressor][r.local_start.weekday()] += 1
    order = sorted(buckets, key=lambda s: (-sum(buckets[s].values()), s))
    series = []
    for stressor in order:
        label, detail = label_with_detail(stressor)
        pts = [
            {"x": WEEKDAYS[dow], "y": count, "detail": {"count": count}}
            for dow, count in sorted(buckets[stressor].items())
        ]
        series.append({"label": label, "detail": detail, "points": pts})
    return ChartSpec(
        chart_id="day_of_week",
        week_index=week_index,
        title="Stressor reports by day of week",
        kind="grouped_bars",
        series=series,
        axes={"x": "day of week", "y": "reports"},
        legend={"toggleable": True},
    )


def silverman_bandwidth(values: np.ndarray) -> float:
    n = values.size
    sd = float(values.std(ddof=1)) if n > 1 else 0.0
    iqr = float(np.percentile(values, 75) - np.percentile(values, 25))
    spread = min(sd, iqr / 1.34) if iqr > 0 and sd > 0 else max(sd, iqr / 1.34)
    h = 0.9 * spread * n ** (-0.2) if spread > 0 else 0.0
    if h <= 0:  # degenerate sample: single bump of fixed width
        h = max(1.0, 0.1 * abs(float(np.median(values))))
    return h


def gaussian_kde_curve(values: np.ndarray, n_grid: int = 128) -> tuple[np.ndarray, np.ndarray]:
    h = silverman_bandwidth(values)
    grid = np.linspace(values.min() - 4 * h, values.max() + 4 * h, n_grid)
    z = (grid[:, None] - values[None, :]) / h
    density = np.exp(-0.5 * z * z).sum(axis=1) / (values.size * h * math.sqrt(2 * math.pi))
    return grid, density


def build_duration_distribution(rows, week_index: int) -> ChartSpec:
    """Violin-style summaries for the five most frequently reported stressors."""
    top5 = top_stressors_by_count(rows, 5)
    series = []
    for stressor in top5:
        durations = np.array(
            [r.event.duration_min for r in stressor_rows(rows) if r.stressor == stressor]
        )
        q1, med, q3 = (float(np.percentile(durations, p)) for p in (25, 50, 75))
        iqr = q3 - q1
        lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
        inside = durations[(durations >= lo_fence) & (durations <= hi_fence)]
        grid, density = gaussian_kde_curve(durations)
        label, detail = label_with_detail(stressor)
        series.append(
            {
                "label": label,
                "detail": dict(detail, n_reports=int(durations.size)),
                "box": {
                    "q1": round(q1, 6),
                    "median": round(med, 6),
                    "q3": round(q3, 6),
                    "whisker_low": round(float(inside.min()), 6),
                    "whisker_high": round(float(inside.max()), 6),
                },
                "density": {
                    "x": [round(float(v), 6) for v in grid],
                    "y": [round(float(v), 9) for v in density],
                },
            }
        )
    return ChartSpec(
        chart_id="duration_distribution",
        week_index=week_index,
        title="How long episodes last, by stressor",
        kind="violin",
        series=series,
        axes={"x": "stressor", "y": "duration (minutes)"},
    )


def build_prevalent_duration(rows, week_index: int) -> ChartSpec:
    """Average episode duration per week for the top five reported stressors."""
    top5 = top_stressors_by_count(rows, 5)
    series = []
    for stressor in top5:
        label, detail = label_with_detail(stressor)
        by_week: dict[int, list[float]] = defaultdict(list)
        for r in stressor_rows(rows):
            if r.stressor == stressor:
                by_week[r.week_index].append(r.event.duration_min)
        pts = [
            {
                "x": week,
                "y": round(float(np.mean(by_week[week])), 3),
                "current_week": week == week_index,
            }
            for week in sorted(by_week)
        ]
        series.append({"label": label, "detail": detail, "points": pts})
    return ChartSpec(
        chart_id="prevalent_duration",
        week_index=week_index,
        title="Average episode duration per week (top stressors)",
        kind="bars_by_week",
        series=series,
        axes={"x": "week", "y": "average duration (minutes)"},
        flags={"current_week": week_index},
    )


def _word_cloud(chart_id, title, weights: dict[str, int], week_index: int) -> ChartSpec:
    words = [
        {"label": text, "weight": count}
        for text, count in sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
    return ChartSpec(
        chart_id=chart_id,
        week_index=week_index,
        title=title,
        kind="word_cloud",
        series=[{"label": "words", "points": words}],
        interactive=False,
    )


def build_word_cloud_stressors(rows, week_index: int) -> ChartSpec:
    return _word_cloud(
        "word_cloud_stressors",
        "Stressors by frequency",
        _count_by_stressor(rows),
        week_index,
    )


def build_word_cloud_locations(rows, week_index: int) -> ChartSpec:
    counts: dict[str, int] = defaultdict(int)
    for r in stressor_rows(rows):
        counts[location_of(r)] += 1
    return _word_cloud(
        "word_cloud_locations",
        "Locations reported with stressors",
        dict(counts),
        week_index,
    )


BUILDERS = {
    "overall_summary": build_overall_summary,
    "prominent_stressor_context": build_prominent_stressor_context,
    "map_view": build_map_view,
    "stressor_prevalence": build_stressor_prevalence,
    "location_prominence": build_location_prominence,
    "calendar_view": build_calendar_view,
    "stressor_ranking": build_stressor_ranking,
    "weekly_trend": build_weekly_trend,
    "weekly_prevalence": build_weekly_prevalence,
    "time_of_day_trend": build_time_of_day_trend,
    "location_trend": build_location_trend,
    "day_of_week": build_day_of_week,
    "duration_distribution": build_duration_distribution,
    "prevalent_duration": build_prevalent_duration,
    "word_cloud_stressors": build_word_cloud_stressors,
    "word_cloud_locations": build_word_cloud_locations,
}
