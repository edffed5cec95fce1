"""The 14-week introduction schedule for the 16 chart kinds.

Week w delivers every chart introduced in weeks <= w, each built over all
cumulative data; weeks beyond 14 keep the full set.
"""

from __future__ import annotations

BUNDLE_SCHEDULE: dict[int, tuple[str, ...]] = {
    1: ("overall_summary", "prominent_stressor_context"),
    2: ("map_view",),
    3: ("stressor_prevalence",),
    4: ("location_prominence",),
    5: ("calendar_view",),
    6: ("stressor_ranking",),
    7: ("weekly_trend",),
    8: ("weekly_prevalence",),
    9: ("time_of_day_trend",),
    10: ("location_trend",),
    11: ("day_of_week",),
    12: ("duration_distribution",),
    13: ("prevalent_duration",),
    14: ("word_cloud_stressors", "word_cloud_locations"),
}

CHART_IDS: tuple[str, ...] = tuple(
    cid for week in sorted(BUNDLE_SCHEDULE) for cid in BUNDLE_SCHEDULE[week]
)

FINAL_WEEK = max(BUNDLE_SCHEDULE)


def charts_for_week(week_index: int) -> tuple[str, ...]:
    """Cumulative chart set delivered at the given week (>= 1)."""
    if week_index < 1:
        raise ValueError("week_index must be >= 1")
    effective = min(week_index, FINAL_WEEK)
    return tuple(
        cid
        for week in sorted(BUNDLE_SCHEDULE)
        if week <= effective
        for cid in BUNDLE_SCHEDULE[week]
    )
