"""Weekly reflection surveys: Sunday-morning scheduling and storage.

A survey instance opens once a study week has completed and stays open for
48 hours past its due time; late submissions are flagged (and stored by
default) rather than dropped. Missing surveys are never imputed.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    FREQUENCY_CHOICES,
    StudyClock,
    ValidationError,
    VIZ_IMPACT_OPTIONS,
    WeeklySurvey,
    epoch_to_local,
    local_to_epoch,
)

OPEN_WINDOW_S = 48 * 3600
DUE_HOUR_LOCAL = 8  # Sunday 08:00 local


class SurveyConflictError(ValueError):
    """Raised when a week's survey instance already exists."""


@dataclass
class SurveyInstance:
    participant_id: str
    week_index: int
    opened_at: int
    due_at: int
    closes_at: int
    frequency_options: tuple = FREQUENCY_CHOICES
    impact_options: tuple = VIZ_IMPACT_OPTIONS
    recall_scale: tuple = (1, 5)

    def to_record(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "week_index": self.week_index,
            "opened_at": self.opened_at,
            "due_at": self.due_at,
            "closes_at": self.closes_at,
            "frequency_options": list(self.frequency_options),
            "impact_options": list(self.impact_options),
            "recall_scale": list(self.recall_scale),
        }


def next_sunday_morning(after: _dt.date, tz_offset_min: int) -> int:
    """Epoch seconds of the first local Sunday 08:00 on/after the given date."""
    days_ahead = (6 - after.weekday()) % 7  # Monday=0 ... Sunday=6
    sunday = after + _dt.timedelta(days=days_ahead)
    local = _dt.datetime.combine(sunday, _dt.time(DUE_HOUR_LOCAL, 0))
    return local_to_epoch(local, tz_offset_min)


class SurveyEngine:
    """Opens at most one survey instance per participant-week."""

    def __init__(self, store_late: bool = True):
        self.store_late = store_late
        self.instances: dict[tuple[str, int], SurveyInstance] = {}
        self.responses: dict[tuple[str, int], WeeklySurvey] = {}

    def open_survey(
        self,
        participant_id: str,
        week_index: int,
        clock: StudyClock,
        now: int,
        tz_offset_min: int = 0,
    ) -> SurveyInstance:
        """Create the week's instance once that study week has completed."""
        if week_index < 1:
            raise ValidationError("week_index must be >= 1")
        key = (participant_id, week_index)
        if key in self.instances:
            raise SurveyConflictError(f"survey for week {week_index} already exists")
        week_end_day = clock.enrollment_day + _dt.timedelta(days=7 * week_index)
        week_end_ts = local_to_epoch(
            _dt.datetime.combine(week_end_day, _dt.time(0, 0)), tz_offset_min
        )
        if now < week_end_ts:
            raise ValidationError(
                f"week {week_index} has not completed for {participant_id}"
            )
        due_at = next_sunday_morning(week_end_day, tz_offset_min)
        instance = SurveyInstance(
            participant_id=participant_id,
            week_index=week_index,
            opened_at=now,
            due_at=due_at,
            closes_at=due_at + OPEN_WINDOW_S,
        )
        self.instances[key] = instance
        return instance

    def submit_survey(self, instance: SurveyInstance, survey: WeeklySurvey, now: int) -> WeeklySurvey:
        """Store a response; submissions past the window are flagged late."""
        if (
            survey.participant_id != instance.participant_id
            or survey.week_index != instance.week_index
        ):
            raise ValidationError("survey does not match the open instance")
        key = (instance.participant_id, instance.week_index)
        if key in self.responses:
            raise SurveyConflictError(
                f"survey for week {instance.week_index} already submitted"
            )
        late = now > instance.closes_at
        if late and not self.store_late:
            raise ValidationError("survey window closed")
        stored = WeeklySurvey(
            participant_id=survey.participant_id,
            week_index=survey.week_index,
            frequency_choice=survey.frequency_choice,
            recall_ease=survey.recall_ease,
            viz_impacts=survey.viz_impacts,
            submitted_at=now,
            late=late,
        )
        self.responses[key] = stored
        return stored

    def responses_for(self, participant_id: str) -> list[WeeklySurvey]:
        return sorted(
            (s for (pid, _), s in self.responses.items() if pid == participant_id),
            key=lambda s: s.week_index,
        )


def weekly_frequency_means(surveys: list[WeeklySurvey], n_weeks: int) -> list[Optional[float]]:
    """Cohort mean frequency value per week; weeks without responses are None.

    Missing surveys are absent, never zero-filled.
    """
    buckets: dict[int, list[int]] = {}
    for s in surveys:
        buckets.setdefault(s.week_index, []).append(s.frequency_value)
    return [
        (sum(buckets[w]) / len(buckets[w])) if buckets.get(w) else None
        for w in range(1, n_weeks + 1)
    ]
