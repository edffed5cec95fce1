"""Core domain vocabulary: events, ratings, annotations, surveys, study clock.

Everything here is a plain value type. Timestamps are integer epoch seconds
(UTC); per-event ``tz_offset_min`` carries the participant's wall-clock offset
so calendar-style bucketing can be done in local time.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field, replace
from enum import IntEnum
from typing import Iterable, Optional, Sequence


class ValidationError(ValueError):
    """Raised when a record or request violates a domain invariant."""


class StressRatingLevel(IntEnum):
    """Five-level momentary stress rating; numeric value is the intensity 0..4."""

    NOT_STRESSED = 0
    PROBABLY_NOT_STRESSED = 1
    UNSURE = 2
    PROBABLY_STRESSED = 3
    STRESSED = 4

    @property
    def label(self) -> str:
        return _RATING_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "StressRatingLevel":
        key = label.strip().casefold()
        for level, text in _RATING_LABELS.items():
            if text.casefold() == key:
                return level
        raise ValidationError(f"unknown stress rating label: {label!r}")


_RATING_LABELS = {
    StressRatingLevel.NOT_STRESSED: "Not stressed",
    StressRatingLevel.PROBABLY_NOT_STRESSED: "Probably not stressed",
    StressRatingLevel.UNSURE: "Unsure",
    StressRatingLevel.PROBABLY_STRESSED: "Probably stressed",
    StressRatingLevel.STRESSED: "Stressed",
}

#: Weekly "times stressed per day" survey choices, in increasing order.
FREQUENCY_CHOICES = (
    "At most once",
    "More than once but at most twice",
    "More than twice but at most three times",
    "Four or more times",
)

_FREQUENCY_VALUES = {c.casefold(): i + 1 for i, c in enumerate(FREQUENCY_CHOICES)}

#: Options for the weekly "what impact did the most recent visualizations
#: have on you?" multi-select.
VIZ_IMPACT_OPTIONS = (
    "awareness of stress patterns",
    "contextual understanding of stressors",
    "motivated to reduce stress",
    "took specific action",
    "saw reduction from behavior change",
    "reinforced benefit of behavior change",
    "none",
)


def rating_to_intensity(rating: StressRatingLevel) -> int:
    """Map a rating to its 0..4 intensity value."""
    return int(StressRatingLevel(rating))


def frequency_to_value(choice: str) -> int:
    """Map a weekly frequency choice to its 1..4 value (order-preserving)."""
    try:
        return _FREQUENCY_VALUES[choice.strip().casefold()]
    except KeyError:
        raise ValidationError(f"unknown frequency choice: {choice!r}") from None


def requires_stressor(rating: StressRatingLevel) -> bool:
    """True when the rating obliges a stressor/location follow-up."""
    return StressRatingLevel(rating) >= StressRatingLevel.UNSURE


def is_stressed_rating(rating: StressRatingLevel) -> bool:
    """True for ratings counted toward stressed-duration totals.

    Convention: only Probably stressed / Stressed minutes count as
    "stressed"; Unsure prompts for a stressor but is excluded from
    stressed-minute aggregates.
    """
    return StressRatingLevel(rating) >= StressRatingLevel.PROBABLY_STRESSED


@dataclass(frozen=True)
class PhysiologicalEvent:
    """A detected arousal episode with a 0-100 stress-likelihood score."""

    event_id: str
    participant_id: str
    start: int
    end: int
    score: float
    tz_offset_min: int = 0

    def __post_init__(self):
        if self.end <= self.start:
            raise ValidationError(
                f"event {self.event_id}: end ({self.end}) must be after start ({self.start})"
            )
        if not 0.0 <= self.score <= 100.0:
            raise ValidationError(
                f"event {self.event_id}: score {self.score} outside [0, 100]"
            )

    @property
    def duration_min(self) -> float:
        return (self.end - self.start) / 60.0

    def local_start(self) -> _dt.datetime:
        return epoch_to_local(self.start, self.tz_offset_min)

    def to_record(self) -> dict:
        return {
            "event_id": self.event_id,
            "participant_id": self.participant_id,
            "start": self.start,
            "end": self.end,
            "score": self.score,
            "tz_offset_min": self.tz_offset_min,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "PhysiologicalEvent":
        return cls(
            event_id=rec["event_id"],
            participant_id=rec["participant_id"],
            start=int(rec["start"]),
            end=int(rec["end"]),
            score=float(rec["score"]),
            tz_offset_min=int(rec.get("tz_offset_min", 0)),
        )


@dataclass(frozen=True)
class StressAnnotation:
    """Participant response to a prompted (or manually reported) event."""

    event_id: str
    participant_id: str
    rating: StressRatingLevel
    stressor_text: Optional[str] = None
    semantic_location: Optional[str] = None
    gps: Optional[tuple[float, float]] = None
    is_private: bool = False
    is_manual: bool = False
    created_at: int = 0
    edited_at: Optional[int] = None
    entry_duration_s: Optional[float] = None

    def __post_init__(self):
        if self.edited_at is not None and self.edited_at < self.created_at:
            raise ValidationError("edited_at precedes created_at")
        if self.entry_duration_s is not None and self.entry_duration_s < 0:
            raise ValidationError("entry duration must be nonnegative")

    def with_changes(self, **kw) -> "StressAnnotation":
        return replace(self, **kw)

    def to_record(self) -> dict:
        return {
            "event_id": self.event_id,
            "participant_id": self.participant_id,
            "rating": int(self.rating),
            "stressor_text": self.stressor_text,
            "semantic_location": self.semantic_location,
            "gps": list(self.gps) if self.gps is not None else None,
            "is_private": self.is_private,
            "is_manual": self.is_manual,
            "created_at": self.created_at,
            "edited_at": self.edited_at,
            "entry_duration_s": self.entry_duration_s,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "StressAnnotation":
        gps = rec.get("gps")
        return cls(
            event_id=rec["event_id"],
            participant_id=rec["participant_id"],
            rating=StressRatingLevel(int(rec["rating"])),
            stressor_text=rec.get("stressor_text"),
            semantic_location=rec.get("semantic_location"),
            gps=tuple(gps) if gps else None,
            is_private=bool(rec.get("is_private", False)),
            is_manual=bool(rec.get("is_manual", False)),
            created_at=int(rec.get("created_at", 0)),
            edited_at=rec.get("edited_at"),
            entry_duration_s=rec.get("entry_duration_s"),
        )


@dataclass(frozen=True)
class WeeklySurvey:
    """One weekly reflection survey response."""

    participant_id: str
    week_index: int
    frequency_choice: str
    recall_ease: int
    viz_impacts: frozenset[str] = frozenset()
    submitted_at: int = 0
    late: bool = False

    def __post_init__(self):
        frequency_to_value(self.frequency_choice)  # validates
        if not 1 <= self.recall_ease <= 5:
            raise ValidationError(f"recall_ease {self.recall_ease} outside [1, 5]")
        if self.week_index < 1:
            raise ValidationError("week_index must be >= 1")
        unknown = set(self.viz_impacts) - set(VIZ_IMPACT_OPTIONS)
        if unknown:
            raise ValidationError(f"unknown viz impact options: {sorted(unknown)}")

    @property
    def frequency_value(self) -> int:
        return frequency_to_value(self.frequency_choice)

    def to_record(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "week_index": self.week_index,
            "frequency_choice": self.frequency_choice,
            "frequency_value": self.frequency_value,
            "recall_ease": self.recall_ease,
            "viz_impacts": sorted(self.viz_impacts),
            "submitted_at": self.submitted_at,
            "late": self.late,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "WeeklySurvey":
        return cls(
            participant_id=rec["participant_id"],
            week_index=int(rec["week_index"]),
            frequency_choice=rec["frequency_choice"],
            recall_ease=int(rec["recall_ease"]),
            viz_impacts=frozenset(rec.get("viz_impacts", ())),
            submitted_at=int(rec.get("submitted_at", 0)),
            late=bool(rec.get("late", False)),
        )


@dataclass(frozen=True)
class StudyClock:
    """Maps timestamps to 1-based study week indices for one participant."""

    participant_id: str
    enrollment_day: _dt.date

    def week_of_date(self, day: _dt.date) -> int:
        delta = (day - self.enrollment_day).days
        if delta < 0:
            raise ValidationError(f"{day} precedes enrollment {self.enrollment_day}")
        return delta // 7 + 1

    def week_of_epoch(self, ts: int, tz_offset_min: int = 0) -> int:
        return self.week_of_date(epoch_to_local(ts, tz_offset_min).date())

    def day_index(self, ts: int, tz_offset_min: int = 0) -> int:
        """0-based study day of a timestamp (local date based)."""
        return (epoch_to_local(ts, tz_offset_min).date() - self.enrollment_day).days


def epoch_to_local(ts: int, tz_offset_min: int) -> _dt.datetime:
    """Naive local wall-clock datetime for an epoch-seconds timestamp."""
    return _dt.datetime.fromtimestamp(ts + tz_offset_min * 60, tz=_dt.timezone.utc).replace(
        tzinfo=None
    )


def local_to_epoch(local: _dt.datetime, tz_offset_min: int) -> int:
    """Inverse of :func:`epoch_to_local`."""
    return int(local.replace(tzinfo=_dt.timezone.utc).timestamp()) - tz_offset_min * 60


def visible_annotations(
    annotations: Iterable[StressAnnotation],
) -> list[StressAnnotation]:
    """Drop private annotations; the single privacy choke point for analyses."""
    return [a for a in annotations if not a.is_private]
