"""Joined study dataset: the in-memory view analyses and charts consume.

Private annotations are filtered at this layer (``annotated_events``), so
every downstream consumer sees byte-identical data whether private rows are
present in storage or already removed.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .core import (
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    StudyClock,
    WeeklySurvey,
    epoch_to_local,
    is_stressed_rating,
    rating_to_intensity,
    requires_stressor,
)
from .events import PromptTicket
from .storage import LogStore


@dataclass(frozen=True)
class ParticipantInfo:
    participant_id: str
    enrollment_day: _dt.date
    tz_offset_min: int = 0
    days_active: Optional[int] = None

    def to_record(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "enrollment_day": self.enrollment_day.isoformat(),
            "tz_offset_min": self.tz_offset_min,
            "days_active": self.days_active,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ParticipantInfo":
        return cls(
            participant_id=rec["participant_id"],
            enrollment_day=_dt.date.fromisoformat(rec["enrollment_day"]),
            tz_offset_min=int(rec.get("tz_offset_min", 0)),
            days_active=rec.get("days_active"),
        )


@dataclass(frozen=True)
class AnnotatedEvent:
    """One non-private annotated event with derived context."""

    event: PhysiologicalEvent
    annotation: StressAnnotation
    week_index: int

    @property
    def intensity(self) -> int:
        return rating_to_intensity(self.annotation.rating)

    @property
    def stressed_minutes(self) -> float:
        return self.event.duration_min if is_stressed_rating(self.annotation.rating) else 0.0

    @property
    def local_start(self) -> _dt.datetime:
        return self.event.local_start()

    @property
    def stressor(self) -> Optional[str]:
        return self.annotation.stressor_text

    @property
    def location(self) -> Optional[str]:
        return self.annotation.semantic_location


@dataclass
class StudyDataset:
    participants: dict[str, ParticipantInfo] = field(default_factory=dict)
    events: dict[str, PhysiologicalEvent] = field(default_factory=dict)
    annotations: dict[str, StressAnnotation] = field(default_factory=dict)
    surveys: list[WeeklySurvey] = field(default_factory=list)
    tickets: list[PromptTicket] = field(default_factory=list)

    def clock(self, participant_id: str) -> StudyClock:
        return StudyClock(participant_id, self.participants[participant_id].enrollment_day)

    def annotated_events(
        self,
        participant_id: Optional[str] = None,
        up_to_week: Optional[int] = None,
    ) -> list[AnnotatedEvent]:
        """Visible (non-private) annotated events, oldest first."""
        rows: list[AnnotatedEvent] = []
        for ann in self.annotations.values():
            if ann.is_private:
                continue
            if participant_id is not None and ann.participant_id != participant_id:
                continue
            event = self.events.get(ann.event_id)
            if event is None:
                continue
            clock = self.clock(ann.participant_id)
            week = clock.week_of_epoch(event.start, event.tz_offset_min)
            if up_to_week is not None and week > up_to_week:
                continue
            rows.append(AnnotatedEvent(event=event, annotation=ann, week_index=week))
        rows.sort(key=lambda r: (r.event.start, r.event.event_id))
        return rows

    def surveys_for(
        self, participant_id: Optional[str] = None, up_to_week: Optional[int] = None
    ) -> list[WeeklySurvey]:
        rows = [
            s
            for s in self.surveys
            if (participant_id is None or s.participant_id == participant_id)
            and (up_to_week is None or s.week_index <= up_to_week)
        ]
        rows.sort(key=lambda s: (s.participant_id, s.week_index))
        return rows

    def action_weeks(self) -> dict[str, int]:
        """First week each participant reported taking a specific action."""
        out: dict[str, int] = {}
        for s in sorted(self.surveys, key=lambda s: s.week_index):
            if "took specific action" in s.viz_impacts and s.participant_id not in out:
                out[s.participant_id] = s.week_index
        return out

    def entry_durations(self) -> dict[str, list[float]]:
        """Per participant, stressor entry times ordered by episode index."""
        out: dict[str, list[float]] = {}
        for row in self.annotated_events():
            d = row.annotation.entry_duration_s
            if d is not None:
                out.setdefault(row.annotation.participant_id, []).append(float(d))
        return out

    def days_active(self) -> dict[str, int]:
        """Active-day counts (1-based): stored value or last annotation day."""
        out: dict[str, int] = {}
        by_pid: dict[str, int] = {}
        for row in self.annotated_events():
            clock = self.clock(row.annotation.participant_id)
            day = clock.day_index(row.event.start, row.event.tz_offset_min) + 1
            by_pid[row.annotation.participant_id] = max(
                by_pid.get(row.annotation.participant_id, 0), day
            )
        for pid, info in self.participants.items():
            out[pid] = info.days_active if info.days_active is not None else by_pid.get(pid, 0)
        return out

    # -- persistence ------------------------------------------------------

    def save(self, data_dir: str | Path, fsync: bool = False) -> None:
        store = LogStore(data_dir, fsync=fsync)
        batches: dict[str, dict[str, list]] = {}

        def queue(pid: str, kind: str, record: dict, entity_id: str, version: int):
            batches.setdefault(pid, {}).setdefault(kind, []).append(
                (record, entity_id, version)
            )

        for event in sorted(self.events.values(), key=lambda e: (e.start, e.event_id)):
            queue(event.participant_id, "events", event.to_record(), event.event_id, 1)
        for ann in sorted(self.annotations.values(), key=lambda a: (a.created_at, a.event_id)):
            version = 1 if ann.edited_at is None else 2
            queue(ann.participant_id, "annotations", ann.to_record(), ann.event_id, version)
        for survey in self.surveys:
            queue(
                survey.participant_id,
                "surveys",
                survey.to_record(),
                f"{survey.participant_id}-w{survey.week_index}",
                1,
            )
        for ticket in self.tickets:
            queue(ticket.participant_id, "tickets", ticket.to_record(), ticket.ticket_id, 1)

        for pid, info in sorted(self.participants.items()):
            logs = store.participant(pid)
            logs.write_meta(info.to_record())
            for kind, items in batches.get(pid, {}).items():
                logs.logs[kind].append_batch(items)

    @classmethod
    def load(cls, data_dir: str | Path) -> "StudyDataset":
        store = LogStore(data_dir)
        ds = cls()
        for pid in store.participant_ids():
            logs = store.participant(pid)
            meta = logs.read_meta()
            if meta is not None:
                info = ParticipantInfo.from_record(meta)
            else:
                info = ParticipantInfo(pid, _dt.date(1970, 1, 1))
            ds.participants[pid] = info
            for rec in logs.logs["events"].records():
                event = PhysiologicalEvent.from_record(rec)
                ds.events[event.event_id] = event
            for eid, rec in logs.logs["annotations"].latest_by_entity().items():
                ds.annotations[eid] = StressAnnotation.from_record(rec)
            for rec in logs.logs["surveys"].records():
                ds.surveys.append(WeeklySurvey.from_record(rec))
            for rec in logs.logs["tickets"].records():
                ds.tickets.append(PromptTicket.from_record(rec))
        ds.surveys.sort(key=lambda s: (s.participant_id, s.week_index))
        ds.tickets.sort(key=lambda t: (t.participant_id, t.issued_at, t.ticket_id))
        return ds
