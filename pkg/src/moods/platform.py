"""The live platform: storage-backed state machine behind the API and CLI.

One Platform instance owns a data directory. Mutations flow through the
per-participant logs (idempotent on entity/version keys), and in-memory
state (scheduler, annotation store, survey engine) is rebuilt from the logs
on startup. Open stressor tasks are derivable state: an annotation whose
rating requires a stressor but has none yet.
"""

from __future__ import annotations

import datetime as _dt
import time
from pathlib import Path
from typing import Optional

from .annotations import AnnotationStore, ExpiredTicketError, NotFoundError
from .core import (
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    StudyClock,
    ValidationError,
    WeeklySurvey,
    epoch_to_local,
    requires_stressor,
)
from .dataset import ParticipantInfo, StudyDataset
from .events import (
    PercentileBands,
    PromptScheduler,
    SamplingPolicy,
    update_percentiles,
)
from .storage import LogStore
from .surveys import SurveyConflictError, SurveyEngine


class Platform:
    def __init__(
        self,
        data_dir: str | Path,
        rng_seed: int = 0,
        policy: Optional[SamplingPolicy] = None,
        fsync: bool = False,
        now_fn=None,
    ):
        self.store = LogStore(data_dir, fsync=fsync)
        self.scheduler = PromptScheduler(policy=policy, rng_seed=rng_seed)
        self.annotations = AnnotationStore()
        self.surveys = SurveyEngine()
        self.participants: dict[str, ParticipantInfo] = {}
        self._bands: dict[str, PercentileBands] = {}
        self._event_history: dict[str, list[PhysiologicalEvent]] = {}
        self._edit_versions: dict[str, int] = {}
        self._request_cache: dict[str, dict] = {}
        self._last_band_day: dict[str, _dt.date] = {}
        self._now_fn = now_fn or (lambda: int(time.time()))
        self._replay()

    # -- startup ----------------------------------------------------------

    def _replay(self) -> None:
        from .events import PromptTicket

        for pid in self.store.participant_ids():
            logs = self.store.participant(pid)
            meta = logs.read_meta()
            if meta:
                self.participants[pid] = ParticipantInfo.from_record(meta)
            for rec in logs.logs["events"].records():
                event = PhysiologicalEvent.from_record(rec)
                self._event_history.setdefault(pid, []).append(event)
                self.annotations.register_event(event)
                self._register_participant(event)
            for rec in logs.logs["tickets"].latest_by_entity().values():
                ticket = PromptTicket.from_record(rec)
                self.scheduler.tickets[ticket.event_id] = ticket
            for eid, rec in logs.logs["annotations"].latest_by_entity().items():
                ann = StressAnnotation.from_record(rec)
                self.annotations.annotations[eid] = ann
                self._edit_versions[eid] = 1 if ann.edited_at is None else 2
                if requires_stressor(ann.rating) and not ann.stressor_text:
                    from .annotations import StressorTask

                    self.annotations.tasks[eid] = StressorTask(
                        event_id=eid, participant_id=pid, opened_at=ann.created_at
                    )
                lex = self.annotations.lexicon(pid)
                if ann.stressor_text:
                    lex.record_use(ann.stressor_text, at=ann.created_at)
            for rec in logs.logs["surveys"].records():
                survey = WeeklySurvey.from_record(rec)
                self.surveys.responses[(pid, survey.week_index)] = survey
            if pid in self._event_history:
                self._refresh_bands(pid)

    # -- helpers ----------------------------------------------------------

    def now(self) -> int:
        return int(self._now_fn())

    def _register_participant(self, event: PhysiologicalEvent) -> None:
        pid = event.participant_id
        if pid not in self.participants:
            info = ParticipantInfo(
                participant_id=pid,
                enrollment_day=epoch_to_local(event.start, event.tz_offset_min).date(),
                tz_offset_min=event.tz_offset_min,
            )
            self.participants[pid] = info
            self.store.participant(pid).write_meta(info.to_record())

    def clock(self, participant_id: str) -> StudyClock:
        info = self.participants[participant_id]
        return StudyClock(participant_id, info.enrollment_day)

    def _refresh_bands(self, pid: str) -> None:
        history = self._event_history.get(pid, [])
        if history:
            self._bands[pid] = update_percentiles(pid, history)

    def bands_for(self, pid: str) -> PercentileBands:
        if pid not in self._bands:
            self._bands[pid] = PercentileBands(25, 75, 95)
        return self._bands[pid]

    def cached_response(self, request_id: Optional[str]) -> Optional[dict]:
        if request_id:
            return self._request_cache.get(request_id)
        return None

    def cache_response(self, request_id: Optional[str], response: dict) -> dict:
        if request_id:
            self._request_cache[request_id] = response
        return response

    # -- mutations ---------------------------------------------------------

    def ingest_event(self, record: dict) -> dict:
        event = PhysiologicalEvent.from_record(record)
        pid = event.participant_id
        self._register_participant(event)
        known = event.event_id in self.annotations.events
        self.store.participant(pid).append(
            "events", event.to_record(), entity_id=event.event_id, version=1
        )
        if not known:
            self.annotations.register_event(event)
            self._event_history.setdefault(pid, []).append(event)
            event_day = epoch_to_local(event.end, event.tz_offset_min).date()
            if self._last_band_day.get(pid) != event_day:  # daily recompute
                self._refresh_bands(pid)
                self._last_band_day[pid] = event_day
        status, ticket = self.scheduler.offer(
            event, self.bands_for(pid), now=max(event.end, min(self.now(), event.end + 60))
        )
        if ticket is not None:
            self.store.participant(pid).append(
                "tickets", ticket.to_record(), entity_id=ticket.ticket_id, version=1
            )
        return {
            "event_id": event.event_id,
            "status": status,
            "ticket_id": ticket.ticket_id if ticket else None,
        }

    def submit_rating(self, event_id: str, rating, gps=None, now: Optional[int] = None) -> dict:
        ticket = self.scheduler.get(event_id)
        if ticket is None:
            raise NotFoundError(f"no ticket for event {event_id}")
        now = now if now is not None else self.now()
        annotation = self.annotations.submit_rating(
            ticket, StressRatingLevel(int(rating)), now=now, gps=gps
        )
        pid = annotation.participant_id
        self.store.participant(pid).append(
            "tickets", ticket.to_record(), entity_id=ticket.ticket_id, version=2
        )
        self.store.participant(pid).append(
            "annotations", annotation.to_record(), entity_id=event_id,
            version=self._edit_versions.setdefault(event_id, 1),
        )
        task = self.annotations.tasks.get(event_id)
        return {
            "annotation": annotation.to_record(),
            "stressor_task": dict(task.context, event_id=event_id) if task else None,
        }

    def complete_annotation(self, event_id: str, stressor_text: str,
                            semantic_location: Optional[str],
                            now: Optional[int] = None) -> dict:
        annotation = self.annotations.complete_annotation(
            event_id, stressor_text, semantic_location,
            now=now if now is not None else self.now(),
        )
        version = self._edit_versions[event_id] = self._edit_versions.get(event_id, 1) + 1
        self.store.participant(annotation.participant_id).append(
            "annotations", annotation.to_record(), entity_id=event_id, version=version
        )
        return {"annotation": annotation.to_record()}

    def edit_annotation(self, event_id: str, patch: dict) -> dict:
        annotation = self.annotations.edit_annotation(event_id, patch, now=self.now())
        version = self._edit_versions[event_id] = self._edit_versions.get(event_id, 1) + 1
        self.store.participant(annotation.participant_id).append(
            "annotations", annotation.to_record(), entity_id=event_id, version=version
        )
        return {"annotation": annotation.to_record()}

    def manual_report(self, participant_id: str, rating, stressor_text: str,
                      semantic_location: Optional[str], at: int,
                      tz_offset_min: Optional[int] = None, gps=None) -> dict:
        info = self.participants.get(participant_id)
        tz = tz_offset_min if tz_offset_min is not None else (
            info.tz_offset_min if info else 0
        )
        annotation = self.annotations.manual_report(
            participant_id, StressRatingLevel(int(rating)), stressor_text,
            semantic_location, at=at, now=self.now(), tz_offset_min=tz, gps=gps,
        )
        event = self.annotations.events[annotation.event_id]
        self._register_participant(event)
        self._event_history.setdefault(participant_id, []).append(event)
        logs = self.store.participant(participant_id)
        logs.append("events", event.to_record(), entity_id=event.event_id, version=1)
        logs.append("annotations", annotation.to_record(),
                    entity_id=annotation.event_id, version=1)
        self._edit_versions[annotation.event_id] = 1
        return {"annotation": annotation.to_record(), "event": event.to_record()}

    def open_survey(self, participant_id: str, week_index: int) -> dict:
        info = self.participants[participant_id]
        instance = self.surveys.open_survey(
            participant_id, week_index, self.clock(participant_id),
            now=self.now(), tz_offset_min=info.tz_offset_min,
        )
        return instance.to_record()

    def current_survey(self, participant_id: str) -> Optional[dict]:
        """Open (or fetch) the instance for the latest completed week."""
        if participant_id not in self.participants:
            raise NotFoundError(f"unknown participant {participant_id}")
        info = self.participants[participant_id]
        today = epoch_to_local(self.now(), info.tz_offset_min).date()
        completed = (today - info.enrollment_day).days // 7
        if completed < 1:
            return None
        week = completed
        if (participant_id, week) in self.surveys.responses:
            return None
        key = (participant_id, week)
        if key in self.surveys.instances:
            return self.surveys.instances[key].to_record()
        return self.open_survey(participant_id, week)

    def submit_survey(self, participant_id: str, week_index: int, frequency_choice: str,
                      recall_ease: int, viz_impacts=(), now: Optional[int] = None) -> dict:
        key = (participant_id, week_index)
        if key not in self.surveys.instances:
            self.open_survey(participant_id, week_index)
        instance = self.surveys.instances[key]
        survey = WeeklySurvey(
            participant_id=participant_id,
            week_index=week_index,
            frequency_choice=frequency_choice,
            recall_ease=recall_ease,
            viz_impacts=frozenset(viz_impacts),
        )
        stored = self.surveys.submit_survey(instance, survey,
                                            now=now if now is not None else self.now())
        self.store.participant(participant_id).append(
            "surveys", stored.to_record(),
            entity_id=f"{participant_id}-w{week_index}", version=1,
        )
        return stored.to_record()

    # -- reads -------------------------------------------------------------

    def pending_prompts(self, participant_id: str) -> list[dict]:
        out = []
        for ticket in self.scheduler.pending(participant_id, now=self.now()):
            event = self.annotations.events.get(ticket.event_id)
            entry = ticket.to_record()
            if event is not None:
                entry["event"] = event.to_record()
            out.append(entry)
        return out

    def dashboard(self, participant_id: str) -> list[dict]:
        rows = []
        for event, ann in self.annotations.timeline(participant_id):
            rows.append({"event": event.to_record(), "annotation": ann.to_record()})
        return rows

    def dataset(self) -> StudyDataset:
        ds = StudyDataset()
        ds.participants = dict(self.participants)
        ds.events = dict(self.annotations.events)
        ds.annotations = dict(self.annotations.annotations)
        ds.surveys = sorted(
            self.surveys.responses.values(), key=lambda s: (s.participant_id, s.week_index)
        )
        ds.tickets = sorted(
            self.scheduler.tickets.values(), key=lambda t: (t.participant_id, t.issued_at)
        )
        return ds
