"""Stress ratings, stressor annotation workflow, and predictive autocomplete.

Each participant has a stressor lexicon seeded with 80 common stressors and
grown with every novel completion. Autocomplete is case-insensitive; prefix
matches rank before substring matches, ties break by use count (descending)
then lexicographically.
"""

from __future__ import annotations

import bisect
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from .core import (
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    ValidationError,
    requires_stressor,
)
from .events import PromptTicket

MANUAL_EVENT_DEFAULT_DURATION_S = 5 * 60


class NotFoundError(KeyError):
    """Raised for unknown events, tickets, or annotation tasks."""


class ExpiredTicketError(ValueError):
    """Raised when a rating arrives on an expired ticket."""


def normalize_stressor(text: str) -> str:
    """NFC normalize, casefold, trim, collapse internal whitespace."""
    text = unicodedata.normalize("NFC", text)
    return " ".join(text.split()).casefold()


@dataclass
class LexiconEntry:
    text: str  # display form (first spelling seen)
    first_seen: int
    use_count: int = 0


def load_seed_stressors() -> list[str]:
    """The packaged 80-entry seed vocabulary."""
    raw = resources.files("moods.data").joinpath("stressor_seed.txt").read_text("utf-8")
    return parse_seed_file(raw)


def parse_seed_file(raw: str) -> list[str]:
    entries = []
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(line)
    return entries


class StressorLexicon:
    """Per-participant stressor vocabulary with ranked lookup."""

    def __init__(self, seed: Optional[Iterable[str]] = None, seeded_at: int = 0):
        self._entries: dict[str, LexiconEntry] = {}
        self._sorted_keys: list[str] = []
        for text in seed if seed is not None else load_seed_stressors():
            self._upsert(text, at=seeded_at, count_use=False)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, text: str) -> bool:
        return normalize_stressor(text) in self._entries

    def entries(self) -> list[LexiconEntry]:
        return [self._entries[k] for k in self._sorted_keys]

    def _upsert(self, text: str, at: int, count_use: bool) -> LexiconEntry:
        key = normalize_stressor(text)
        if not key:
            raise ValidationError("stressor text must be non-empty")
        entry = self._entries.get(key)
        if entry is None:
            entry = LexiconEntry(text=" ".join(text.split()), first_seen=at)
            self._entries[key] = entry
            bisect.insort(self._sorted_keys, key)
        if count_use:
            entry.use_count += 1
        return entry

    def record_use(self, text: str, at: int) -> LexiconEntry:
        return self._upsert(text, at=at, count_use=True)

    def autocomplete(self, query: str, limit: int) -> list[str]:
        """Ranked completions: prefix before substring, then count, then text."""
        if limit < 1:
            raise ValidationError("limit must be >= 1")
        q = normalize_stressor(query)
        if not q:
            return []
        lo = bisect.bisect_left(self._sorted_keys, q)
        hi = bisect.bisect_right(self._sorted_keys, q + "￿")
        prefix_keys = set(self._sorted_keys[lo:hi])
        matches = []
        for key in self._sorted_keys:
            if key in prefix_keys:
                tier = 0
            elif q in key:
                tier = 1
            else:
                continue
            entry = self._entries[key]
            matches.append((tier, -entry.use_count, key, entry.text))
        matches.sort()
        return [text for _, _, _, text in matches[:limit]]


@dataclass
class StressorTask:
    """Open follow-up asking for the stressor and semantic location."""

    event_id: str
    participant_id: str
    opened_at: int
    context: dict = field(default_factory=dict)


class AnnotationStore:
    """Annotation timeline, stressor tasks, and lexicons for all participants.

    Writes are serialized per participant by the caller (storage layer);
    all methods here mutate plain in-memory state.
    """

    def __init__(self, seed: Optional[Iterable[str]] = None,
                 manual_duration_s: int = MANUAL_EVENT_DEFAULT_DURATION_S):
        self._seed = list(seed) if seed is not None else load_seed_stressors()
        self._manual_duration_s = manual_duration_s
        self._lexicons: dict[str, StressorLexicon] = {}
        self.annotations: dict[str, StressAnnotation] = {}
        self.tasks: dict[str, StressorTask] = {}
        self.events: dict[str, PhysiologicalEvent] = {}
        self._manual_counter = 0

    def lexicon(self, participant_id: str) -> StressorLexicon:
        if participant_id not in self._lexicons:
            self._lexicons[participant_id] = StressorLexicon(self._seed)
        return self._lexicons[participant_id]

    def register_event(self, event: PhysiologicalEvent) -> None:
        self.events[event.event_id] = event

    def autocomplete(self, participant_id: str, query: str, limit: int) -> list[str]:
        return self.lexicon(participant_id).autocomplete(query, limit)

    def submit_rating(
        self,
        ticket: PromptTicket,
        rating: StressRatingLevel,
        now: int,
        gps: Optional[tuple[float, float]] = None,
    ) -> StressAnnotation:
        """Store the Likert rating; open a stressor task when one is owed.

        Duplicate submissions are idempotent and return the original record.
        """
        existing = self.annotations.get(ticket.event_id)
        if existing is not None:
            return existing
        if ticket.is_expired(now):
            raise ExpiredTicketError(f"ticket {ticket.ticket_id} expired")
        event = self.events.get(ticket.event_id)
        if event is None:
            raise NotFoundError(f"unknown event {ticket.event_id}")
        rating = StressRatingLevel(rating)
        annotation = StressAnnotation(
            event_id=event.event_id,
            participant_id=event.participant_id,
            rating=rating,
            gps=gps,
            created_at=now,
        )
        self.annotations[event.event_id] = annotation
        ticket.responded = True
        if requires_stressor(rating):
            self.tasks[event.event_id] = StressorTask(
                event_id=event.event_id,
                participant_id=event.participant_id,
                opened_at=now,
                context={
                    "date": event.local_start().date().isoformat(),
                    "start_time": event.local_start().time().isoformat("minutes"),
                    "duration_min": round(event.duration_min, 1),
                    "score": event.score,
                    "gps": list(gps) if gps else None,
                },
            )
        return annotation

    def complete_annotation(
        self,
        event_id: str,
        stressor_text: str,
        semantic_location: Optional[str],
        now: int,
    ) -> StressAnnotation:
        """Close the stressor task: store text/location, learn the stressor."""
        task = self.tasks.get(event_id)
        if task is None:
            raise NotFoundError(f"no open stressor task for event {event_id}")
        if not stressor_text or not stressor_text.strip():
            raise ValidationError("stressor text is required")
        annotation = self.annotations[event_id]
        entry = self.lexicon(task.participant_id).record_use(stressor_text, at=now)
        updated = annotation.with_changes(
            stressor_text=entry.text,
            semantic_location=semantic_location.strip() if semantic_location else None,
            entry_duration_s=float(max(0, now - task.opened_at)),
        )
        self.annotations[event_id] = updated
        del self.tasks[event_id]
        return updated

    def edit_annotation(self, event_id: str, patch: dict, now: int) -> StressAnnotation:
        """Patch rating / stressor_text / is_private; empty patch is a no-op."""
        annotation = self.annotations.get(event_id)
        if annotation is None:
            raise NotFoundError(f"no annotation for event {event_id}")
        allowed = {"rating", "stressor_text", "is_private", "semantic_location"}
        unknown = set(patch) - allowed
        if unknown:
            raise ValidationError(f"cannot edit fields: {sorted(unknown)}")
        changes = {}
        if "rating" in patch:
            changes["rating"] = StressRatingLevel(patch["rating"])
        if "stressor_text" in patch:
            text = patch["stressor_text"]
            if not text or not str(text).strip():
                raise ValidationError("stressor text cannot be blanked")
            entry = self.lexicon(annotation.participant_id).record_use(str(text), at=now)
            changes["stressor_text"] = entry.text
        if "semantic_location" in patch:
            loc = patch["semantic_location"]
            changes["semantic_location"] = str(loc).strip() if loc else None
        if "is_private" in patch:
            changes["is_private"] = bool(patch["is_private"])
        if not changes:
            return annotation
        updated = annotation.with_changes(edited_at=max(now, annotation.created_at), **changes)
        self.annotations[event_id] = updated
        return updated

    def manual_report(
        self,
        participant_id: str,
        rating: StressRatingLevel,
        stressor_text: str,
        semantic_location: Optional[str],
        at: int,
        now: int,
        tz_offset_min: int = 0,
        duration_s: Optional[int] = None,
        gps: Optional[tuple[float, float]] = None,
    ) -> StressAnnotation:
        """Self-reported stress event with a synthetic fixed-duration episode."""
        if at > now:
            raise ValidationError("manual reports cannot be in the future")
        rating = StressRatingLevel(rating)
        if not requires_stressor(rating):
            raise ValidationError("manual reports are stress reports; rating too low")
        if not stressor_text or not stressor_text.strip():
            raise ValidationError("stressor text is required")
        self._manual_counter += 1
        dur = duration_s if duration_s is not None else self._manual_duration_s
        event = PhysiologicalEvent(
            event_id=f"manual-{participant_id}-{self._manual_counter}",
            participant_id=participant_id,
            start=at,
            end=at + dur,
            score=0.0,
            tz_offset_min=tz_offset_min,
        )
        self.register_event(event)
        entry = self.lexicon(participant_id).record_use(stressor_text, at=now)
        annotation = StressAnnotation(
            event_id=event.event_id,
            participant_id=participant_id,
            rating=rating,
            stressor_text=entry.text,
            semantic_location=semantic_location.strip() if semantic_location else None,
            gps=gps,
            is_manual=True,
            created_at=now,
        )
        self.annotations[event.event_id] = annotation
        return annotation

    def timeline(self, participant_id: str) -> list[tuple[PhysiologicalEvent, StressAnnotation]]:
        """Annotated events for one participant ordered by event start."""
        rows = [
            (self.events[a.event_id], a)
            for a in self.annotations.values()
            if a.participant_id == participant_id and a.event_id in self.events
        ]
        rows.sort(key=lambda pair: (pair[0].start, pair[0].event_id))
        return rows
