"""Event selection and prompt scheduling.

Per-participant score percentiles (nearest-rank over a trailing window)
split scores into four bands; a score above the 95th percentile always
prompts, and lower bands prompt with fixed probabilities subject to a
per-band daily budget. Selection is driven by a stable per-event hash so
the same (events, seed, policy) always yields the same selection set, in
any processing order.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import PhysiologicalEvent, ValidationError, epoch_to_local

COLD_START_MIN_EVENTS = 100
COLD_START_THRESHOLDS = (25.0, 75.0, 95.0)
PERCENTILE_WINDOW_DAYS = 14
PROMPT_DELAY_MAX_S = 60
REFRACTORY_S = 30 * 60
TICKET_EXPIRY_S = 24 * 3600


@dataclass(frozen=True)
class PercentileBands:
    p25: float
    p75: float
    p95: float
    source_window_days: int = PERCENTILE_WINDOW_DAYS
    sample_count: int = 0

    def __post_init__(self):
        if not self.p25 <= self.p75 <= self.p95:
            raise ValidationError("percentile thresholds must be ordered")

    def band_of(self, score: float) -> int:
        """0: [0, p25], 1: (p25, p75], 2: (p75, p95], 3: (p95, 100]."""
        if score > self.p95:
            return 3
        if score > self.p75:
            return 2
        if score > self.p25:
            return 1
        return 0


@dataclass(frozen=True)
class SamplingPolicy:
    """Band selection probabilities and average-prompts/day budget targets."""

    band_probabilities: tuple[float, float, float, float] = (0.2, 0.1, 0.8, 1.0)
    daily_budget_targets: tuple[int, int, int] = (1, 2, 3)  # bands 0..2; band 3 uncapped
    budgets_enabled: bool = True

    def __post_init__(self):
        if any(not 0.0 <= p <= 1.0 for p in self.band_probabilities):
            raise ValidationError("band probabilities must lie in [0, 1]")

    def probability_for(self, band: int) -> float:
        return self.band_probabilities[band]

    def budget_cap(self, band: int) -> Optional[int]:
        if band >= 3 or not self.budgets_enabled:
            return None
        return math.ceil(2 * self.daily_budget_targets[band])


@dataclass
class PromptTicket:
    ticket_id: str
    event_id: str
    participant_id: str
    issued_at: int
    expires_at: int
    responded: bool = False

    def is_expired(self, now: int) -> bool:
        return now > self.expires_at

    def to_record(self) -> dict:
        return {
            "ticket_id": self.ticket_id,
            "event_id": self.event_id,
            "participant_id": self.participant_id,
            "issued_at": self.issued_at,
            "expires_at": self.expires_at,
            "responded": self.responded,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "PromptTicket":
        return cls(
            ticket_id=rec["ticket_id"],
            event_id=rec["event_id"],
            participant_id=rec["participant_id"],
            issued_at=int(rec["issued_at"]),
            expires_at=int(rec["expires_at"]),
            responded=bool(rec.get("responded", False)),
        )


def nearest_rank(sorted_scores: np.ndarray, pct: float) -> float:
    """Nearest-rank percentile of an ascending array."""
    n = sorted_scores.size
    rank = max(1, math.ceil(pct / 100.0 * n))
    return float(sorted_scores[rank - 1])


def update_percentiles(
    participant_id: str,
    events: Sequence[PhysiologicalEvent],
    now: Optional[int] = None,
    window_days: int = PERCENTILE_WINDOW_DAYS,
    min_events: int = COLD_START_MIN_EVENTS,
    population: bool = False,
) -> PercentileBands:
    """Empirical score bands over the trailing window.

    Until ``min_events`` events have been observed in total, fixed
    cold-start thresholds (25/75/95) keep enrollment behavior
    deterministic. Falls back to the most recent ``min_events`` events
    when the trailing window itself is empty. ``population=True`` bands
    against the whole cohort's events instead of the participant's own.
    """
    if population:
        history = list(events)
    else:
        history = [e for e in events if e.participant_id == participant_id]
    if len(history) < max(min_events, 1):
        return PercentileBands(
            *COLD_START_THRESHOLDS,
            source_window_days=window_days,
            sample_count=len(history),
        )
    history.sort(key=lambda e: e.end)
    if now is None:
        now = history[-1].end
    horizon = now - window_days * 86400
    windowed = [e for e in history if e.end >= horizon]
    if not windowed:
        windowed = history[-min_events:]
    scores = np.sort(np.array([e.score for e in windowed]))
    return PercentileBands(
        p25=nearest_rank(scores, 25),
        p75=nearest_rank(scores, 75),
        p95=nearest_rank(scores, 95),
        source_window_days=window_days,
        sample_count=scores.size,
    )


def _stable_uniform(seed: int, event_id: str) -> float:
    digest = hashlib.sha256(f"{seed}:{event_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big") / 2.0**64


def selection_probability(score: float, bands: PercentileBands, policy: SamplingPolicy) -> float:
    return policy.probability_for(bands.band_of(score))


def select_for_prompt(
    event: PhysiologicalEvent,
    bands: PercentileBands,
    policy: SamplingPolicy,
    rng_seed: int,
) -> bool:
    """Bernoulli by band probability; above-p95 scores are always selected.

    Deterministic per (seed, event_id): the uniform draw comes from a
    stable hash, so raising an event's score can only flip the outcome
    from unselected to selected.
    """
    p = selection_probability(event.score, bands, policy)
    if p >= 1.0:
        return True
    return _stable_uniform(rng_seed, event.event_id) < p


class PromptScheduler:
    """Serializes prompt issuance for participants.

    Applies selection, the post-conclusion delivery rule, a refractory gap
    between prompts, and per-band daily budget caps. One logical writer per
    participant is assumed (matching the platform's storage model).
    """

    def __init__(self, policy: Optional[SamplingPolicy] = None, rng_seed: int = 0):
        self.policy = policy or SamplingPolicy()
        self.rng_seed = rng_seed
        self.tickets: dict[str, PromptTicket] = {}
        self._last_issued: dict[str, int] = {}
        self._day_counts: dict[tuple[str, str, int], int] = {}

    def offer(
        self,
        event: PhysiologicalEvent,
        bands: PercentileBands,
        now: int,
    ) -> tuple[str, Optional[PromptTicket]]:
        """Consider one concluded (or concluding) event for prompting.

        Returns (status, ticket) with status one of: issued, deferred,
        duplicate, not_selected, refractory, budget_exhausted.
        """
        if event.event_id in self.tickets:
            return "duplicate", self.tickets[event.event_id]
        if now < event.end:
            return "deferred", None
        if not select_for_prompt(event, bands, self.policy, self.rng_seed):
            return "not_selected", None

        issued_at = min(now, event.end + PROMPT_DELAY_MAX_S)
        last = self._last_issued.get(event.participant_id)
        if last is not None and issued_at - last < REFRACTORY_S:
            return "refractory", None

        band = bands.band_of(event.score)
        cap = self.policy.budget_cap(band)
        local_day = epoch_to_local(issued_at, event.tz_offset_min).date().toordinal()
        key = (event.participant_id, local_day, band)
        if cap is not None and self._day_counts.get(key, 0) >= cap:
            return "budget_exhausted", None

        ticket = PromptTicket(
            ticket_id=f"t-{event.event_id}",
            event_id=event.event_id,
            participant_id=event.participant_id,
            issued_at=issued_at,
            expires_at=issued_at + TICKET_EXPIRY_S,
        )
        self.tickets[event.event_id] = ticket
        self._last_issued[event.participant_id] = issued_at
        self._day_counts[key] = self._day_counts.get(key, 0) + 1
        return "issued", ticket

    def pending(self, participant_id: str, now: int) -> list[PromptTicket]:
        return [
            t
            for t in sorted(self.tickets.values(), key=lambda t: t.issued_at)
            if t.participant_id == participant_id
            and not t.responded
            and not t.is_expired(now)
        ]

    def get(self, event_id: str) -> Optional[PromptTicket]:
        return self.tickets.get(event_id)

    def mark_responded(self, event_id: str) -> None:
        ticket = self.tickets.get(event_id)
        if ticket is None:
            raise ValidationError(f"no ticket for event {event_id}")
        ticket.responded = True
