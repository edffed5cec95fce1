"""Synthetic cohort generator for exercising the full platform at desk scale.

Each participant gets an independent RNG substream derived from the master
seed and the participant id, so regenerating with one participant's seed
changed leaves every other participant's data byte-identical.

Latent model per participant i (weeks are 1-based):

    intensity_i(week) = b0_i + s_i * (week - 1)        momentary rating mean
    frequency_i(week) = f0_i + g_i * (week - 1)        weekly survey mean

Momentary ratings discretize a normal draw around the latent intensity;
survey choices discretize the latent frequency, keeping the mapping
order-preserving. Dropout follows a geometric daily hazard calibrated to a
target 30-day survival. Ground truths are returned alongside the dataset
for oracle checks.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .annotations import load_seed_stressors, normalize_stressor
from .core import (
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    StudyClock,
    ValidationError,
    WeeklySurvey,
    local_to_epoch,
    requires_stressor,
)
from .dataset import ParticipantInfo, StudyDataset
from .events import PercentileBands, PromptScheduler, SamplingPolicy, update_percentiles

WAKING_START_H = 8
WAKING_END_H = 22

LOCATIONS = (
    "home", "office", "car", "campus", "store", "gym", "outdoors", "restaurant",
)
LOCATION_GPS = {
    "home": (35.10, -89.90),
    "office": (35.15, -89.95),
    "car": (35.12, -89.93),
    "campus": (35.12, -89.94),
    "store": (35.08, -89.88),
    "gym": (35.09, -89.92),
    "outdoors": (35.14, -89.85),
    "restaurant": (35.11, -89.87),
}


@dataclass
class SimConfig:
    n_participants: int = 20
    n_weeks: int = 14
    seed: int = 0
    enrollment_day: str = "2024-01-01"
    tz_offset_min: int = -360

    # event stream
    events_per_day_mean: float = 21.0
    score_mixture: tuple = ((0.7, 2.0, 3.0), (0.3, 5.0, 2.0))  # (weight, a, b) Beta x100
    duration_log_mean_min: float = 2.3  # lognormal, ~10 min median
    duration_log_sd: float = 0.5

    # prompting / responding
    response_rate: float = 0.74
    response_delay_s: tuple = (60, 1800)
    stressor_completion_rate: float = 0.82
    private_rate: float = 0.008

    # momentary intensity trajectory
    baseline_intensity_mean: float = 1.72
    baseline_intensity_sd: float = 0.55
    weekly_slope_mean: float = -0.039
    weekly_slope_sd: float = 0.025
    rating_noise_sd: float = 0.95

    # weekly survey trajectory
    frequency_baseline_mean: float = 2.86
    frequency_baseline_sd: float = 0.55
    frequency_slope_mean: float = -0.027
    frequency_slope_sd: float = 0.02
    frequency_noise_sd: float = 0.45
    survey_response_rate: float = 0.85
    recall_ease_mean: float = 2.0
    recall_ease_sd: float = 0.7

    # retention
    day30_survival: float = 0.81

    # stressor choice
    stressor_zipf_exponent: float = 1.0
    novel_stressor_rate: float = 0.02

    # entry-time learning curve (seconds per episode index)
    entry_time_intercept_s: float = 50.46
    entry_time_slope_s: float = -0.58
    entry_time_noise_sd: float = 6.0
    entry_time_floor_s: float = 10.0

    # behavior-change subcohort
    action_n: int = 0
    action_week_mean: float = 6.0
    action_week_sd: float = 2.0
    action_step_z: float = 0.0
    action_pre_slope_per_week: Optional[float] = None
    action_post_slope_per_week: Optional[float] = None

    participant_seed_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("response_rate", "stressor_completion_rate", "private_rate",
                     "survey_response_rate", "day30_survival", "novel_stressor_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name}={value} outside [0, 1]")
        if self.n_weeks < 1:
            raise ValidationError("n_weeks must be >= 1")

    def to_json(self) -> str:
        payload = asdict(self)
        payload["score_mixture"] = [list(part) for part in self.score_mixture]
        payload["response_delay_s"] = list(self.response_delay_s)
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, raw: str) -> "SimConfig":
        payload = json.loads(raw)
        if "score_mixture" in payload:
            payload["score_mixture"] = tuple(tuple(part) for part in payload["score_mixture"])
        if "response_delay_s" in payload:
            payload["response_delay_s"] = tuple(payload["response_delay_s"])
        return cls(**payload)

    @classmethod
    def from_file(cls, path: str | Path) -> "SimConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass
class SimResult:
    dataset: StudyDataset
    truths: dict
    config: SimConfig


def paper_calibrated_config(seed: int = 7, n_participants: int = 250) -> SimConfig:
    """Config tuned to reproduce the reported study-level quantities.

    The latent intensity slope is set steeper than the -0.039/week target
    because discretizing ratings to 0..4 attenuates weekly-mean trends by
    roughly 12%; with the behavior-change subcohort included, the realized
    cohort MK slopes center on -0.039 (intensity) and -0.027 (frequency)
    alongside ~5.2 prompts/day, 74% response, ~1.62 stressors/day, and 81%
    day-30 survival.
    """
    return SimConfig(
        n_participants=n_participants,
        seed=seed,
        weekly_slope_mean=-0.0411,
        frequency_baseline_sd=0.40,
        frequency_noise_sd=0.35,
        action_n=max(1, round(n_participants * 0.12)),
        action_week_mean=6.0,
        action_week_sd=2.0,
        action_step_z=-0.278,
    )


def action_study_config(seed: int = 0, n_participants: int = 17,
                        step_z: float = -0.278) -> SimConfig:
    """Behavior-change scenario: rising stress pre-action, flat after, and a
    level drop (in z-units) at the action week.

    All participants take an action around week 6 and stay enrolled, so
    each one meets the one-week-pre / one-week-post data criteria.
    """
    return SimConfig(
        n_participants=n_participants,
        seed=seed,
        day30_survival=1.0,
        events_per_day_mean=35.0,
        baseline_intensity_mean=1.6,
        baseline_intensity_sd=0.35,
        weekly_slope_mean=0.0,
        weekly_slope_sd=0.005,
        rating_noise_sd=0.45,
        private_rate=0.0,
        action_n=n_participants,
        action_week_mean=6.0,
        action_week_sd=2.0,
        action_step_z=step_z,
        action_pre_slope_per_week=0.2,
        action_post_slope_per_week=0.0,
    )


def _participant_rng(config: SimConfig, pid: str) -> np.random.Generator:
    override = config.participant_seed_overrides.get(pid)
    if override is not None:
        entropy = [int(override)]
    else:
        digest = hashlib.sha256(pid.encode()).digest()
        entropy = [config.seed, int.from_bytes(digest[:8], "big")]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _sample_score(rng: np.random.Generator, mixture) -> float:
    weights = np.array([part[0] for part in mixture])
    idx = rng.choice(len(mixture), p=weights / weights.sum())
    _, a, b = mixture[idx]
    return float(np.clip(rng.beta(a, b) * 100.0, 0.0, 100.0))


def _discretize_rating(latent: float) -> StressRatingLevel:
    return StressRatingLevel(int(np.clip(round(latent), 0, 4)))


def _zipf_weights(n: int, exponent: float) -> np.ndarray:
    ranks = np.arange(1, n + 1, dtype=float)
    w = ranks**-exponent
    return w / w.sum()


def simulate(config: SimConfig) -> SimResult:
    """Generate events, tickets, annotations, and surveys for one cohort."""
    enrollment = _dt.date.fromisoformat(config.enrollment_day)
    n_days = config.n_weeks * 7
    seed_lexicon = load_seed_stressors()
    zipf = _zipf_weights(len(seed_lexicon), config.stressor_zipf_exponent)
    daily_hazard = 1.0 - config.day30_survival ** (1.0 / 30.0)

    ds = StudyDataset()
    truths: dict[str, dict] = {}

    action_pids: set[str] = set()
    pids = [f"p{i:03d}" for i in range(config.n_participants)]
    if config.action_n:
        action_pids = set(pids[: config.action_n])

    for pid in pids:
        rng = _participant_rng(config, pid)
        clock = StudyClock(pid, enrollment)

        # latent trajectories
        b0 = rng.normal(config.baseline_intensity_mean, config.baseline_intensity_sd)
        slope = rng.normal(config.weekly_slope_mean, config.weekly_slope_sd)
        f0 = rng.normal(config.frequency_baseline_mean, config.frequency_baseline_sd)
        fslope = rng.normal(config.frequency_slope_mean, config.frequency_slope_sd)

        action_week = None
        pre_slope = post_slope = slope
        if pid in action_pids:
            action_week = int(np.clip(round(rng.normal(config.action_week_mean,
                                                       config.action_week_sd)), 4, 11))
            if config.action_pre_slope_per_week is not None:
                pre_slope = config.action_pre_slope_per_week
            if config.action_post_slope_per_week is not None:
                post_slope = config.action_post_slope_per_week

        # geometric dropout, at least one active day
        days_active = 1
        while days_active < n_days and rng.random() > daily_hazard:
            days_active += 1

        ds.participants[pid] = ParticipantInfo(
            participant_id=pid,
            enrollment_day=enrollment,
            tz_offset_min=config.tz_offset_min,
            days_active=days_active,
        )

        def latent_intensity(day: int) -> float:
            week = day // 7 + 1
            if action_week is None:
                return b0 + slope * (week - 1)
            # action participants ramp daily and plateau entering the action
            # week: the pre-trend extrapolated across the excluded week meets
            # the post level exactly, so the only boundary jump is the
            # injected step
            ramp_end = 7 * (action_week - 1)
            if day < ramp_end:
                return b0 + pre_slope * day / 7.0
            plateau = b0 + pre_slope * ramp_end / 7.0
            return plateau + post_slope * max(0, day - 7 * action_week) / 7.0

        scheduler = PromptScheduler(policy=SamplingPolicy(), rng_seed=config.seed)
        bands = PercentileBands(25, 75, 95)
        history: list[PhysiologicalEvent] = []
        episode_index = 0
        event_counter = 0

        for day in range(days_active):
            week = day // 7 + 1
            if day % 7 == 0 and history:
                day_start_ts = local_to_epoch(
                    _dt.datetime.combine(enrollment + _dt.timedelta(days=day), _dt.time()),
                    config.tz_offset_min,
                )
                bands = update_percentiles(pid, history, now=day_start_ts)

            n_events = rng.poisson(config.events_per_day_mean)
            if n_events == 0:
                continue
            day_date = enrollment + _dt.timedelta(days=day)
            window_s = (WAKING_END_H - WAKING_START_H) * 3600
            offsets = np.sort(rng.integers(0, window_s, size=n_events))
            day_start = local_to_epoch(
                _dt.datetime.combine(day_date, _dt.time(WAKING_START_H)),
                config.tz_offset_min,
            )
            for off in offsets:
                event_counter += 1
                duration_s = int(
                    np.clip(np.exp(rng.normal(config.duration_log_mean_min,
                                              config.duration_log_sd)), 3, 60) * 60
                )
                start = int(day_start + off)
                event = PhysiologicalEvent(
                    event_id=f"{pid}-e{event_counter:05d}",
                    participant_id=pid,
                    start=start,
                    end=start + duration_s,
                    score=_sample_score(rng, config.score_mixture),
                    tz_offset_min=config.tz_offset_min,
                )
                history.append(event)
                ds.events[event.event_id] = event

                status, ticket = scheduler.offer(event, bands, now=event.end)
                if status != "issued":
                    continue
                ds.tickets.append(ticket)
                if rng.random() >= config.response_rate:
                    continue
                ticket.responded = True
                responded_at = ticket.issued_at + int(rng.integers(*config.response_delay_s))
                latent = latent_intensity(day) + rng.normal(0, config.rating_noise_sd)
                rating = _discretize_rating(latent)
                location = None
                stressor = None
                entry_duration = None
                gps = None
                if requires_stressor(rating) and rng.random() < config.stressor_completion_rate:
                    if rng.random() < config.novel_stressor_rate:
                        stressor = f"personal stressor {pid}-{episode_index}"
                    else:
                        stressor = seed_lexicon[int(rng.choice(len(seed_lexicon), p=zipf))]
                    loc_idx = (int(hashlib.sha256(
                        normalize_stressor(stressor).encode()).digest()[0])
                        if rng.random() < 0.6 else int(rng.integers(0, len(LOCATIONS))))
                    location = LOCATIONS[loc_idx % len(LOCATIONS)]
                    base_lat, base_lon = LOCATION_GPS[location]
                    gps = (round(base_lat + rng.normal(0, 0.002), 5),
                           round(base_lon + rng.normal(0, 0.002), 5))
                    entry_duration = float(max(
                        config.entry_time_floor_s,
                        config.entry_time_intercept_s
                        + config.entry_time_slope_s * episode_index
                        + rng.normal(0, config.entry_time_noise_sd),
                    ))
                    episode_index += 1
                ds.annotations[event.event_id] = StressAnnotation(
                    event_id=event.event_id,
                    participant_id=pid,
                    rating=rating,
                    stressor_text=stressor,
                    semantic_location=location,
                    gps=gps,
                    is_private=bool(rng.random() < config.private_rate),
                    created_at=responded_at,
                    entry_duration_s=entry_duration,
                )

        # weekly surveys for completed active weeks
        completed_weeks = min(config.n_weeks, days_active // 7)
        for week in range(1, completed_weeks + 1):
            forced = action_week is not None and week == action_week
            if not forced and rng.random() >= config.survey_response_rate:
                continue
            latent_f = f0 + fslope * (week - 1) + rng.normal(0, config.frequency_noise_sd)
            value = int(np.clip(round(latent_f), 1, 4))
            impacts = set()
            if rng.random() < 0.5:
                impacts.add("awareness of stress patterns")
            if rng.random() < 0.4:
                impacts.add("contextual understanding of stressors")
            if rng.random() < 0.3:
                impacts.add("motivated to reduce stress")
            if action_week is not None and week >= action_week:
                if week == action_week or rng.random() < 0.8:
                    impacts.add("took specific action")
                if rng.random() < 0.4:
                    impacts.add("saw reduction from behavior change")
            if not impacts:
                impacts.add("none")
            survey_day = enrollment + _dt.timedelta(days=week * 7 - 1)
            submitted = local_to_epoch(
                _dt.datetime.combine(survey_day, _dt.time(9)), config.tz_offset_min
            )
            ds.surveys.append(
                WeeklySurvey(
                    participant_id=pid,
                    week_index=week,
                    frequency_choice=_value_to_choice(value),
                    recall_ease=int(np.clip(round(rng.normal(config.recall_ease_mean,
                                                             config.recall_ease_sd)), 1, 5)),
                    viz_impacts=frozenset(impacts),
                    submitted_at=submitted,
                )
            )

        truths[pid] = {
            "intensity_intercept": float(b0),
            "intensity_slope": float(slope),
            "pre_action_slope": float(pre_slope),
            "post_action_slope": float(post_slope),
            "frequency_intercept": float(f0),
            "frequency_slope": float(fslope),
            "action_week": action_week,
            "days_active": days_active,
            "injected_step_z": 0.0,
        }

    result = SimResult(dataset=ds, truths=truths, config=config)
    if config.action_n and config.action_step_z != 0.0:
        inject_action_effect(
            result,
            {pid: truths[pid]["action_week"] for pid in action_pids},
            config.action_step_z,
        )
    return result


def _value_to_choice(value: int) -> str:
    from .core import FREQUENCY_CHOICES

    return FREQUENCY_CHOICES[value - 1]


def inject_action_effect(result: SimResult, subcohort: dict[str, int], step_z: float) -> SimResult:
    """Shift post-action daily intensities by ``step_z`` z-units, in place.

    The z-unit basis is each participant's pre-injection daily-mean standard
    deviation. Ratings stay integers: the raw shift is applied with
    probabilistic rounding so daily means move by the right amount in
    expectation. Ratings already at the 0/4 scale bounds cannot move past
    them, so large steps near the scale floor land attenuated. Ground truth
    is recorded in ``result.truths``.
    """
    ds = result.dataset
    rng = np.random.default_rng(np.random.SeedSequence([result.config.seed, 0x5E7]))
    for pid, action_week in sorted(subcohort.items()):
        rows = ds.annotated_events(participant_id=pid)
        daily: dict[int, list[int]] = {}
        clock = ds.clock(pid)
        for row in rows:
            day = clock.day_index(row.event.start, row.event.tz_offset_min)
            daily.setdefault(day, []).append(row.intensity)
        if len(daily) < 2:
            continue
        means = np.array([np.mean(v) for _, v in sorted(daily.items())])
        sd = float(means.std(ddof=0))
        if sd == 0.0:
            continue
        shift = step_z * sd
        whole = math.floor(abs(shift))
        frac = abs(shift) - whole
        sign = 1 if shift >= 0 else -1
        for row in rows:
            if row.week_index <= action_week:
                continue
            delta = sign * (whole + (1 if rng.random() < frac else 0))
            new_value = int(np.clip(row.intensity + delta, 0, 4))
            if new_value != row.intensity:
                ds.annotations[row.event.event_id] = ds.annotations[
                    row.event.event_id
                ].with_changes(rating=StressRatingLevel(new_value))
        if pid in result.truths:
            result.truths[pid]["injected_step_z"] = float(step_z)
            result.truths[pid]["action_week"] = int(action_week)
    return result
