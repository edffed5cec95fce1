"""Survey scheduling: one instance per week, mapping, aggregation."""

import datetime as dt

import pytest

from moods.core import StudyClock, ValidationError, WeeklySurvey
from moods.surveys import (
    SurveyConflictError,
    SurveyEngine,
    next_sunday_morning,
    weekly_frequency_means,
)

ENROLL = dt.date(2023, 11, 6)  # a Monday
CLOCK = StudyClock("p1", ENROLL)
WEEK3_DONE = int(dt.datetime(2023, 11, 27, 12, tzinfo=dt.timezone.utc).timestamp())


def make_survey(week=3, choice="More than once but at most twice", impacts=(), ease=2):
    return WeeklySurvey("p1", week, choice, recall_ease=ease, viz_impacts=frozenset(impacts))


def test_open_after_week_completes():
    engine = SurveyEngine()
    inst = engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    assert inst.week_index == 3
    assert len(inst.frequency_options) == 4
    assert inst.closes_at - inst.due_at == 48 * 3600


def test_reopen_conflicts():
    engine = SurveyEngine()
    engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    with pytest.raises(SurveyConflictError):
        engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE + 60)


def test_open_before_week_elapsed_fails():
    engine = SurveyEngine()
    mid_week1 = int(dt.datetime(2023, 11, 9, tzinfo=dt.timezone.utc).timestamp())
    with pytest.raises(ValidationError):
        engine.open_survey("p1", 1, CLOCK, now=mid_week1)


def test_due_on_local_sunday_morning():
    due = next_sunday_morning(dt.date(2023, 11, 13), tz_offset_min=-360)
    local = dt.datetime.fromtimestamp(due - 360 * 60, tz=dt.timezone.utc)
    assert local.weekday() == 6  # Sunday
    assert local.hour == 8


def test_submit_maps_frequency_and_impacts():
    engine = SurveyEngine()
    inst = engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    stored = engine.submit_survey(
        inst,
        make_survey(impacts=("awareness of stress patterns", "took specific action")),
        now=WEEK3_DONE + 100,
    )
    assert stored.frequency_value == 2
    assert stored.viz_impacts == {
        "awareness of stress patterns",
        "took specific action",
    }
    assert not stored.late


def test_late_submission_flagged_but_stored():
    engine = SurveyEngine()
    inst = engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    stored = engine.submit_survey(inst, make_survey(), now=inst.closes_at + 3600)
    assert stored.late


def test_exactly_one_response_per_week():
    engine = SurveyEngine()
    inst = engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    engine.submit_survey(inst, make_survey(), now=WEEK3_DONE + 1)
    with pytest.raises(SurveyConflictError):
        engine.submit_survey(inst, make_survey(), now=WEEK3_DONE + 2)


def test_recall_ease_near_easy_pole():
    engine = SurveyEngine()
    inst = engine.open_survey("p1", 3, CLOCK, now=WEEK3_DONE)
    stored = engine.submit_survey(inst, make_survey(ease=2), now=WEEK3_DONE + 1)
    assert stored.recall_ease == 2


def test_weekly_means_skip_missing_weeks():
    surveys = [
        WeeklySurvey("a", 1, "At most once", 2),
        WeeklySurvey("b", 1, "More than twice but at most three times", 2),
        WeeklySurvey("a", 3, "Four or more times", 2),
    ]
    means = weekly_frequency_means(surveys, n_weeks=4)
    assert means[0] == pytest.approx(2.0)  # (1 + 3) / 2
    assert means[1] is None  # missing, not zero-filled
    assert means[2] == pytest.approx(4.0)
    assert means[3] is None
