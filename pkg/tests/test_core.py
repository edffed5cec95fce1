"""Domain mappings, orderings, and record round-trips."""

import datetime as dt

import pytest

from moods.core import (
    FREQUENCY_CHOICES,
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    StudyClock,
    ValidationError,
    WeeklySurvey,
    epoch_to_local,
    frequency_to_value,
    local_to_epoch,
    rating_to_intensity,
    requires_stressor,
    visible_annotations,
)


def test_rating_intensity_endpoints():
    assert rating_to_intensity(StressRatingLevel.NOT_STRESSED) == 0
    assert rating_to_intensity(StressRatingLevel.STRESSED) == 4
    assert rating_to_intensity(StressRatingLevel.UNSURE) == 2


def test_rating_mapping_bijective_and_increasing():
    values = [rating_to_intensity(r) for r in StressRatingLevel]
    assert values == sorted(values)
    assert len(set(values)) == 5
    for r in StressRatingLevel:
        assert StressRatingLevel(rating_to_intensity(r)) == r


def test_frequency_values():
    assert frequency_to_value("At most once") == 1
    assert frequency_to_value("More than twice but at most three times") == 3
    assert frequency_to_value("Four or more times") == 4
    values = [frequency_to_value(c) for c in FREQUENCY_CHOICES]
    assert values == [1, 2, 3, 4]


def test_frequency_unknown_choice():
    with pytest.raises(ValidationError):
        frequency_to_value("never")


def test_requires_stressor_threshold():
    assert not requires_stressor(StressRatingLevel.NOT_STRESSED)
    assert not requires_stressor(StressRatingLevel.PROBABLY_NOT_STRESSED)
    assert requires_stressor(StressRatingLevel.UNSURE)
    assert requires_stressor(StressRatingLevel.PROBABLY_STRESSED)
    assert requires_stressor(StressRatingLevel.STRESSED)


def test_event_invariants():
    with pytest.raises(ValidationError):
        PhysiologicalEvent("e", "p", start=100, end=100, score=50)
    with pytest.raises(ValidationError):
        PhysiologicalEvent("e", "p", start=100, end=200, score=101)
    event = PhysiologicalEvent("e", "p", start=0, end=720, score=100)
    assert event.duration_min == 12.0


def test_event_record_round_trip():
    event = PhysiologicalEvent("e1", "p1", 1_700_000_000, 1_700_000_600, 87.5, -300)
    assert PhysiologicalEvent.from_record(event.to_record()) == event


def test_annotation_record_round_trip():
    ann = StressAnnotation(
        event_id="e1",
        participant_id="p1",
        rating=StressRatingLevel.PROBABLY_STRESSED,
        stressor_text="anxiety",
        semantic_location="home",
        gps=(35.0, -90.0),
        created_at=10,
        edited_at=20,
        entry_duration_s=31.0,
    )
    assert StressAnnotation.from_record(ann.to_record()) == ann


def test_survey_validation():
    with pytest.raises(ValidationError):
        WeeklySurvey("p1", 1, "At most once", recall_ease=6)
    with pytest.raises(ValidationError):
        WeeklySurvey("p1", 0, "At most once", recall_ease=2)
    with pytest.raises(ValidationError):
        WeeklySurvey("p1", 1, "At most once", recall_ease=2,
                     viz_impacts=frozenset({"not an option"}))
    survey = WeeklySurvey("p1", 3, "Four or more times", recall_ease=2,
                          viz_impacts=frozenset({"took specific action"}))
    assert survey.frequency_value == 4
    assert WeeklySurvey.from_record(survey.to_record()) == survey


def test_study_clock_weeks():
    clock = StudyClock("p1", dt.date(2023, 11, 6))
    assert clock.week_of_date(dt.date(2023, 11, 6)) == 1
    assert clock.week_of_date(dt.date(2023, 11, 12)) == 1
    assert clock.week_of_date(dt.date(2023, 11, 13)) == 2
    assert clock.week_of_date(dt.date(2024, 2, 11)) == 14
    with pytest.raises(ValidationError):
        clock.week_of_date(dt.date(2023, 11, 5))


def test_local_time_round_trip():
    ts = 1_700_000_000
    for offset in (-480, -300, 0, 60, 330):
        local = epoch_to_local(ts, offset)
        assert local_to_epoch(local, offset) == ts
    # offset shifts wall clock
    assert (epoch_to_local(ts, -300) - epoch_to_local(ts, 0)).total_seconds() == -300 * 60


def test_visible_annotations_filters_private():
    keep = StressAnnotation("e1", "p1", StressRatingLevel.STRESSED, created_at=1)
    drop = StressAnnotation("e2", "p1", StressRatingLevel.STRESSED, is_private=True, created_at=1)
    assert visible_annotations([keep, drop]) == [keep]
