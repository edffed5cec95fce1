"""Sensor-triggered stress logging platform.

Subpackages: core domain types, event sampling, annotation store, surveys,
chart builders (viz), statistics (stats), cohort simulator (sim), storage,
analysis pipeline, HTTP service, and CLI.
"""

from .core import (
    FREQUENCY_CHOICES,
    PhysiologicalEvent,
    StressAnnotation,
    StressRatingLevel,
    StudyClock,
    ValidationError,
    VIZ_IMPACT_OPTIONS,
    WeeklySurvey,
    frequency_to_value,
    rating_to_intensity,
    requires_stressor,
)
from .dataset import AnnotatedEvent, ParticipantInfo, StudyDataset

__version__ = "0.1.0"

__all__ = [
    "FREQUENCY_CHOICES",
    "VIZ_IMPACT_OPTIONS",
    "PhysiologicalEvent",
    "StressAnnotation",
    "StressRatingLevel",
    "StudyClock",
    "ValidationError",
    "WeeklySurvey",
    "frequency_to_value",
    "rating_to_intensity",
    "requires_stressor",
    "AnnotatedEvent",
    "ParticipantInfo",
    "StudyDataset",
    "__version__",
]
