"""Week-indexed self-reflection visualization documents."""

from .spec import ChartSpec, canonical_chart_json
from .schedule import BUNDLE_SCHEDULE, CHART_IDS, charts_for_week
from .bundle import ChartBundle, assemble_bundle, write_bundle
from . import builders

__all__ = [
    "ChartSpec",
    "ChartBundle",
    "CHART_IDS",
    "BUNDLE_SCHEDULE",
    "canonical_chart_json",
    "charts_for_week",
    "assemble_bundle",
    "write_bundle",
    "builders",
]
