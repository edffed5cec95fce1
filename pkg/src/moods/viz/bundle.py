"""Assembling and persisting week-indexed chart bundles."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..dataset import StudyDataset
from .builders import BUILDERS
from .schedule import charts_for_week
from .spec import ChartSpec, canonical_chart_json


@dataclass
class ChartBundle:
    participant_id: str
    week_index: int
    charts: list[ChartSpec]

    @property
    def chart_ids(self) -> tuple[str, ...]:
        return tuple(c.chart_id for c in self.charts)

    def manifest(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "week_index": self.week_index,
            "charts": [
                {"chart_id": c.chart_id, "file": f"{c.chart_id}.json"} for c in self.charts
            ],
        }


def assemble_bundle(ds: StudyDataset, participant_id: str, week_index: int) -> ChartBundle:
    """Build the scheduled chart set over all data from weeks 1..week_index."""
    if week_index < 1:
        raise ValueError("week_index must be >= 1")
    rows = ds.annotated_events(participant_id=participant_id, up_to_week=week_index)
    charts = [
        BUILDERS[chart_id](rows, week_index) for chart_id in charts_for_week(week_index)
    ]
    return ChartBundle(participant_id=participant_id, week_index=week_index, charts=charts)


def write_bundle(bundle: ChartBundle, out_dir: str | Path) -> Path:
    """One JSON document per chart plus a manifest; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for chart in bundle.charts:
        (out / f"{chart.chart_id}.json").write_text(
            canonical_chart_json(chart), encoding="utf-8"
        )
    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps(bundle.manifest(), sort_keys=True, ensure_ascii=False, indent=1),
        encoding="utf-8",
    )
    return manifest_path
