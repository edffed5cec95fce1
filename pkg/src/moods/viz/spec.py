"""Self-contained chart documents.

A ChartSpec carries everything a renderer needs: labeled series with point
values and tap/hover detail payloads, axis and legend metadata, and a
color-blind-safe palette identifier. Long labels are abbreviated to the
initial letters of their words; the detail payload always carries the full
text. Serialization is canonical (sorted keys, stable series order) so
identical data yields byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

SCHEMA_VERSION = 1
ABBREVIATION_MAX_LEN = 18

#: Okabe-Ito palette: the categorical scale safe for common color blindness.
DEFAULT_PALETTE = "okabe_ito"
SEQUENTIAL_PALETTE = "viridis"

TIME_BLOCKS = ("night", "morning", "afternoon", "evening")


def time_block(hour: int) -> str:
    """night 00-06, morning 06-12, afternoon 12-18, evening 18-24 (local)."""
    return TIME_BLOCKS[hour // 6]


def abbreviate(text: str) -> str:
    """Initial letters of words for labels longer than 18 characters."""
    if len(text) <= ABBREVIATION_MAX_LEN:
        return text
    words = [w for w in "".join(c if c.isalnum() else " " for c in text).split() if w]
    return "".join(w[0].upper() for w in words) or text[:ABBREVIATION_MAX_LEN]


def label_with_detail(text: str) -> tuple[str, dict]:
    """(display label, detail payload carrying the expanded text)."""
    short = abbreviate(text)
    detail = {"full_text": text} if short != text else {}
    return short, detail


@dataclass
class ChartSpec:
    chart_id: str
    week_index: int
    title: str
    kind: str
    series: list = field(default_factory=list)
    axes: dict = field(default_factory=dict)
    legend: dict = field(default_factory=dict)
    color_scale: dict = field(default_factory=lambda: {"palette": DEFAULT_PALETTE})
    flags: dict = field(default_factory=dict)
    interactive: bool = True

    def to_record(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "chart_id": self.chart_id,
            "week_index": self.week_index,
            "title": self.title,
            "kind": self.kind,
            "series": self.series,
            "axes": self.axes,
            "legend": self.legend,
            "color_scale": self.color_scale,
            "flags": self.flags,
            "interactive": self.interactive,
        }


def canonical_chart_json(spec: ChartSpec) -> str:
    return json.dumps(spec.to_record(), sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))
