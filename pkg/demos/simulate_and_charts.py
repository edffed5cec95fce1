"""Walkthrough: from a simulated participant to the week-14 chart bundle.

Shows the cumulative bundle schedule and pokes at a few chart documents the
renderer consumes.
"""

import json

from moods.sim import SimConfig, simulate
from moods.viz import assemble_bundle, charts_for_week, write_bundle

cfg = SimConfig(n_participants=3, seed=11, day30_survival=1.0)
ds = simulate(cfg).dataset
pid = sorted(ds.participants)[0]

print("bundle schedule (cumulative):")
for week in (1, 2, 5, 8, 14):
    print(f"  week {week:>2}: {len(charts_for_week(week))} charts")

bundle = assemble_bundle(ds, pid, week_index=14)
print(f"\nbuilt week-14 bundle for {pid}: {len(bundle.charts)} charts")

by_id = {c.chart_id: c for c in bundle.charts}

summary = by_id["overall_summary"]
for gauge in summary.series[0]["points"]:
    print(f"  {gauge['label']}: {gauge['value']}")

prevalence = by_id["stressor_prevalence"]
top = prevalence.series[0]["points"][:3]
print("\ntop stressors by share of stressed time:")
for seg in top:
    full = seg.get("detail", {}).get("full_text", seg["label"])
    print(f"  {full}: {seg['value']:.1f}%")

violin = by_id["duration_distribution"]
print("\nepisode durations (minutes), top reported stressors:")
for s in violin.series:
    box = s["box"]
    print(f"  {s['label']}: q1={box['q1']:.1f} median={box['median']:.1f} q3={box['q3']:.1f}")

out = write_bundle(bundle, f"runs/demo-bundle/{pid}")
print(f"\nwrote bundle -> {out.parent}")
manifest = json.loads(out.read_text())
print(f"manifest lists {len(manifest['charts'])} chart files")
