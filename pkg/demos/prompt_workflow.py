"""Walkthrough: the momentary logging loop against the live platform.

One detected event flows through prompting, rating, autocomplete, stressor
annotation, an edit, and finally the dashboard timeline — using the same
Platform object the HTTP service wraps.
"""

import datetime as dt
import tempfile

from moods.platform import Platform

T0 = int(dt.datetime(2024, 3, 4, 9, 30, tzinfo=dt.timezone.utc).timestamp())
clock = {"now": T0}

with tempfile.TemporaryDirectory() as tmp:
    platform = Platform(tmp, now_fn=lambda: clock["now"])

    # a high-likelihood event concludes; the engine decides on prompting
    clock["now"] = T0 + 720
    result = platform.ingest_event({
        "event_id": "evt-1", "participant_id": "demo",
        "start": T0, "end": T0 + 720, "score": 97.0, "tz_offset_min": -360,
    })
    print(f"ingest: {result['status']} ticket={result['ticket_id']}")

    pending = platform.pending_prompts("demo")
    print(f"pending prompts: {len(pending)}")

    # participant rates the event 'Stressed' -> stressor task opens
    clock["now"] += 45
    response = platform.submit_rating("evt-1", rating=4, gps=(35.1, -89.9))
    task = response["stressor_task"]
    print(f"stressor task context: date={task['date']} start={task['start_time']} "
          f"duration={task['duration_min']}min score={task['score']}")

    # typeahead over the seeded vocabulary
    for query in ("tra", "work"):
        suggestions = platform.annotations.autocomplete("demo", query, limit=3)
        print(f"autocomplete {query!r}: {suggestions}")

    clock["now"] += 42
    response = platform.complete_annotation("evt-1", "traffic/transportation", "car")
    ann = response["annotation"]
    print(f"annotated: {ann['stressor_text']} @ {ann['semantic_location']} "
          f"(entry took {ann['entry_duration_s']:.0f}s)")

    # second thoughts: upgrade the rating, then inspect the timeline
    clock["now"] += 300
    platform.edit_annotation("evt-1", {"semantic_location": "highway"})
    timeline = platform.dashboard("demo")
    print(f"dashboard rows: {len(timeline)}; "
          f"location now {timeline[0]['annotation']['semantic_location']!r}")

    # manual self-report joins the same timeline
    platform.manual_report("demo", rating=3, stressor_text="unpleasant conversation",
                           semantic_location="office", at=clock["now"] - 600)
    print(f"after manual report: {len(platform.dashboard('demo'))} rows")
