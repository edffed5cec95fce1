"""Gateway routes: workflow round-trips, error codes, idempotency."""

import datetime as dt

import pytest
from fastapi.testclient import TestClient

from moods.service import create_app

T0 = int(dt.datetime(2024, 1, 1, 14, 0, tzinfo=dt.timezone.utc).timestamp())


def event_record(event_id, start, score=99.0, pid="p1", duration_s=600):
    return {
        "event_id": event_id,
        "participant_id": pid,
        "start": start,
        "end": start + duration_s,
        "score": score,
        "tz_offset_min": 0,
    }


@pytest.fixture()
def client(tmp_path):
    clock = {"now": T0 + 700}
    app = create_app(str(tmp_path / "data"), now_fn=lambda: clock["now"])
    client = TestClient(app)
    client.clock = clock
    return client


def ingest_prompted_event(client, event_id="e1", start=T0, score=99.0):
    resp = client.post("/v1/events", json=event_record(event_id, start, score))
    assert resp.status_code == 200
    result = resp.json()["results"][0]
    return result


class TestEventsAndPrompts:
    def test_ingest_high_score_issues_ticket(self, client):
        result = ingest_prompted_event(client)
        assert result["status"] == "issued"
        assert result["ticket_id"] == "t-e1"

    def test_batch_ingest(self, client):
        records = [event_record(f"e{i}", T0 + i * 3600) for i in range(3)]
        client.clock["now"] = T0 + 4 * 3600
        resp = client.post("/v1/events", json={"events": records})
        assert resp.status_code == 200
        assert len(resp.json()["results"]) == 3

    def test_pending_prompts_include_event_context(self, client):
        ingest_prompted_event(client)
        resp = client.get("/v1/prompts/pending", params={"participant_id": "p1"})
        prompts = resp.json()["prompts"]
        assert len(prompts) == 1
        assert prompts[0]["event"]["event_id"] == "e1"

    def test_invalid_event_rejected(self, client):
        bad = event_record("e1", T0)
        bad["score"] = 150.0
        resp = client.post("/v1/events", json=bad)
        assert resp.status_code == 400
        assert resp.json()["code"] == "validation"


class TestRatingFlow:
    def test_rating_then_annotation_round_trip(self, client):
        ingest_prompted_event(client)
        resp = client.post("/v1/ratings", json={
            "request_id": "r1", "event_id": "e1", "rating": 4, "gps": [35.1, -89.9],
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["annotation"]["rating"] == 4
        assert body["stressor_task"]["event_id"] == "e1"

        resp = client.get("/v1/autocomplete", params={
            "q": "tra", "limit": 5, "participant_id": "p1"})
        assert "traffic/transportation" in resp.json()["suggestions"]

        resp = client.post("/v1/annotations", json={
            "request_id": "r2", "event_id": "e1",
            "stressor_text": "traffic/transportation", "semantic_location": "car",
        })
        assert resp.status_code == 200
        assert resp.json()["annotation"]["stressor_text"] == "traffic/transportation"

        resp = client.get("/v1/dashboard", params={"participant_id": "p1"})
        timeline = resp.json()["timeline"]
        assert len(timeline) == 1
        assert timeline[0]["annotation"]["semantic_location"] == "car"

    def test_not_stressed_rating_has_no_task(self, client):
        ingest_prompted_event(client)
        resp = client.post("/v1/ratings", json={"event_id": "e1", "rating": 0})
        assert resp.json()["stressor_task"] is None

    def test_expired_ticket_returns_410(self, client):
        ingest_prompted_event(client)
        client.clock["now"] = T0 + 700 + 25 * 3600
        resp = client.post("/v1/ratings", json={"event_id": "e1", "rating": 2})
        assert resp.status_code == 410
        assert resp.json()["code"] == "expired"

    def test_unknown_event_returns_404(self, client):
        resp = client.post("/v1/ratings", json={"event_id": "nope", "rating": 2})
        assert resp.status_code == 404

    def test_rating_idempotent_by_request_id(self, client):
        ingest_prompted_event(client)
        first = client.post("/v1/ratings", json={
            "request_id": "rr", "event_id": "e1", "rating": 4}).json()
        replay = client.post("/v1/ratings", json={
            "request_id": "rr", "event_id": "e1", "rating": 0}).json()
        assert replay == first

    def test_edit_annotation_and_privacy(self, client):
        ingest_prompted_event(client)
        client.post("/v1/ratings", json={"event_id": "e1", "rating": 4})
        client.post("/v1/annotations", json={
            "event_id": "e1", "stressor_text": "work", "semantic_location": "office"})
        resp = client.patch("/v1/annotations/e1", json={"is_private": True})
        assert resp.json()["annotation"]["is_private"] is True
        # private events vanish from charts
        resp = client.get("/v1/visualizations/1", params={"participant_id": "p1"})
        charts = resp.json()["charts"]
        summary = [c for c in charts if c["chart_id"] == "overall_summary"][0]
        assert all(g["value"] == 0.0 for g in summary["series"][0]["points"])

    def test_manual_report(self, client):
        resp = client.post("/v1/annotations/manual", json={
            "request_id": "m1", "participant_id": "p9", "rating": 4,
            "stressor_text": "heavy traffic", "semantic_location": "car",
            "at": T0, "tz_offset_min": 0,
        })
        assert resp.status_code == 200
        assert resp.json()["annotation"]["is_manual"] is True
        timeline = client.get("/v1/dashboard", params={"participant_id": "p9"}).json()["timeline"]
        assert len(timeline) == 1

    def test_manual_report_not_stressed_rejected(self, client):
        resp = client.post("/v1/annotations/manual", json={
            "participant_id": "p9", "rating": 0, "stressor_text": "x",
            "semantic_location": None, "at": T0,
        })
        assert resp.status_code == 400


class TestVisualizationRoutes:
    def test_week_one_manifest_has_two_charts(self, client):
        ingest_prompted_event(client)
        client.post("/v1/ratings", json={"event_id": "e1", "rating": 4})
        client.post("/v1/annotations", json={
            "event_id": "e1", "stressor_text": "work", "semantic_location": "office"})
        resp = client.get("/v1/visualizations/1", params={"participant_id": "p1"})
        body = resp.json()
        assert len(body["manifest"]["charts"]) == 2
        assert len(body["charts"]) == 2

    def test_week_fourteen_has_sixteen(self, client):
        ingest_prompted_event(client)
        resp = client.get("/v1/visualizations/14", params={"participant_id": "p1"})
        assert len(resp.json()["charts"]) == 16

    def test_bad_week_rejected(self, client):
        ingest_prompted_event(client)
        resp = client.get("/v1/visualizations/0", params={"participant_id": "p1"})
        assert resp.status_code == 400


class TestSurveysAndReports:
    def seed_weeks(self, client, pid="p1", weeks=4):
        k = 0
        for week in range(weeks):
            for day in (1, 3, 5):
                start = T0 + (week * 7 + day) * 86400
                client.clock["now"] = start + 700
                ingest_prompted_event(client, event_id=f"w{week}d{day}", start=start)
                client.post("/v1/ratings", json={
                    "event_id": f"w{week}d{day}", "rating": (4 - week) if week < 4 else 1})
                k += 1
        # enrollment is the first event's local date (study day 1 here)
        client.clock["now"] = T0 + (weeks * 7 + 1) * 86400 + 3600

    def test_current_survey_and_submit(self, client):
        self.seed_weeks(client, weeks=1)
        resp = client.get("/v1/surveys/current", params={"participant_id": "p1"})
        survey = resp.json()["survey"]
        assert survey["week_index"] == 1
        assert len(survey["frequency_options"]) == 4
        resp = client.post("/v1/surveys", json={
            "participant_id": "p1", "week_index": 1,
            "frequency_choice": "More than once but at most twice",
            "recall_ease": 2,
            "viz_impacts": ["awareness of stress patterns"],
        })
        assert resp.status_code == 200
        assert resp.json()["frequency_value"] == 2
        # after submitting, no current survey remains for that week
        resp = client.get("/v1/surveys/current", params={"participant_id": "p1"})
        assert resp.json()["survey"] is None

    def test_duplicate_survey_conflicts(self, client):
        self.seed_weeks(client, weeks=1)
        body = {
            "participant_id": "p1", "week_index": 1,
            "frequency_choice": "At most once", "recall_ease": 2,
        }
        assert client.post("/v1/surveys", json=body).status_code == 200
        assert client.post("/v1/surveys", json=body).status_code == 409

    def test_trend_report_route(self, client):
        self.seed_weeks(client, weeks=4)
        resp = client.get("/v1/reports/trends", params={"metric": "intensity", "n_weeks": 4})
        trend = resp.json()["trend"]
        assert trend["slope"] < 0  # ratings decline 4,3,2,1 across weeks
        resp = client.get("/v1/reports/trends", params={"metric": "nope"})
        assert resp.status_code == 400


class TestAuthMode:
    def test_token_scoping(self, tmp_path):
        clock = {"now": T0 + 700}
        app = create_app(str(tmp_path / "data"), tokens={"secret-a": "alice"},
                         now_fn=lambda: clock["now"])
        client = TestClient(app)
        resp = client.get("/v1/dashboard")
        assert resp.status_code == 401
        resp = client.get("/v1/dashboard", headers={"Authorization": "Bearer wrong"})
        assert resp.status_code == 401
        resp = client.get("/v1/dashboard", headers={"Authorization": "Bearer secret-a"})
        assert resp.status_code == 200


class TestRestartRecovery:
    def test_state_survives_restart(self, tmp_path):
        clock = {"now": T0 + 700}
        data = str(tmp_path / "data")
        app = create_app(data, now_fn=lambda: clock["now"])
        with TestClient(app) as client:
            client.post("/v1/events", json=event_record("e1", T0))
            client.post("/v1/ratings", json={"event_id": "e1", "rating": 4})
            client.post("/v1/annotations", json={
                "event_id": "e1", "stressor_text": "grading exams",
                "semantic_location": "office"})
        app2 = create_app(data, now_fn=lambda: clock["now"])
        with TestClient(app2) as client:
            timeline = client.get("/v1/dashboard",
                                  params={"participant_id": "p1"}).json()["timeline"]
            assert timeline[0]["annotation"]["stressor_text"] == "grading exams"
            # learned lexicon entries survive too
            sugg = client.get("/v1/autocomplete", params={
                "q": "grad", "participant_id": "p1"}).json()["suggestions"]
            assert "grading exams" in sugg
