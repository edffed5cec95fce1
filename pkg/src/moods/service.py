"""HTTP gateway: versioned JSON API over the platform.

Timestamps on the wire are integer epoch seconds plus ``tz_offset_min``.
Mutating routes accept a client-supplied ``request_id``; replays return the
original response unchanged. Auth is single-tenant: a static token ->
participant map (open mode when no tokens are configured).
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.responses import JSONResponse

from .annotations import ExpiredTicketError, NotFoundError
from .core import ValidationError
from .platform import Platform
from .surveys import SurveyConflictError
from . import analysis
from .viz import assemble_bundle

DEFAULT_DATA_DIR = os.environ.get("MOODS_DATA_DIR", "./moods-data")


def error_body(code: str, message: str) -> dict:
    return {"code": code, "message": message}


def create_app(
    data_dir: Optional[str] = None,
    tokens: Optional[dict[str, str]] = None,
    rng_seed: int = 0,
    now_fn=None,
) -> FastAPI:
    platform = Platform(data_dir or DEFAULT_DATA_DIR, rng_seed=rng_seed, now_fn=now_fn)
    tokens = tokens or {}
    app = FastAPI(title="moods", version="1")
    app.state.platform = platform

    def resolve_participant(
        request: Request,
        participant_id: Optional[str] = None,
        authorization: Optional[str] = Header(default=None),
    ) -> Optional[str]:
        if tokens:
            if not authorization or not authorization.startswith("Bearer "):
                raise HTTPException(401, detail=error_body("unauthorized", "bearer token required"))
            token = authorization.removeprefix("Bearer ").strip()
            pid = tokens.get(token)
            if pid is None:
                raise HTTPException(401, detail=error_body("unauthorized", "unknown token"))
            return pid
        return participant_id

    @app.exception_handler(HTTPException)
    async def _http(_, exc: HTTPException):
        # keep the wire contract flat: {code, message}
        if isinstance(exc.detail, dict) and "code" in exc.detail:
            body = exc.detail
        else:
            body = error_body("error", str(exc.detail))
        return JSONResponse(status_code=exc.status_code, content=body)

    @app.exception_handler(ValidationError)
    async def _validation(_, exc):
        return JSONResponse(status_code=400, content=error_body("validation", str(exc)))

    @app.exception_handler(NotFoundError)
    async def _not_found(_, exc):
        return JSONResponse(status_code=404, content=error_body("not_found", str(exc)))

    @app.exception_handler(ExpiredTicketError)
    async def _expired(_, exc):
        return JSONResponse(status_code=410, content=error_body("expired", str(exc)))

    @app.exception_handler(SurveyConflictError)
    async def _conflict(_, exc):
        return JSONResponse(status_code=409, content=error_body("conflict", str(exc)))

    @app.post("/v1/events")
    async def ingest_events(request: Request):
        body = await request.json()
        records = body["events"] if isinstance(body, dict) and "events" in body else body
        if isinstance(records, dict):
            records = [records]
        results = [platform.ingest_event(rec) for rec in records]
        return {"results": results}

    @app.get("/v1/prompts/pending")
    def prompts_pending(pid: Optional[str] = Depends(resolve_participant)):
        if pid is None:
            raise HTTPException(400, detail=error_body("validation", "participant_id required"))
        return {"prompts": platform.pending_prompts(pid)}

    @app.post("/v1/ratings")
    def post_rating(body: dict):
        cached = platform.cached_response(body.get("request_id"))
        if cached is not None:
            return cached
        event_id = body.get("event_id") or str(body.get("ticket_id", "")).removeprefix("t-")
        gps = tuple(body["gps"]) if body.get("gps") else None
        response = platform.submit_rating(event_id, body["rating"], gps=gps)
        return platform.cache_response(body.get("request_id"), response)

    @app.get("/v1/autocomplete")
    def autocomplete(
        q: str = Query(""),
        limit: int = Query(8, ge=1, le=50),
        pid: Optional[str] = Depends(resolve_participant),
    ):
        if pid is None:
            raise HTTPException(400, detail=error_body("validation", "participant_id required"))
        return {"query": q, "suggestions": platform.annotations.autocomplete(pid, q, limit)}

    @app.post("/v1/annotations")
    def post_annotation(body: dict):
        cached = platform.cached_response(body.get("request_id"))
        if cached is not None:
            return cached
        response = platform.complete_annotation(
            body["event_id"], body.get("stressor_text", ""), body.get("semantic_location")
        )
        return platform.cache_response(body.get("request_id"), response)

    @app.patch("/v1/annotations/{event_id}")
    def patch_annotation(event_id: str, body: dict):
        cached = platform.cached_response(body.get("request_id"))
        if cached is not None:
            return cached
        patch = {k: v for k, v in body.items() if k != "request_id"}
        response = platform.edit_annotation(event_id, patch)
        return platform.cache_response(body.get("request_id"), response)

    @app.post("/v1/annotations/manual")
    def post_manual(body: dict):
        cached = platform.cached_response(body.get("request_id"))
        if cached is not None:
            return cached
        response = platform.manual_report(
            body["participant_id"],
            body["rating"],
            body.get("stressor_text", ""),
            body.get("semantic_location"),
            at=int(body["at"]),
            tz_offset_min=body.get("tz_offset_min"),
            gps=tuple(body["gps"]) if body.get("gps") else None,
        )
        return platform.cache_response(body.get("request_id"), response)

    @app.get("/v1/dashboard")
    def dashboard(pid: Optional[str] = Depends(resolve_participant)):
        if pid is None:
            raise HTTPException(400, detail=error_body("validation", "participant_id required"))
        return {"timeline": platform.dashboard(pid)}

    @app.get("/v1/visualizations/{week}")
    def visualizations(week: int, pid: Optional[str] = Depends(resolve_participant)):
        if pid is None:
            raise HTTPException(400, detail=error_body("validation", "participant_id required"))
        if week < 1:
            raise HTTPException(400, detail=error_body("validation", "week must be >= 1"))
        bundle = assemble_bundle(platform.dataset(), pid, week)
        return {
            "manifest": bundle.manifest(),
            "charts": [c.to_record() for c in bundle.charts],
        }

    @app.get("/v1/surveys/current")
    def current_survey(pid: Optional[str] = Depends(resolve_participant)):
        if pid is None:
            raise HTTPException(400, detail=error_body("validation", "participant_id required"))
        return {"survey": platform.current_survey(pid)}

    @app.post("/v1/surveys")
    def post_survey(body: dict):
        cached = platform.cached_response(body.get("request_id"))
        if cached is not None:
            return cached
        response = platform.submit_survey(
            body["participant_id"],
            int(body["week_index"]),
            body["frequency_choice"],
            int(body["recall_ease"]),
            body.get("viz_impacts", ()),
        )
        return platform.cache_response(body.get("request_id"), response)

    @app.get("/v1/reports/trends")
    def report_trends(metric: str = Query("intensity"), n_weeks: int = Query(14)):
        ds = platform.dataset()
        if metric == "intensity":
            report = analysis.intensity_trend(ds, n_weeks)
        elif metric == "frequency":
            report = analysis.frequency_trend(ds, n_weeks)
        else:
            raise HTTPException(
                400, detail=error_body("validation", "metric must be intensity|frequency")
            )
        return {"metric": metric, "trend": report.to_record()}

    return app
