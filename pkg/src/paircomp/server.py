"""HTTP API over the session engine (FastAPI).

All domain behavior lives in the library modules; handlers only translate
between JSON bodies and session calls, serialize scale values as exact
num/den pairs, and map domain errors to status codes:
404 unknown id, 409 wrong state, 422 bad value or illegal revision target.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .errors import (
    BadDimension,
    BadScale,
    BadValue,
    DuplicateLabels,
    IllegalRevisionTarget,
    NoCompletedSessions,
    SessionIncomplete,
    ValueNotInScale,
    WrongState,
)
from .matrix_io import scale_from_dict
from .session import (
    Accepted,
    ConflictDetected,
    StudyStore,
    next_pair,
    session_results,
    submit_judgment,
    submit_revision,
)
from .transitivity import classify_triad

_RELATION_ORDER = ("more", "equal", "less")


class StudyBody(BaseModel):
    labels: list[str]
    scale: dict


class SessionBody(BaseModel):
    expert: str = "anonymous"


class JudgmentBody(BaseModel):
    value_num: int
    value_den: int


class RevisionBody(BaseModel):
    i: int
    j: int
    value_num: int
    value_den: int


def _fraction(num: int, den: int) -> Fraction:
    try:
        return Fraction(num, den)
    except ZeroDivisionError:
        raise HTTPException(status_code=422, detail="value_den must be nonzero")


def _progress(session) -> dict:
    return {"committed": session.committed, "total": session.total_pairs}


def _outcome_payload(session, res) -> dict:
    if isinstance(res, Accepted):
        return {
            "status": "accepted",
            "done": res.done,
            "progress": {"committed": res.committed, "total": res.total},
        }
    assert isinstance(res, ConflictDetected)
    triads = []
    for t in res.triads:
        verdict = classify_triad(t.r_mj, t.r_ij, t.r_mi)
        triads.append(
            {
                "m": t.m,
                "i": t.i,
                "j": t.j,
                "r_mj": t.r_mj.value,
                "r_ij": t.r_ij.value,
                "r_mi": t.r_mi.value,
                "required": verdict.required.value if verdict.required else None,
            }
        )
    admissible = [r for r in _RELATION_ORDER if any(a.value == r for a in res.admissible)]
    return {
        "status": "conflict",
        "triads": triads,
        "candidates": [{"i": i, "j": j} for i, j in res.candidates.pairs],
        "admissible": admissible,
        "pending": {
            "value_num": res.pending.numerator,
            "value_den": res.pending.denominator,
        },
        "stalled": session.stalled,
        "progress": {"committed": res.committed, "total": res.total},
    }


def create_app(store: StudyStore) -> FastAPI:
    app = FastAPI(title="paircomp")
    # browser clients are typically served from a different origin than the API
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _session(sid: str):
        try:
            return store.get_session(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")

    @app.post("/studies", status_code=201)
    def create_study(body: StudyBody):
        try:
            scale = scale_from_dict(body.scale)
            study = store.create_study(body.labels, scale)
        except (BadScale, BadDimension, DuplicateLabels, KeyError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"study_id": study.id}

    @app.post("/studies/{study_id}/sessions", status_code=201)
    def create_session(study_id: str, body: SessionBody):
        try:
            session = store.create_session(study_id, body.expert)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown study {study_id}")
        return {"session_id": session.id}

    @app.get("/sessions/{sid}/next")
    def get_next(sid: str):
        session = _session(sid)
        with store.session_lock(sid):
            try:
                pair = next_pair(session)
            except WrongState as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            if pair is None:
                return {"done": True, "progress": _progress(session)}
            return {
                "i": pair.i,
                "j": pair.j,
                "label_i": pair.label_i,
                "label_j": pair.label_j,
                "choices": [
                    {"value_num": v.numerator, "value_den": v.denominator, "verbal": verbal}
                    for v, verbal in pair.choices
                ],
                "progress": {"committed": pair.committed, "total": pair.total},
            }

    @app.post("/sessions/{sid}/judgments")
    def post_judgment(sid: str, body: JudgmentBody):
        session = _session(sid)
        with store.session_lock(sid):
            try:
                res = submit_judgment(session, _fraction(body.value_num, body.value_den))
            except WrongState as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except (ValueNotInScale, BadValue) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            store.save_session(session)
            return _outcome_payload(session, res)

    @app.post("/sessions/{sid}/revisions")
    def post_revision(sid: str, body: RevisionBody):
        session = _session(sid)
        with store.session_lock(sid):
            try:
                res = submit_revision(
                    session, (body.i, body.j), _fraction(body.value_num, body.value_den)
                )
            except WrongState as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except (IllegalRevisionTarget, ValueNotInScale, BadValue) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            store.save_session(session)
            return _outcome_payload(session, res)

    @app.get("/sessions/{sid}/results")
    def get_results(sid: str):
        session = _session(sid)
        with store.session_lock(sid):
            try:
                return session_results(session)
            except SessionIncomplete as exc:
                raise HTTPException(status_code=409, detail=str(exc))

    @app.get("/studies/{study_id}/aggregate")
    def get_aggregate(study_id: str, level: float = 0.95, method: str = "eigen"):
        if method not in ("eigen", "approx"):
            raise HTTPException(status_code=422, detail=f"unknown method {method!r}")
        try:
            agg = store.study_aggregate(study_id, level=level, method=method)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown study {study_id}")
        except NoCompletedSessions as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except BadValue as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        payload = {
            "mean_w": [float(x) for x in agg.mean_w],
            "k": agg.k,
            "level": agg.level,
        }
        if agg.half_width is not None:
            payload["half_width"] = [float(x) for x in agg.half_width]
        return payload

    return app
