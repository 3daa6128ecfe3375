"""Live elicitation sessions: state machine, event log, and study persistence.

A session walks the pair sequence under real-time transitivity control.
Conflicting submissions are never committed: the matrix only ever holds
validated judgments, and the offending value waits in session state until
the expert resolves it through the revision dialog.
"""

from __future__ import annotations

import enum
import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .aggregation import StudyAggregate, aggregate
from .core import (
    ComparisonScale,
    JudgmentMatrix,
    Relation,
    new_matrix,
    pair_sequence,
    set_judgment,
)
from .errors import (
    BadDimension,
    BadScale,
    DuplicateLabels,
    IllegalRevisionTarget,
    NoCompletedSessions,
    SessionIncomplete,
    ValueNotInScale,
    WrongState,
)
from .matrix_io import scale_from_dict, scale_to_dict
from .transitivity import (
    RevisionCandidates,
    Triad,
    admissible_for_pair,
    check_new_judgment,
    revision_candidates,
)
from .weights import approx_weights, consistency_report, eigen_weights

STALL_THRESHOLD = 10  # consecutive rejections before the session is flagged


class SessionState(enum.Enum):
    AWAITING_JUDGMENT = "awaiting_judgment"
    AWAITING_REVISION = "awaiting_revision"
    COMPLETE = "complete"


@dataclass
class Study:
    id: str
    labels: list[str]
    scale: ComparisonScale
    sessions: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class PairDescriptor:
    i: int
    j: int
    label_i: str
    label_j: str
    choices: tuple[tuple[Fraction, str], ...]  # (value, verbal anchor)
    committed: int
    total: int


@dataclass(frozen=True)
class Accepted:
    committed: int
    total: int
    done: bool


@dataclass(frozen=True)
class ConflictDetected:
    triads: tuple[Triad, ...]
    candidates: RevisionCandidates
    admissible: frozenset[Relation]
    pending: Fraction
    committed: int
    total: int


class Session:
    def __init__(self, session_id: str, study_id: str, expert: str,
                 labels: list[str], scale: ComparisonScale):
        self.id = session_id
        self.study_id = study_id
        self.expert = expert
        self.scale = scale
        self.matrix = new_matrix(len(labels), labels)
        self.pairs = pair_sequence(len(labels))
        self.cursor = 0
        self.state = SessionState.AWAITING_JUDGMENT
        self.pending_value: Fraction | None = None
        self.pending_conflicts: list[Triad] = []
        self.rejection_streak = 0
        self.events: list[dict] = []

    # ---- progress helpers ----

    @property
    def total_pairs(self) -> int:
        return len(self.pairs)

    @property
    def committed(self) -> int:
        return self.cursor

    @property
    def stalled(self) -> bool:
        return self.rejection_streak > STALL_THRESHOLD

    def current_pair(self) -> tuple[int, int]:
        return self.pairs[self.cursor]

    def _log(self, action: str, pair=None, value: Fraction | None = None) -> None:
        ev = {"ts": time.time(), "action": action}
        if pair is not None:
            ev["i"], ev["j"] = pair
        if value is not None:
            ev["value_num"] = value.numerator
            ev["value_den"] = value.denominator
        self.events.append(ev)


def create_study(labels: list[str], scale: ComparisonScale, study_id: str | None = None) -> Study:
    """New study; labels must be distinct and the scale a finite menu."""
    if len(labels) < 2:
        raise BadDimension(f"need at least 2 labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise DuplicateLabels("object labels must be distinct")
    if scale.kind not in ("saaty9", "three_point"):
        raise BadScale(f"sessions need a finite scale, got kind {scale.kind!r}")
    return Study(id=study_id or uuid.uuid4().hex[:12], labels=list(labels), scale=scale)


def new_session(study: Study, expert: str, session_id: str | None = None) -> Session:
    return Session(
        session_id=session_id or uuid.uuid4().hex[:12],
        study_id=study.id,
        expert=expert,
        labels=study.labels,
        scale=study.scale,
    )


def next_pair(session: Session) -> PairDescriptor | None:
    """Descriptor for the pair at the cursor, or None once complete."""
    if session.state is SessionState.AWAITING_REVISION:
        raise WrongState("a conflict is pending; resolve it first")
    if session.state is SessionState.COMPLETE:
        return None
    i, j = session.current_pair()
    return PairDescriptor(
        i=i,
        j=j,
        label_i=session.matrix.labels[i - 1],
        label_j=session.matrix.labels[j - 1],
        choices=tuple(zip(session.scale.values, session.scale.labels)),
        committed=session.committed,
        total=session.total_pairs,
    )


def _scale_value(session: Session, v) -> Fraction:
    # normalize to the scale's exact rational representation
    for u in session.scale.values:
        if u == v:
            return u
    raise ValueNotInScale(f"{v!r} is not on scale {session.scale.name}")


def _accept(session: Session, pair: tuple[int, int], v: Fraction, action: str) -> Accepted:
    set_judgment(session.matrix, pair[0], pair[1], v)
    session._log(action, pair, v)
    session.cursor += 1
    session.rejection_streak = 0
    session.pending_value = None
    session.pending_conflicts = []
    if session.cursor == session.total_pairs:
        session.state = SessionState.COMPLETE
        session._log("session_completed")
    else:
        session.state = SessionState.AWAITING_JUDGMENT
    return Accepted(
        committed=session.committed,
        total=session.total_pairs,
        done=session.state is SessionState.COMPLETE,
    )


def _reject(session: Session, pair: tuple[int, int], v: Fraction, conflicts: list[Triad],
            action: str) -> ConflictDetected:
    session._log(action, pair, v)
    session.pending_value = v
    session.pending_conflicts = list(conflicts)
    session.state = SessionState.AWAITING_REVISION
    session.rejection_streak += 1
    i, j = pair
    return ConflictDetected(
        triads=tuple(conflicts),
        candidates=revision_candidates(i, j),
        admissible=frozenset(admissible_for_pair(session.matrix, i, j)),
        pending=v,
        committed=session.committed,
        total=session.total_pairs,
    )


def submit_judgment(session: Session, v) -> Accepted | ConflictDetected:
    """Judge the pair at the cursor; commit or open the revision dialog."""
    if session.state is not SessionState.AWAITING_JUDGMENT:
        raise WrongState(f"cannot submit a judgment in state {session.state.value}")
    value = _scale_value(session, v)
    i, j = session.current_pair()
    conflicts = check_new_judgment(session.matrix, i, j, value)
    if not conflicts:
        return _accept(session, (i, j), value, "judgment_accepted")
    return _reject(session, (i, j), value, conflicts, "judgment_rejected")


def submit_revision(session: Session, pair: tuple[int, int], v) -> Accepted | ConflictDetected:
    """Resolve a pending conflict by revising one of the offered pairs.

    Revising the current pair re-runs the submission check with the new
    value.  Revising an earlier pair (row 2 only) is transactional: the
    overwrite is applied to a scratch copy, every committed judgment that
    could depend on it is re-validated, then the pending value is
    re-checked; only a fully clean pass commits.
    """
    if session.state is not SessionState.AWAITING_REVISION:
        raise WrongState(f"cannot submit a revision in state {session.state.value}")
    i, j = session.current_pair()
    cands = revision_candidates(i, j)
    pair = (int(pair[0]), int(pair[1]))
    if pair not in cands.pairs:
        raise IllegalRevisionTarget(f"{pair} is not among the offered pairs {cands.pairs}")
    value = _scale_value(session, v)

    if pair == (i, j):
        conflicts = check_new_judgment(session.matrix, i, j, value)
        if not conflicts:
            return _accept(session, pair, value, "revision_accepted")
        return _reject(session, (i, j), value, conflicts, "revision_rejected")

    # earlier-pair path: overwrite on a scratch copy and re-validate
    scratch = session.matrix.copy()
    set_judgment(scratch, pair[0], pair[1], value)
    residual: list[Triad] = []
    for p, q in session.pairs[: session.cursor]:
        if p < 2:
            continue
        residual = check_new_judgment(scratch, p, q, scratch.get(p, q))
        if residual:
            break
    if not residual:
        residual = check_new_judgment(scratch, i, j, session.pending_value)
    if residual:
        session._log("revision_rejected", pair, value)
        session.pending_conflicts = list(residual)
        session.rejection_streak += 1
        return ConflictDetected(
            triads=tuple(residual),
            candidates=cands,
            admissible=frozenset(admissible_for_pair(session.matrix, i, j)),
            pending=session.pending_value,
            committed=session.committed,
            total=session.total_pairs,
        )
    session.matrix = scratch
    session._log("revision_accepted", pair, value)
    return _accept(session, (i, j), session.pending_value, "judgment_accepted")


def session_results(session: Session) -> dict:
    """Weights by both methods plus the consistency block, JSON-ready."""
    if session.state is not SessionState.COMPLETE:
        raise SessionIncomplete(
            f"{session.committed}/{session.total_pairs} pairs committed"
        )
    w_a = approx_weights(session.matrix)
    w_e, _ = eigen_weights(session.matrix)
    rep = consistency_report(session.matrix)
    return {
        "w_approx": [float(x) for x in w_a],
        "w_eigen": [float(x) for x in w_e],
        "lambda_max": float(rep.lambda_max),
        "ci": float(rep.ci),
        "ri": float(rep.ri),
        "cr": float(rep.cr),
        "acceptable": bool(rep.acceptable),
    }


def replay_events(events: list[dict], h: int, labels: list[str]) -> tuple[JudgmentMatrix, int]:
    """Rebuild matrix and cursor from an event log (accepted events only)."""
    matrix = new_matrix(h, labels)
    pairs = pair_sequence(h)
    cursor = 0
    for ev in events:
        if ev["action"] not in ("judgment_accepted", "revision_accepted"):
            continue
        pair = (ev["i"], ev["j"])
        set_judgment(matrix, pair[0], pair[1], Fraction(ev["value_num"], ev["value_den"]))
        if cursor < len(pairs) and pair == pairs[cursor]:
            cursor += 1
    return matrix, cursor


# ---- persistence ----


def _atomic_write_json(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")
    os.replace(tmp, path)


def session_to_dict(session: Session) -> dict:
    pending = None
    if session.pending_value is not None:
        i, j = session.current_pair()
        pending = {
            "i": i,
            "j": j,
            "value_num": session.pending_value.numerator,
            "value_den": session.pending_value.denominator,
        }
    return {
        "id": session.id,
        "study_id": session.study_id,
        "expert": session.expert,
        "h": session.matrix.h,
        "labels": session.matrix.labels,
        "scale": scale_to_dict(session.scale),
        "state": session.state.value,
        "cursor": session.cursor,
        "pending": pending,
        "pending_conflicts": [
            {
                "m": t.m,
                "i": t.i,
                "j": t.j,
                "r_mj": t.r_mj.value,
                "r_ij": t.r_ij.value,
                "r_mi": t.r_mi.value,
            }
            for t in session.pending_conflicts
        ],
        "rejection_streak": session.rejection_streak,
        "events": session.events,
    }


def session_from_dict(d: dict) -> Session:
    """Rebuild a session; the matrix and cursor come from event replay."""
    scale = scale_from_dict(d["scale"])
    s = Session(d["id"], d["study_id"], d["expert"], d["labels"], scale)
    s.events = list(d["events"])
    s.matrix, s.cursor = replay_events(s.events, d["h"], d["labels"])
    s.state = SessionState(d["state"])
    s.rejection_streak = d.get("rejection_streak", 0)
    if d.get("pending"):
        s.pending_value = Fraction(d["pending"]["value_num"], d["pending"]["value_den"])
    s.pending_conflicts = [
        Triad(
            t["m"],
            t["i"],
            t["j"],
            Relation(t["r_mj"]),
            Relation(t["r_ij"]),
            Relation(t["r_mi"]),
        )
        for t in d.get("pending_conflicts", [])
    ]
    return s


class StudyStore:
    """File-backed study/session registry: one directory per study, one JSON
    per session, atomic writes, and per-session locks for the HTTP layer."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    # ---- paths ----

    def _study_dir(self, study_id: str) -> Path:
        return self.root / study_id

    def _study_path(self, study_id: str) -> Path:
        return self._study_dir(study_id) / "study.json"

    def _session_path(self, session: Session) -> Path:
        return self._study_dir(session.study_id) / f"{session.id}.json"

    # ---- studies ----

    def create_study(self, labels: list[str], scale: ComparisonScale) -> Study:
        study = create_study(labels, scale)
        self._study_dir(study.id).mkdir(parents=True, exist_ok=True)
        self._save_study(study)
        return study

    def _save_study(self, study: Study) -> None:
        _atomic_write_json(
            self._study_path(study.id),
            {
                "id": study.id,
                "labels": study.labels,
                "scale": scale_to_dict(study.scale),
                "sessions": study.sessions,
            },
        )

    def get_study(self, study_id: str) -> Study:
        path = self._study_path(study_id)
        if not path.exists():
            raise KeyError(study_id)
        d = json.loads(path.read_text(encoding="utf-8"))
        return Study(
            id=d["id"],
            labels=d["labels"],
            scale=scale_from_dict(d["scale"]),
            sessions=list(d["sessions"]),
        )

    def list_studies(self) -> list[str]:
        return sorted(p.parent.name for p in self.root.glob("*/study.json"))

    # ---- sessions ----

    def create_session(self, study_id: str, expert: str) -> Session:
        study = self.get_study(study_id)
        session = new_session(study, expert)
        study.sessions.append(session.id)
        self._save_study(study)
        self.save_session(session)
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def save_session(self, session: Session) -> None:
        _atomic_write_json(self._session_path(session), session_to_dict(session))

    def get_session(self, session_id: str) -> Session:
        with self._registry_lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        hits = list(self.root.glob(f"*/{session_id}.json"))
        if not hits:
            raise KeyError(session_id)
        session = session_from_dict(json.loads(hits[0].read_text(encoding="utf-8")))
        with self._registry_lock:
            self._sessions.setdefault(session_id, session)
            return self._sessions[session_id]

    def session_lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
            return self._locks[session_id]

    # ---- aggregation ----

    def study_aggregate(self, study_id: str, level: float = 0.95,
                        method: str = "eigen") -> StudyAggregate:
        """Aggregate over completed sessions only; abandoned ones are skipped."""
        study = self.get_study(study_id)
        vectors, crs = [], []
        for sid in study.sessions:
            session = self.get_session(sid)
            if session.state is not SessionState.COMPLETE:
                continue
            results = session_results(session)
            vectors.append(results["w_approx" if method == "approx" else "w_eigen"])
            crs.append(results["cr"])
        if not vectors:
            raise NoCompletedSessions(f"study {study_id} has no completed sessions")
        return aggregate(vectors, crs, level)
