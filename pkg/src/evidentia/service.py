"""HTTP/JSON consultation service.

Hosts consultation sessions over a small REST surface:

    POST   /sessions                         -> 201 {id, report}
    GET    /sessions/{id}                    -> session view
    DELETE /sessions/{id}                    -> 204
    POST   /sessions/{id}/symptoms {"id": s} -> 200 {step, report}
    DELETE /sessions/{id}/symptoms/{sid}     -> 200 {report}
    GET    /sessions/{id}/report             -> report (full precision + canonical)
    GET    /sessions/{id}/trace              -> per-step combination tables
    GET    /kb                               -> hypotheses + symptom list

Status codes: 400 malformed body, 404 unknown session/rule, 409 duplicate
symptom, 422 total conflict (session state unchanged).  The knowledge base
is immutable shared state; per-session mutations are serialized through
per-session locks, so concurrent sessions stay isolated.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .engine import (
    ConsultationSession,
    canonical_report_json,
    report_to_dict,
    start_session,
    step_to_dict,
)
from .errors import (
    DuplicateSymptom,
    EvidentiaError,
    NotAsserted,
    TotalConflict,
    UnknownRuleId,
)
from .kb import KnowledgeBase, load_kb
from .store import SessionStore

LOG_LEVELS = ("error", "warn", "info", "debug")


@dataclass(frozen=True)
class ServiceConfig:
    """Startup configuration for the consultation service."""

    kb_path: Path
    listen_address: str = "127.0.0.1:8000"
    session_store_path: Path | None = None
    ui_path: Path | None = None
    log_level: str = "info"

    def host_port(self) -> tuple[str, int]:
        host, _, port = self.listen_address.rpartition(":")
        if not host or not port:
            raise ValueError(
                f"listen address {self.listen_address!r} is not host:port"
            )
        try:
            port_num = int(port)
        except ValueError:
            raise ValueError(f"port {port!r} is not a number") from None
        if not 0 < port_num < 65536:
            raise ValueError(f"port {port_num} is out of range")
        return host, port_num

    def validate(self) -> None:
        self.host_port()
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {LOG_LEVELS}")


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def kb_to_dict(kb: KnowledgeBase) -> dict:
    return {
        "name": kb.name,
        "hypotheses": list(kb.hypotheses),
        "catch_all": kb.catch_all,
        "symptoms": [
            {"id": r.id, "label": r.label, "diseases": list(r.diseases), "bpa": r.bpa}
            for r in kb.rules
        ],
    }


class SessionHost:
    """In-memory session table with per-session write locks."""

    def __init__(self, kb: KnowledgeBase, store: SessionStore | None = None):
        self.kb = kb
        self.store = store
        self.sessions: dict[str, ConsultationSession] = {}
        self._master = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        if store is not None:
            self.sessions = store.load(kb)
            for sid in self.sessions:
                self._locks[sid] = threading.Lock()

    def create(self) -> ConsultationSession:
        session = start_session(self.kb)
        with self._master:
            self.sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        if self.store is not None:
            self.store.upsert(session)
        return session

    def get(self, session_id: str) -> ConsultationSession | None:
        with self._master:
            return self.sessions.get(session_id)

    def lock(self, session_id: str) -> threading.Lock | None:
        with self._master:
            return self._locks.get(session_id)

    def remove(self, session_id: str) -> bool:
        with self._master:
            existed = self.sessions.pop(session_id, None) is not None
            self._locks.pop(session_id, None)
        if existed and self.store is not None:
            self.store.remove(session_id)
        return existed

    def persist(self, session: ConsultationSession) -> None:
        if self.store is not None:
            self.store.upsert(session)


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the service app; parses the KB and reloads the store eagerly."""
    config.validate()
    kb = load_kb(config.kb_path)
    store = SessionStore(config.session_store_path) if config.session_store_path else None
    host = SessionHost(kb, store)

    app = FastAPI(title="evidentia consultation service", version="0.1.0")
    app.state.host = host
    app.state.kb = kb

    @app.get("/kb")
    def get_kb() -> dict:
        return kb_to_dict(kb)

    @app.post("/sessions", status_code=201)
    def create_session() -> dict:
        session = host.create()
        return {"id": session.id, "report": report_to_dict(session.evaluate())}

    def _session_view(session: ConsultationSession) -> dict:
        return {
            "id": session.id,
            "kb": kb.name,
            "asserted": list(session.asserted),
            "report": report_to_dict(session.evaluate()),
        }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = host.get(session_id)
        if session is None:
            return _error(404, f"no session {session_id!r}")
        return _session_view(session)

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not host.remove(session_id):
            return _error(404, f"no session {session_id!r}")
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/symptoms")
    async def assert_symptom(session_id: str, request: Request):
        session = host.get(session_id)
        lock = host.lock(session_id)
        if session is None or lock is None:
            return _error(404, f"no session {session_id!r}")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body is not valid JSON")
        if not isinstance(body, dict) or not isinstance(body.get("id"), str):
            return _error(400, 'request body must be {"id": "<symptom-id>"}')
        rule_id = body["id"]
        with lock:
            try:
                step = session.assert_symptom(rule_id)
            except UnknownRuleId as e:
                return _error(404, str(e))
            except DuplicateSymptom as e:
                return _error(409, str(e))
            except TotalConflict as e:
                return _error(422, str(e))
            host.persist(session)
            return {
                "step": step_to_dict(step),
                "report": report_to_dict(session.evaluate()),
            }

    @app.delete("/sessions/{session_id}/symptoms/{symptom_id}")
    def retract_symptom(session_id: str, symptom_id: str):
        session = host.get(session_id)
        lock = host.lock(session_id)
        if session is None or lock is None:
            return _error(404, f"no session {session_id!r}")
        with lock:
            try:
                session.retract_symptom(symptom_id)
            except NotAsserted as e:
                return _error(404, str(e))
            host.persist(session)
            return {"report": report_to_dict(session.evaluate())}

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        session = host.get(session_id)
        if session is None:
            return _error(404, f"no session {session_id!r}")
        return report_to_dict(session.evaluate())

    @app.get("/sessions/{session_id}/trace")
    def get_trace(session_id: str):
        session = host.get(session_id)
        if session is None:
            return _error(404, f"no session {session_id!r}")
        return {"steps": [step_to_dict(s) for s in session.explain()]}

    @app.exception_handler(EvidentiaError)
    async def evidentia_error(_request: Request, exc: EvidentiaError):
        return _error(500, str(exc))

    if config.ui_path is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_path, html=True), name="ui")

    return app


__all__ = [
    "ServiceConfig",
    "SessionHost",
    "create_app",
    "kb_to_dict",
    "canonical_report_json",
]
