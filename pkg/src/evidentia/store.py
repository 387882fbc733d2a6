"""File-backed session persistence.

Sessions persist as (kb name, asserted rule ids, timestamps) only; masses
are derived state and are refolded on load, so stored and computed values
can never drift apart.  Writes are atomic (temp file + rename) and guarded
by a lock; reads of the in-memory records are lock-free snapshots.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .engine import ConsultationSession, start_session
from .errors import EvidentiaError, StoreLoadError
from .kb import KnowledgeBase

STORE_VERSION = 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class SessionRecord:
    session_id: str
    kb_name: str
    asserted: tuple[str, ...]
    created_at: str
    updated_at: str


class SessionStore:
    """Maps session ids to persisted records, mirrored to one JSON file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: dict[str, SessionRecord] = {}

    def records(self) -> dict[str, SessionRecord]:
        with self._lock:
            return dict(self._records)

    def upsert(self, session: ConsultationSession) -> None:
        now = _now()
        with self._lock:
            previous = self._records.get(session.id)
            self._records[session.id] = SessionRecord(
                session_id=session.id,
                kb_name=session.kb.name,
                asserted=tuple(session.asserted),
                created_at=previous.created_at if previous else now,
                updated_at=now,
            )
            self._flush_locked()

    def remove(self, session_id: str) -> None:
        with self._lock:
            self._records.pop(session_id, None)
            self._flush_locked()

    def _flush_locked(self) -> None:
        doc = {
            "version": STORE_VERSION,
            "sessions": [
                {
                    "id": r.session_id,
                    "kb": r.kb_name,
                    "asserted": list(r.asserted),
                    "created_at": r.created_at,
                    "updated_at": r.updated_at,
                }
                for r in self._records.values()
            ],
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(doc, f, indent=2)
                f.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def load(self, kb: KnowledgeBase) -> dict[str, ConsultationSession]:
        """Reload sessions by refolding each record against `kb`.

        A record naming a different KB or an unknown rule id is a load
        error, never a silent skip.  Missing store file means no sessions.
        """
        if not self.path.exists():
            return {}
        try:
            doc = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise StoreLoadError(f"cannot read session store {self.path}: {e}") from e
        if not isinstance(doc, dict) or doc.get("version") != STORE_VERSION:
            raise StoreLoadError(f"{self.path}: unsupported store format")
        raw = doc.get("sessions")
        if not isinstance(raw, list):
            raise StoreLoadError(f"{self.path}: missing sessions list")

        sessions: dict[str, ConsultationSession] = {}
        with self._lock:
            self._records.clear()
            for item in raw:
                record = _parse_record(item, self.path)
                if record.kb_name != kb.name:
                    raise StoreLoadError(
                        f"session {record.session_id} was recorded against KB "
                        f"{record.kb_name!r}, loaded KB is {kb.name!r}"
                    )
                session = start_session(kb, session_id=record.session_id)
                for rid in record.asserted:
                    try:
                        session.assert_symptom(rid)
                    except EvidentiaError as e:
                        raise StoreLoadError(
                            f"session {record.session_id} does not refold: {e}"
                        ) from e
                sessions[record.session_id] = session
                self._records[record.session_id] = record
        return sessions


def _parse_record(item: object, path: Path) -> SessionRecord:
    if not isinstance(item, dict):
        raise StoreLoadError(f"{path}: malformed session record {item!r}")
    try:
        session_id = item["id"]
        kb_name = item["kb"]
        asserted = item["asserted"]
        created_at = item["created_at"]
        updated_at = item["updated_at"]
    except KeyError as e:
        raise StoreLoadError(f"{path}: session record missing field {e}") from None
    if (
        not isinstance(session_id, str)
        or not isinstance(kb_name, str)
        or not isinstance(asserted, list)
        or any(not isinstance(x, str) for x in asserted)
        or not isinstance(created_at, str)
        or not isinstance(updated_at, str)
    ):
        raise StoreLoadError(f"{path}: session record has wrong field types")
    return SessionRecord(
        session_id=session_id,
        kb_name=kb_name,
        asserted=tuple(asserted),
        created_at=created_at,
        updated_at=updated_at,
    )
