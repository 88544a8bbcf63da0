"""In-memory session store with TTL eviction and optional disk snapshots.

Sessions are a deliberation aid, not a system of record: snapshots keep
the uploaded CSV, the value config and the recorded selection so a
restart can pick a session back up; sweep results are recomputed.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from ..ingest import DatasetSchema, ValueConfig, parse_config_value, parse_dataset
from ..model import Dataset
from ..sweep import SweepResult


@dataclass
class Session:
    id: str
    raw_csv: bytes
    schema: DatasetSchema
    dataset: Dataset
    config: ValueConfig | None = None
    latest_result: SweepResult | None = None
    status: str = "idle"  # idle | sweeping | ready | error
    progress: float = 0.0
    error_detail: str | None = None
    selection: dict[str, Any] | None = None
    created_at: float = field(default_factory=time.time)
    last_access: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def touch(self) -> None:
        self.last_access = time.time()

    @property
    def result_digest(self) -> str | None:
        return self.latest_result.config_digest if self.latest_result else None

    @property
    def stale(self) -> bool:
        if self.latest_result is None or self.config is None:
            return False
        return self.latest_result.config_digest != self.config.digest

    def effective_schema(self, config: ValueConfig) -> DatasetSchema:
        if config.group_column and config.group_column != self.schema.group_column:
            return replace(self.schema, group_column=config.group_column)
        return self.schema

    def reparse_for(self, config: ValueConfig) -> Dataset:
        """Dataset regrouped by the config's group column, when it differs."""
        schema = self.effective_schema(config)
        if schema == self.schema:
            return self.dataset
        return parse_dataset(self.raw_csv, schema)


class SessionStore:
    def __init__(self, ttl: float = 3600.0, persist_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._ttl = ttl
        self._persist_dir = Path(persist_dir) if persist_dir else None
        if self._persist_dir:
            self._persist_dir.mkdir(parents=True, exist_ok=True)
            self._load_snapshots()

    def create(self, raw_csv: bytes, schema: DatasetSchema, dataset: Dataset) -> Session:
        session = Session(id=uuid.uuid4().hex, raw_csv=raw_csv, schema=schema, dataset=dataset)
        with self._lock:
            self._evict_expired()
            self._sessions[session.id] = session
        self.snapshot(session)
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._evict_expired()
            session = self._sessions.get(session_id)
        if session:
            session.touch()
        return session

    def _evict_expired(self) -> None:
        if self._ttl <= 0:
            return
        cutoff = time.time() - self._ttl
        for sid in [s for s, sess in self._sessions.items() if sess.last_access < cutoff]:
            del self._sessions[sid]

    # --- snapshots -------------------------------------------------------------

    def snapshot(self, session: Session) -> None:
        if not self._persist_dir:
            return
        doc = {
            "id": session.id,
            "created_at": session.created_at,
            "schema": session.schema.canonical(),
            "csv": session.raw_csv.decode("utf-8"),
            "config": session.config.canonical() if session.config else None,
            "selection": session.selection,
        }
        path = self._persist_dir / f"{session.id}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")

    def _load_snapshots(self) -> None:
        for path in sorted(self._persist_dir.glob("*.json")):
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                raw_schema = doc.get("schema") or {}
                schema = DatasetSchema(
                    score_column=raw_schema.get("score_column", "score"),
                    group_column=raw_schema.get("group_column", "group"),
                    outcome_column=raw_schema.get("outcome_column", "outcome"),
                    amount_column=raw_schema.get("amount_column"),
                    attribute_columns=raw_schema.get("attribute_columns"),
                    id_column=raw_schema.get("id_column"),
                )
                raw_csv = doc["csv"].encode("utf-8")
                session = Session(
                    id=doc["id"],
                    raw_csv=raw_csv,
                    schema=schema,
                    dataset=parse_dataset(raw_csv, schema),
                    created_at=doc.get("created_at", time.time()),
                )
                if doc.get("config") is not None:
                    session.config = parse_config_value(doc["config"])
                    session.dataset = session.reparse_for(session.config)
                session.selection = doc.get("selection")
                self._sessions[session.id] = session
            except Exception:
                continue  # a corrupt snapshot should not block startup
