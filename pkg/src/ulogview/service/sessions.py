"""In-memory session store for uploaded logs.

Sessions hold the parsed log and its derived metadata and exist only in
process memory: uploads are never written anywhere. Ids carry 256 bits
of entropy. Idle sessions are evicted after a TTL; eviction only drops
the map entry, so an in-flight request keeps its already-fetched log
alive and is never interrupted.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from ..model.meta import FlightMeta, PathHierarchy
from ..ulog.types import FlightLog


@dataclass
class Session:
    id: str
    log: FlightLog
    meta: FlightMeta
    hierarchy: PathHierarchy
    created_at: float
    last_access: float


@dataclass
class SessionStore:
    ttl_seconds: float = 1800.0
    clock: callable = time.monotonic
    _sessions: dict[str, Session] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def put(self, log: FlightLog, meta: FlightMeta, hierarchy: PathHierarchy) -> Session:
        now = self.clock()
        session = Session(
            id=secrets.token_urlsafe(32),
            log=log,
            meta=meta,
            hierarchy=hierarchy,
            created_at=now,
            last_access=now,
        )
        with self._lock:
            self._evict_expired(now)
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        now = self.clock()
        with self._lock:
            self._evict_expired(now)
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = now
            return session

    def sweep(self) -> int:
        with self._lock:
            before = len(self._sessions)
            self._evict_expired(self.clock())
            return before - len(self._sessions)

    def _evict_expired(self, now: float) -> None:
        dead = [
            sid
            for sid, s in self._sessions.items()
            if now - s.last_access > self.ttl_seconds
        ]
        for sid in dead:
            del self._sessions[sid]

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)

    def start_sweeper(self, interval: float = 60.0) -> threading.Event:
        """Background eviction; returns an Event that stops it."""
        stop = threading.Event()

        def run():
            while not stop.wait(interval):
                self.sweep()

        threading.Thread(target=run, daemon=True, name="session-sweeper").start()
        return stop
