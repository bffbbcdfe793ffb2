"""Persistent URL trace and page cache.

Both live in one embedded SQLite file (separate tables), so a single
--store path gives a run its whole persistent state. The trace is
append-only; cache entries expire after a TTL and are never served stale.
"""

from __future__ import annotations

import sqlite3
import threading
import time
from pathlib import Path

from .search import normalize_url

_SCHEMA = """
CREATE TABLE IF NOT EXISTS trace (
    url TEXT PRIMARY KEY,
    first_seen REAL NOT NULL,
    query_hash TEXT NOT NULL DEFAULT ''
);
CREATE TABLE IF NOT EXISTS cache (
    url TEXT PRIMARY KEY,
    fetched REAL NOT NULL,
    body TEXT NOT NULL
);
"""


def _connect(path: str | Path) -> sqlite3.Connection:
    conn = sqlite3.connect(str(path), check_same_thread=False)
    conn.executescript(_SCHEMA)
    conn.commit()
    return conn


class UrlTraceStore:
    """Append-only set of previously recommended URLs (normalized form)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._conn = _connect(path)
        self._lock = threading.Lock()

    def contains(self, url: str) -> bool:
        key = normalize_url(url)
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM trace WHERE url = ?", (key,)
            ).fetchone()
        return row is not None

    def add(self, url: str, query_hash: str = "", now: float | None = None) -> None:
        key = normalize_url(url)
        timestamp = time.time() if now is None else now
        with self._lock:
            self._conn.execute(
                "INSERT OR IGNORE INTO trace (url, first_seen, query_hash) VALUES (?, ?, ?)",
                (key, timestamp, query_hash),
            )
            self._conn.commit()

    def __len__(self) -> int:
        with self._lock:
            (count,) = self._conn.execute("SELECT COUNT(*) FROM trace").fetchone()
        return count

    def close(self) -> None:
        self._conn.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class PageCache:
    """TTL-bounded url -> page body map; expired entries are never served."""

    def __init__(self, path: str | Path, ttl: float = 86400.0, now=time.time):
        self.path = Path(path)
        self.ttl = ttl
        self._now = now
        self._conn = _connect(path)
        self._lock = threading.Lock()

    def get(self, url: str) -> str | None:
        key = normalize_url(url)
        with self._lock:
            row = self._conn.execute(
                "SELECT fetched, body FROM cache WHERE url = ?", (key,)
            ).fetchone()
        if row is None:
            return None
        fetched, body = row
        if self._now() - fetched > self.ttl:
            return None
        return body

    def put(self, url: str, body: str) -> None:
        key = normalize_url(url)
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO cache (url, fetched, body) VALUES (?, ?, ?)",
                (key, self._now(), body),
            )
            self._conn.commit()

    def close(self) -> None:
        self._conn.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
