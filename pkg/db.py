import json
import os
import sqlite3
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Optional, Tuple

DB_PATH = os.getenv("SKEINLAB_DB", "skeinlab.db")


@contextmanager
def get_conn(path: Optional[str] = None):
    conn = sqlite3.connect(path or DB_PATH, check_same_thread=False)
    try:
        yield conn
        conn.commit()
    finally:
        conn.close()


def init_db(path: Optional[str] = None):
    with get_conn(path) as conn:
        cur = conn.cursor()

        cur.execute("""
        CREATE TABLE IF NOT EXISTS invariants (
            diagram_key TEXT NOT NULL,
            invariant TEXT NOT NULL,
            value TEXT NOT NULL,
            text TEXT NOT NULL,
            created_at TEXT NOT NULL,
            PRIMARY KEY (diagram_key, invariant)
        )
        """)


def get_cached(diagram_key: str, invariant: str, path: Optional[str] = None) -> Optional[Tuple[object, str]]:
    with get_conn(path) as conn:
        cur = conn.cursor()
        cur.execute(
            "SELECT value, text FROM invariants WHERE diagram_key=? AND invariant=?",
            (diagram_key, invariant),
        )
        row = cur.fetchone()
        return (json.loads(row[0]), row[1]) if row else None


def put_cached(diagram_key: str, invariant: str, value, text: str, path: Optional[str] = None):
    now = datetime.now(timezone.utc).isoformat()
    with get_conn(path) as conn:
        cur = conn.cursor()
        cur.execute("""
            INSERT INTO invariants(diagram_key, invariant, value, text, created_at)
            VALUES(?,?,?,?,?)
            ON CONFLICT(diagram_key, invariant) DO UPDATE SET
              value=excluded.value,
              text=excluded.text
        """, (diagram_key, invariant, json.dumps(value), text, now))


def count_cached(path: Optional[str] = None) -> int:
    with get_conn(path) as conn:
        cur = conn.cursor()
        cur.execute("SELECT COUNT(*) FROM invariants")
        return int(cur.fetchone()[0])
