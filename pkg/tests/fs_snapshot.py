"""Filesystem snapshotting for the zero-persistence checks.

Captures (path -> size, mtime) for everything under the given roots,
skipping interpreter and test-runner caches, which mutate independently
of the code under test.
"""

from __future__ import annotations

from pathlib import Path

SKIP_PARTS = {"__pycache__", ".pytest_cache", ".git", "node_modules", ".hypothesis"}


def fs_snapshot(*roots: Path) -> dict[str, tuple]:
    entries: dict[str, tuple] = {}
    for root in roots:
        root = Path(root)
        if not root.exists():
            entries[str(root)] = ("missing",)
            continue
        for p in sorted(root.rglob("*")):
            if SKIP_PARTS & set(p.parts):
                continue
            if p.suffix in (".pyc", ".pyo"):
                continue
            try:
                st = p.stat()
            except OSError:
                continue
            if p.is_file():
                entries[str(p)] = (st.st_size, st.st_mtime_ns)
            else:
                entries[str(p)] = ("dir",)
    return entries


def snapshot_diff(before: dict, after: dict) -> dict:
    out = {}
    for path in set(before) | set(after):
        if before.get(path) != after.get(path):
            out[path] = (before.get(path), after.get(path))
    return out
