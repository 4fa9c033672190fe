"""On-disk persistence: append-only per-session operation logs plus periodic
snapshots, and cached assembly documents. Replaying a session's log through
the service's own operation handlers reproduces the session exactly.

Layout under the persistence root (FOLDSCOPE_DATA_DIR):

    assemblies/<assembly_id>.json
    sessions/<session_id>.meta.json   {"assembly_id", "created_at"}
    sessions/<session_id>.ops.jsonl   one operation per line
    sessions/<session_id>.snap.json   {"op_count", "session"}
"""
from __future__ import annotations

import json
from pathlib import Path

from .model import GenomeAssembly, assembly_from_json, assembly_to_json

SNAPSHOT_EVERY = 100  # operations between snapshots


class DiskStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "assemblies").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)

    # -- assemblies ----------------------------------------------------------

    def save_assembly(self, assembly_id: str, assembly: GenomeAssembly) -> None:
        path = self.root / "assemblies" / f"{assembly_id}.json"
        path.write_text(json.dumps(assembly_to_json(assembly), sort_keys=True))

    def load_assemblies(self) -> dict[str, GenomeAssembly]:
        out = {}
        for path in sorted((self.root / "assemblies").glob("*.json")):
            out[path.stem] = assembly_from_json(json.loads(path.read_text()))
        return out

    # -- sessions --------------------------------------------------------------

    def _session_path(self, session_id: str, suffix: str) -> Path:
        return self.root / "sessions" / f"{session_id}.{suffix}"

    def create_session(self, session_id: str, assembly_id: str, created_at: float) -> None:
        meta = {"assembly_id": assembly_id, "created_at": created_at}
        self._session_path(session_id, "meta.json").write_text(json.dumps(meta))
        self._session_path(session_id, "ops.jsonl").touch()

    def append_op(self, session_id: str, op: dict) -> None:
        path = self._session_path(session_id, "ops.jsonl")
        with path.open("a") as fh:
            fh.write(json.dumps(op, sort_keys=True) + "\n")

    def write_snapshot(self, session_id: str, session_doc: dict, op_count: int) -> None:
        doc = {"op_count": op_count, "session": session_doc}
        self._session_path(session_id, "snap.json").write_text(json.dumps(doc, sort_keys=True))

    def session_ids(self) -> list[str]:
        return sorted(p.name[: -len(".meta.json")] for p in (self.root / "sessions").glob("*.meta.json"))

    def load_session_record(self, session_id: str) -> tuple[dict, dict | None, list[dict]]:
        """Returns (meta, snapshot-or-None, ops after the snapshot)."""
        meta = json.loads(self._session_path(session_id, "meta.json").read_text())
        snap_path = self._session_path(session_id, "snap.json")
        snapshot = json.loads(snap_path.read_text()) if snap_path.exists() else None
        skip = snapshot["op_count"] if snapshot else 0
        ops = []
        ops_path = self._session_path(session_id, "ops.jsonl")
        if ops_path.exists():
            with ops_path.open() as fh:
                for i, line in enumerate(fh):
                    if i >= skip and line.strip():
                        ops.append(json.loads(line))
        return meta, snapshot, ops
