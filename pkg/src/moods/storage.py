"""Append-only persistence: one JSONL log per participant per entity kind.

Layout: ``data_dir/{participant_id}/{events,annotations,surveys,tickets}.log``
plus a small ``meta.json`` per participant. Each log line is an envelope

    {"seq": n, "entity_id": ..., "version": ..., "record": {...}}

with strictly increasing ``seq`` per log. Appends are idempotent on
(entity_id, version); replaying a log reproduces identical state, and a log
truncated at any byte yields the longest loadable prefix (a trailing
partial line is discarded, never an error).
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterable, Optional

LOG_KINDS = ("events", "annotations", "surveys", "tickets")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


class RecordLog:
    """Single append-only log file with idempotent appends."""

    def __init__(self, path: Path, fsync: bool = False):
        self.path = Path(path)
        self.fsync = fsync
        self._next_seq = 1
        self._seq_by_key: dict[tuple, int] = {}
        self._records: list[dict] = []
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        raw = self.path.read_bytes()
        for line in raw.split(b"\n"):
            if not line.strip():
                continue
            try:
                envelope = json.loads(line.decode("utf-8"))
                seq = envelope["seq"]
                record = envelope["record"]
            except (ValueError, KeyError, UnicodeDecodeError):
                break  # truncated or torn tail: keep the loadable prefix
            if seq != self._next_seq:
                break  # out-of-order tail; treat like truncation
            self._records.append(envelope)
            key = (envelope.get("entity_id"), envelope.get("version"))
            if key[0] is not None:
                self._seq_by_key[key] = seq
            self._next_seq = seq + 1

    def append(self, record: dict, entity_id: Optional[str] = None,
               version: Optional[int] = None) -> int:
        """Append one record; duplicate (entity_id, version) returns its seq."""
        key = (entity_id, version)
        if entity_id is not None and key in self._seq_by_key:
            return self._seq_by_key[key]
        envelope = {
            "seq": self._next_seq,
            "entity_id": entity_id,
            "version": version,
            "record": record,
        }
        line = canonical_json(envelope) + "\n"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            if self.fsync:
                fh.flush()
                os.fsync(fh.fileno())
        self._records.append(envelope)
        if entity_id is not None:
            self._seq_by_key[key] = envelope["seq"]
        self._next_seq += 1
        return envelope["seq"]

    def append_batch(
        self, items: Iterable[tuple[dict, Optional[str], Optional[int]]]
    ) -> list[int]:
        """Append many (record, entity_id, version) with one file open."""
        seqs: list[int] = []
        to_write: list[str] = []
        for record, entity_id, version in items:
            key = (entity_id, version)
            if entity_id is not None and key in self._seq_by_key:
                seqs.append(self._seq_by_key[key])
                continue
            envelope = {
                "seq": self._next_seq,
                "entity_id": entity_id,
                "version": version,
                "record": record,
            }
            to_write.append(canonical_json(envelope) + "\n")
            self._records.append(envelope)
            if entity_id is not None:
                self._seq_by_key[key] = envelope["seq"]
            seqs.append(envelope["seq"])
            self._next_seq += 1
        if to_write:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.writelines(to_write)
                if self.fsync:
                    fh.flush()
                    os.fsync(fh.fileno())
        return seqs

    def replay(self) -> list[dict]:
        """All envelopes in seq order (in-memory mirror of the file)."""
        return list(self._records)

    def records(self) -> list[dict]:
        return [e["record"] for e in self._records]

    def latest_by_entity(self) -> dict[str, dict]:
        """Last-writer-wins view keyed by entity_id (ordered by seq)."""
        out: dict[str, dict] = {}
        for envelope in self._records:
            eid = envelope.get("entity_id")
            if eid is not None:
                out[eid] = envelope["record"]
        return out

    @property
    def last_seq(self) -> int:
        return self._next_seq - 1


class ParticipantLogs:
    """The per-participant bundle of entity logs plus metadata."""

    def __init__(self, root: Path, participant_id: str, fsync: bool = False):
        self.root = Path(root) / participant_id
        self.participant_id = participant_id
        self.logs = {kind: RecordLog(self.root / f"{kind}.log", fsync=fsync)
                     for kind in LOG_KINDS}

    def append(self, kind: str, record: dict, entity_id: Optional[str] = None,
               version: Optional[int] = None) -> int:
        return self.logs[kind].append(record, entity_id=entity_id, version=version)

    def write_meta(self, meta: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "meta.json").write_text(canonical_json(meta), encoding="utf-8")

    def read_meta(self) -> Optional[dict]:
        path = self.root / "meta.json"
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def snapshot(self) -> dict[str, tuple]:
        """Point-in-time immutable view: kind -> tuple of records."""
        return {kind: tuple(log.records()) for kind, log in self.logs.items()}

    def snapshot_manifest(self) -> dict[str, int]:
        """Sequence horizon per log at snapshot time."""
        return {kind: log.last_seq for kind, log in self.logs.items()}

    def state_hash(self) -> str:
        digest = hashlib.sha256()
        for kind in LOG_KINDS:
            digest.update(kind.encode())
            for envelope in self.logs[kind].replay():
                digest.update(canonical_json(envelope).encode("utf-8"))
        return digest.hexdigest()


class LogStore:
    """Root store over ``data_dir``; one writer per participant assumed."""

    def __init__(self, data_dir: str | Path, fsync: bool = False):
        self.data_dir = Path(data_dir)
        self.fsync = fsync
        self._participants: dict[str, ParticipantLogs] = {}

    def participant(self, participant_id: str) -> ParticipantLogs:
        if participant_id not in self._participants:
            self._participants[participant_id] = ParticipantLogs(
                self.data_dir, participant_id, fsync=self.fsync
            )
        return self._participants[participant_id]

    def participant_ids(self) -> list[str]:
        on_disk = set()
        if self.data_dir.exists():
            on_disk = {p.name for p in self.data_dir.iterdir() if p.is_dir()}
        return sorted(on_disk | set(self._participants))


def read_jsonl(path: str | Path) -> Iterable[dict]:
    """Bare line-delimited records (the ingestion wire format)."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def write_jsonl(path: str | Path, records: Iterable[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(canonical_json(rec) + "\n")
