"""Timestamped interaction events and the JSONL log format.

One JSON object per line: {"t_ms", "kind", "chrom", "start", "end",
"payload"}. ``chrom``/``start``/``end`` are null for events that touch no
genomic interval (answer submissions). Timestamps are milliseconds from
session start and must be non-decreasing within a log.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class EventKind(str, Enum):
    SCOPE_QUERY = "ScopeQuery"
    REGION_OPEN = "RegionOpen"
    REGION_CLOSE = "RegionClose"
    COMPRESS = "Compress"
    SUBSECTION_OPEN = "SubsectionOpen"
    INSET_CREATE = "InsetCreate"
    ANSWER_SUBMIT = "AnswerSubmit"


# Kinds that reveal gene detail and therefore count as querying the chromosome.
QUERY_KINDS = frozenset({EventKind.SCOPE_QUERY, EventKind.REGION_OPEN, EventKind.SUBSECTION_OPEN})


@dataclass(frozen=True)
class Event:
    t_ms: int
    kind: EventKind
    chromosome: str | None = None
    start_bp: int | None = None
    end_bp: int | None = None
    payload: object = None

    @property
    def interval(self) -> tuple[int, int] | None:
        if self.start_bp is None or self.end_bp is None:
            return None
        return (self.start_bp, self.end_bp)

    def to_json(self) -> dict:
        return {
            "t_ms": self.t_ms,
            "kind": self.kind.value,
            "chrom": self.chromosome,
            "start": self.start_bp,
            "end": self.end_bp,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Event":
        return cls(
            t_ms=int(doc["t_ms"]),
            kind=EventKind(doc["kind"]),
            chromosome=doc.get("chrom"),
            start_bp=doc.get("start"),
            end_bp=doc.get("end"),
            payload=doc.get("payload"),
        )


class EventLog:
    """Append-only, time-ordered event sequence."""

    def __init__(self, events: Iterable[Event] = ()):
        self._events: list[Event] = []
        for event in events:
            self.append(event)

    def append(self, event: Event) -> None:
        if self._events and event.t_ms < self._events[-1].t_ms:
            raise ValueError(
                f"event at t={event.t_ms}ms is earlier than the last logged event "
                f"(t={self._events[-1].t_ms}ms)"
            )
        self._events.append(event)

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events)

    def __len__(self) -> int:
        return len(self._events)

    @property
    def last_t_ms(self) -> int:
        return self._events[-1].t_ms if self._events else 0

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self._events)

    @classmethod
    def from_jsonl(cls, lines: Iterable[str]) -> "EventLog":
        log = cls()
        for line in lines:
            line = line.strip()
            if line:
                log.append(Event.from_json(json.loads(line)))
        return log
