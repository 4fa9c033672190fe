"""A working session over one assembly.

Sessions hold mutable references to immutable values: per-chromosome fold
states, inset windows, the interaction event log, and any generated tasks.
The session object itself does no locking; callers that share a session
across threads serialize mutations (the HTTP service keeps one lock per
session).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import fold, insets as insets_mod
from .errors import FoldscopeError
from .events import EventLog
from .fold import FoldState, LayoutConfig, LayoutMap, build_layout
from .model import GenomeAssembly
from .tasks import TaskSpec

FOLD_VERBS = ("open", "close", "compress", "uncompress", "open_sub", "close_sub")


@dataclass
class Session:
    id: str
    assembly: GenomeAssembly
    fold_states: dict[str, FoldState] = field(default_factory=dict)
    insets: dict[str, insets_mod.Inset] = field(default_factory=dict)
    event_log: EventLog = field(default_factory=EventLog)
    tasks: dict[str, TaskSpec] = field(default_factory=dict)
    answers: dict[str, dict] = field(default_factory=dict)
    created_at: float = field(default_factory=time.time)
    layout_config: LayoutConfig = field(default_factory=LayoutConfig)
    inset_seq: int = 0
    task_seq: int = 0

    def next_inset_id(self) -> str:
        self.inset_seq += 1
        return f"ins-{self.inset_seq}"

    def next_task_id(self) -> str:
        self.task_seq += 1
        return f"task-{self.task_seq}"

    def fold_state(self, chromosome_id: str) -> FoldState:
        state = self.fold_states.get(chromosome_id)
        if state is None:
            chromosome = self.assembly.chromosome(chromosome_id)
            state = fold.initial_state(chromosome, self.layout_config)
            self.fold_states[chromosome_id] = state
        return state


def new_session(assembly: GenomeAssembly, session_id: str) -> Session:
    return Session(id=session_id, assembly=assembly)


def apply_fold(session: Session, chromosome_id: str, verb: str, target: str) -> LayoutMap:
    """Apply one fold verb and return the chromosome's new layout."""
    if verb not in FOLD_VERBS:
        raise FoldscopeError(f"unknown fold verb {verb!r}; expected one of {FOLD_VERBS}")
    chromosome = session.assembly.chromosome(chromosome_id)
    state = session.fold_state(chromosome_id)
    op = {
        "open": fold.open_region,
        "close": fold.close_region,
        "compress": fold.compress_region,
        "uncompress": fold.uncompress_region,
        "open_sub": fold.open_subsection,
        "close_sub": fold.close_subsection,
    }[verb]
    new_state = op(chromosome, state, target)
    session.fold_states[chromosome_id] = new_state
    return build_layout(session.assembly, new_state)


def layout_of(session: Session, chromosome_id: str) -> LayoutMap:
    return build_layout(session.assembly, session.fold_state(chromosome_id))


def session_to_doc(session: Session) -> dict:
    """Full snapshot (everything but the assembly) for persistence."""
    return {
        "id": session.id,
        "created_at": session.created_at,
        "inset_seq": session.inset_seq,
        "task_seq": session.task_seq,
        "fold_states": {chrom: state.to_json() for chrom, state in sorted(session.fold_states.items())},
        "insets": [session.insets[iid].to_json() for iid in sorted(session.insets)],
        "events": [e.to_json() for e in session.event_log],
        "tasks": {tid: task.to_json() for tid, task in sorted(session.tasks.items())},
        "answers": dict(sorted(session.answers.items())),
    }


def session_from_doc(assembly: GenomeAssembly, doc: dict) -> Session:
    from .events import Event
    from .fold import state_from_json
    from .insets import inset_from_json
    from .tasks import TaskSpec as _TaskSpec

    session = Session(
        id=doc["id"],
        assembly=assembly,
        created_at=doc["created_at"],
        inset_seq=doc["inset_seq"],
        task_seq=doc["task_seq"],
    )
    for chrom, state_doc in doc["fold_states"].items():
        session.fold_states[chrom] = state_from_json(state_doc, session.layout_config)
    for inset_doc in doc["insets"]:
        session.insets[inset_doc["id"]] = inset_from_json(inset_doc)
    for event_doc in doc["events"]:
        session.event_log.append(Event.from_json(event_doc))
    for tid, task_doc in doc["tasks"].items():
        session.tasks[tid] = _TaskSpec.from_json(task_doc)
    session.answers.update(doc["answers"])
    return session


def session_state_json(session: Session) -> dict:
    """Canonical snapshot of the queryable session state (fold states with
    any non-default entries, plus all insets), for equality comparison."""
    fold_states = {
        chrom: state.to_json()
        for chrom, state in sorted(session.fold_states.items())
        if state.open_regions or state.compressed_regions or state.open_subsections
    }
    return {
        "fold_states": fold_states,
        "insets": [session.insets[iid].to_json() for iid in sorted(session.insets)],
    }
