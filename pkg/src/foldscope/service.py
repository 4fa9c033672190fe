"""HTTP session service.

Every endpoint delegates to exactly one engine operation; responses echo
the resulting state. Mutations on a session are serialized through one
lock per session, reads see consistent immutable snapshots, and assemblies
are shared read-only. With FOLDSCOPE_DATA_DIR set (or a data_dir passed to
create_app) sessions persist as an append-only operation log with periodic
snapshots, and are restored on startup.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
import time
import uuid
from typing import Any

from fastapi import FastAPI, File, Query, Request, UploadFile
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import fold, insets as insets_mod, metrics as metrics_mod, tasks as tasks_mod
from .errors import (
    FoldscopeError,
    InsetLocked,
    ParentNotOpen,
    ParseError,
    SubsectionNotOpen,
    UnknownChromosome,
    UnknownInset,
    UnknownPhenotype,
    UnknownRegion,
    UnknownSubsection,
)
from .events import Event, EventKind
from .ingest import parse_cytobands, parse_gene_table, parse_phenotype_table
from .model import GenomeAssembly, ModelConfig, assembly_to_json_bytes, build_assembly
from .session import (
    FOLD_VERBS,
    Session,
    apply_fold,
    layout_of,
    new_session,
    session_from_doc,
    session_to_doc,
)
from .store import SNAPSHOT_EVERY, DiskStore


class _NotFound(FoldscopeError):
    pass


class Engine:
    """Shared service state: assemblies, sessions, locks, persistence."""

    def __init__(self, data_dir: str | None):
        self.assemblies: dict[str, GenomeAssembly] = {}
        self.sessions: dict[str, Session] = {}
        self.session_assembly: dict[str, str] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.op_counts: dict[str, int] = {}
        self.create_lock = threading.Lock()
        self.store = DiskStore(data_dir) if data_dir else None
        if self.store:
            self._restore()

    def _restore(self) -> None:
        self.assemblies.update(self.store.load_assemblies())
        for sid in self.store.session_ids():
            meta, snapshot, ops = self.store.load_session_record(sid)
            assembly = self.assemblies.get(meta["assembly_id"])
            if assembly is None:
                continue
            if snapshot:
                session = session_from_doc(assembly, snapshot["session"])
                count = snapshot["op_count"]
            else:
                session = new_session(assembly, sid)
                session.created_at = meta["created_at"]
                count = 0
            for op in ops:
                _replay_op(session, op)
                count += 1
            self.sessions[sid] = session
            self.session_assembly[sid] = meta["assembly_id"]
            self.locks[sid] = threading.Lock()
            self.op_counts[sid] = count

    def assembly(self, assembly_id: str) -> GenomeAssembly:
        try:
            return self.assemblies[assembly_id]
        except KeyError:
            raise _NotFound(f"no assembly {assembly_id!r}") from None

    def session(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise _NotFound(f"no session {session_id!r}") from None

    def record(self, session: Session, op: dict) -> None:
        if not self.store:
            return
        self.store.append_op(session.id, op)
        self.op_counts[session.id] = self.op_counts.get(session.id, 0) + 1
        if self.op_counts[session.id] % SNAPSHOT_EVERY == 0:
            self.store.write_snapshot(session.id, session_to_doc(session), self.op_counts[session.id])


def _now_ms(session: Session) -> int:
    elapsed = int((time.time() - session.created_at) * 1000)
    return max(elapsed, session.event_log.last_t_ms)


def _log_event(session: Session, kind: EventKind, chromosome=None, interval=None, payload=None) -> Event:
    start, end = interval if interval else (None, None)
    event = Event(_now_ms(session), kind, chromosome, start, end, payload)
    session.event_log.append(event)
    return event


_FOLD_EVENT_KINDS = {
    "open": EventKind.REGION_OPEN,
    "close": EventKind.REGION_CLOSE,
    "compress": EventKind.COMPRESS,
    "open_sub": EventKind.SUBSECTION_OPEN,
}


def _fold_target_interval(session: Session, chromosome_id: str, verb: str, target: str):
    chromosome = session.assembly.chromosome(chromosome_id)
    if verb in ("open", "close", "compress", "uncompress"):
        region = chromosome.region(target)
        return (region.span_bp.start, region.span_bp.end) if region else None
    found = chromosome.subsection(target)
    return (found[1].span_bp.start, found[1].span_bp.end) if found else None


def _replay_op(session: Session, op: dict) -> None:
    """Re-apply one recorded operation. Handlers below record exactly what
    they did, so replay goes through the same engine calls."""
    kind = op["op"]
    if kind == "fold":
        apply_fold(session, op["chromosome"], op["verb"], op["target"])
    elif kind == "create_inset":
        frame = insets_mod.Frame(**op["frame"]) if op.get("frame") else None
        insets_mod.create_inset(session, op["chromosome"], (op["start"], op["end"]), frame)
    elif kind == "patch_inset":
        _apply_patch(session, op["inset_id"], op["patch"])
    elif kind == "event":
        session.event_log.append(Event.from_json(op["event"]))
    elif kind == "task":
        task = tasks_mod.generate_task(session.assembly, tasks_mod.TaskKind(op["kind"]), op["seed"])
        session.tasks[session.next_task_id()] = task
    elif kind == "answer":
        task = session.tasks[op["task_id"]]
        correct = tasks_mod.check_answer(session.assembly, task, op["answer"])
        session.answers[op["task_id"]] = {"answer": op["answer"], "correct": correct}
    else:
        raise FoldscopeError(f"unknown recorded operation {kind!r}")


def _apply_patch(session: Session, inset_id: str, patch: dict) -> insets_mod.Inset:
    field, value = next(iter(patch.items()))
    if field == "scope":
        return insets_mod.set_scope(session, inset_id, (value["start"], value["end"]))
    if field == "frame":
        return insets_mod.set_frame(session, inset_id, insets_mod.Frame(**value))
    if field == "locked":
        return insets_mod.set_locked(session, inset_id, value)
    if field == "scroll":
        return insets_mod.scroll(session, inset_id, value)
    if field == "toggle_region":
        return insets_mod.toggle_region(session, inset_id, value)
    raise FoldscopeError(f"unknown inset patch field {field!r}")


# -- request bodies ---------------------------------------------------------

class SessionRequest(BaseModel):
    assembly_id: str


class FoldRequest(BaseModel):
    chromosome: str
    verb: str
    target: str


class FrameModel(BaseModel):
    x: float
    y: float
    width: float
    height: float


class IntervalModel(BaseModel):
    start: int
    end: int


class InsetRequest(BaseModel):
    chromosome: str
    start: int
    end: int
    frame: FrameModel | None = None


class InsetPatch(BaseModel):
    scope: IntervalModel | None = None
    frame: FrameModel | None = None
    locked: bool | None = None
    scroll: int | None = None
    toggle_region: str | None = None


class EventRequest(BaseModel):
    kind: str
    t_ms: int | None = None
    chrom: str | None = None
    start: int | None = None
    end: int | None = None
    payload: Any = None


class TaskRequest(BaseModel):
    kind: str
    seed: int


class AnswerRequest(BaseModel):
    task_id: str
    answer: Any


def _status_for(exc: FoldscopeError) -> int:
    if isinstance(exc, ParseError):
        return 422
    if isinstance(exc, (_NotFound, UnknownChromosome, UnknownRegion, UnknownSubsection,
                        UnknownInset, UnknownPhenotype)):
        return 404
    if isinstance(exc, (InsetLocked, ParentNotOpen, SubsectionNotOpen)):
        return 409
    return 400


def create_app(data_dir: str | None = None) -> FastAPI:
    if data_dir is None:
        data_dir = os.environ.get("FOLDSCOPE_DATA_DIR") or None
    app = FastAPI(title="foldscope", version="0.1.0")
    engine = Engine(data_dir)
    app.state.engine = engine

    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(FoldscopeError)
    def _engine_error(_request: Request, exc: FoldscopeError):
        body = {"detail": str(exc)}
        if isinstance(exc, ParseError) and exc.line_no is not None:
            body["line"] = exc.line_no
        return JSONResponse(status_code=_status_for(exc), content=body)

    @app.exception_handler(ValueError)
    def _value_error(_request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def _assembly_summary(assembly_id: str, assembly: GenomeAssembly) -> dict:
        return {
            "id": assembly_id,
            "name": assembly.name,
            "chromosomes": len(assembly.chromosomes),
            "total_length_bp": assembly.total_length_bp,
            "gene_count": assembly.gene_count,
            "phenotypes": [p.name for p in assembly.phenotypes],
            "phenotype_colors": {p.name: p.color for p in assembly.phenotypes},
        }

    @app.get("/assemblies")
    def list_assemblies():
        return [
            _assembly_summary(aid, assembly)
            for aid, assembly in sorted(engine.assemblies.items())
        ]

    @app.post("/assemblies")
    def post_assembly(
        cytobands: UploadFile = File(...),
        genes: UploadFile = File(...),
        phenotypes: UploadFile | None = File(None),
        strict: bool = Query(True),
        name: str = Query("assembly"),
    ):
        issues: list = []
        band_rows = parse_cytobands(
            cytobands.file.read().decode().splitlines(), strict=strict, issues=issues
        )
        gene_rows = parse_gene_table(
            genes.file.read().decode().splitlines(), strict=strict, issues=issues
        )
        phenotype_rows = []
        if phenotypes is not None:
            phenotype_rows = parse_phenotype_table(
                phenotypes.file.read().decode().splitlines(), strict=strict, issues=issues
            )
        assembly = build_assembly(band_rows, gene_rows, phenotype_rows, ModelConfig(assembly_name=name))
        assembly_id = hashlib.sha256(assembly_to_json_bytes(assembly)).hexdigest()[:12]
        with engine.create_lock:
            engine.assemblies[assembly_id] = assembly
            if engine.store:
                engine.store.save_assembly(assembly_id, assembly)
        summary = _assembly_summary(assembly_id, assembly)
        summary["issues"] = [{"line": i.line_no, "message": i.message} for i in issues]
        return summary

    @app.get("/assemblies/{assembly_id}")
    def get_assembly(assembly_id: str):
        return _assembly_summary(assembly_id, engine.assembly(assembly_id))

    @app.get("/assemblies/{assembly_id}/chromosomes")
    def get_chromosomes(assembly_id: str):
        assembly = engine.assembly(assembly_id)
        return [
            {
                "id": c.id,
                "length_bp": c.length_bp,
                "region_count": len(c.regions),
                "gene_count": c.gene_count,
                "centromere": c.centromere.to_json(),
            }
            for c in assembly.chromosomes
        ]

    @app.post("/sessions")
    def post_session(body: SessionRequest):
        assembly = engine.assembly(body.assembly_id)
        with engine.create_lock:
            session_id = f"ses-{uuid.uuid4().hex[:10]}"
            session = new_session(assembly, session_id)
            engine.sessions[session_id] = session
            engine.session_assembly[session_id] = body.assembly_id
            engine.locks[session_id] = threading.Lock()
            engine.op_counts[session_id] = 0
            if engine.store:
                engine.store.create_session(session_id, body.assembly_id, session.created_at)
        return {"id": session_id, "assembly_id": body.assembly_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = engine.session(session_id)
        return {
            "id": session.id,
            "assembly_id": engine.session_assembly.get(session_id),
            "fold_states": {c: s.to_json() for c, s in sorted(session.fold_states.items())},
            "insets": [session.insets[iid].to_json() for iid in sorted(session.insets)],
            "tasks": {tid: t.to_json() for tid, t in sorted(session.tasks.items())},
            "answers": session.answers,
            "event_count": len(session.event_log),
        }

    @app.post("/sessions/{session_id}/fold")
    def post_fold(session_id: str, body: FoldRequest):
        session = engine.session(session_id)
        with engine.locks[session_id]:
            if body.verb not in FOLD_VERBS:
                raise FoldscopeError(
                    f"unknown fold verb {body.verb!r}; expected one of {FOLD_VERBS}"
                )
            interval = _fold_target_interval(session, body.chromosome, body.verb, body.target)
            layout = apply_fold(session, body.chromosome, body.verb, body.target)
            engine.record(session, {
                "op": "fold", "chromosome": body.chromosome,
                "verb": body.verb, "target": body.target,
            })
            event_kind = _FOLD_EVENT_KINDS.get(body.verb)
            if event_kind is not None:
                event = _log_event(session, event_kind, body.chromosome, interval)
                engine.record(session, {"op": "event", "event": event.to_json()})
            state = session.fold_state(body.chromosome)
        return fold.layout_to_json(session.assembly, state, layout)

    @app.get("/sessions/{session_id}/layout/{chromosome}")
    def get_layout(session_id: str, chromosome: str):
        session = engine.session(session_id)
        state = session.fold_state(chromosome)
        return fold.layout_to_json(session.assembly, state, layout_of(session, chromosome))

    @app.post("/sessions/{session_id}/insets")
    def post_inset(session_id: str, body: InsetRequest):
        session = engine.session(session_id)
        with engine.locks[session_id]:
            frame = insets_mod.Frame(**body.frame.model_dump()) if body.frame else None
            inset = insets_mod.create_inset(session, body.chromosome, (body.start, body.end), frame)
            engine.record(session, {
                "op": "create_inset", "chromosome": body.chromosome,
                "start": body.start, "end": body.end,
                "frame": body.frame.model_dump() if body.frame else None,
            })
            interval = (body.start, body.end)
            for kind in (EventKind.INSET_CREATE, EventKind.SCOPE_QUERY):
                event = _log_event(session, kind, body.chromosome, interval, payload=inset.id)
                engine.record(session, {"op": "event", "event": event.to_json()})
        return inset.to_json()

    @app.get("/sessions/{session_id}/insets")
    def get_insets(session_id: str):
        session = engine.session(session_id)
        return [session.insets[iid].to_json() for iid in sorted(session.insets)]

    @app.patch("/sessions/{session_id}/insets/{inset_id}")
    def patch_inset(session_id: str, inset_id: str, body: InsetPatch):
        session = engine.session(session_id)
        patch = {k: v for k, v in body.model_dump().items() if v is not None}
        if len(patch) != 1:
            raise FoldscopeError("patch exactly one of scope/frame/locked/scroll/toggle_region")
        with engine.locks[session_id]:
            inset = _apply_patch(session, inset_id, patch)
            engine.record(session, {"op": "patch_inset", "inset_id": inset_id, "patch": patch})
            if "scope" in patch:
                event = _log_event(
                    session, EventKind.SCOPE_QUERY, inset.scope.chromosome_id,
                    (inset.scope.interval_bp.start, inset.scope.interval_bp.end), payload=inset_id,
                )
                engine.record(session, {"op": "event", "event": event.to_json()})
        return inset.to_json()

    @app.get("/sessions/{session_id}/insets/{inset_id}/content")
    def get_inset_content(session_id: str, inset_id: str, rows: int = Query(..., ge=1)):
        session = engine.session(session_id)
        return insets_mod.inset_content(session, inset_id, rows).to_json()

    @app.post("/sessions/{session_id}/events")
    def post_event(session_id: str, body: EventRequest):
        session = engine.session(session_id)
        with engine.locks[session_id]:
            t_ms = body.t_ms if body.t_ms is not None else _now_ms(session)
            event = Event(t_ms, EventKind(body.kind), body.chrom, body.start, body.end, body.payload)
            session.event_log.append(event)
            engine.record(session, {"op": "event", "event": event.to_json()})
        return {"events": len(session.event_log)}

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str):
        session = engine.session(session_id)
        return {"events": [e.to_json() for e in session.event_log]}

    @app.post("/sessions/{session_id}/tasks")
    def post_task(session_id: str, body: TaskRequest):
        session = engine.session(session_id)
        with engine.locks[session_id]:
            task = tasks_mod.generate_task(session.assembly, tasks_mod.TaskKind(body.kind), body.seed)
            task_id = session.next_task_id()
            session.tasks[task_id] = task
            engine.record(session, {"op": "task", "kind": body.kind, "seed": body.seed})
        return {"task_id": task_id, "task": task.to_json()}

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, body: AnswerRequest):
        session = engine.session(session_id)
        with engine.locks[session_id]:
            task = session.tasks.get(body.task_id)
            if task is None:
                raise _NotFound(f"no task {body.task_id!r} in session {session_id!r}")
            answer = tuple(body.answer) if isinstance(body.answer, list) else body.answer
            correct = tasks_mod.check_answer(session.assembly, task, answer)
            session.answers[body.task_id] = {"answer": body.answer, "correct": correct}
            engine.record(session, {"op": "answer", "task_id": body.task_id, "answer": body.answer})
            event = _log_event(session, EventKind.ANSWER_SUBMIT, payload=body.answer)
            engine.record(session, {"op": "event", "event": event.to_json()})
        return {"task_id": body.task_id, "correct": correct}

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(
        session_id: str,
        task: str | None = Query(None),
        chromosome: str | None = Query(None),
    ):
        session = engine.session(session_id)
        if task is None and chromosome is None:
            raise FoldscopeError("pass ?task=<task id> or ?chromosome=<id>")
        if task is not None:
            spec = session.tasks.get(task)
            if spec is None:
                raise _NotFound(f"no task {task!r} in session {session_id!r}")
            chromosome = spec.chromosome_id
        chrom = session.assembly.chromosome(chromosome)
        out: dict[str, Any] = {
            "chromosome": chromosome,
            "exploration_percentage": metrics_mod.exploration_percentage(
                session.event_log, chrom.length_bp
            ),
        }
        if task is not None:
            out["task_id"] = task
            if spec.kind is tasks_mod.TaskKind.IDENTIFY:
                target = chrom.region(tasks_mod.oracle_answer(session.assembly, spec))
                out["time_to_first_hit_ms"] = metrics_mod.time_to_first_hit(
                    session.event_log, (target.span_bp.start, target.span_bp.end)
                )
            elif spec.kind is tasks_mod.TaskKind.COMPARE:
                region_a = chrom.region(spec.params.region_a)
                region_b = chrom.region(spec.params.region_b)
                span_a = (region_a.span_bp.start, region_a.span_bp.end)
                span_b = (region_b.span_bp.start, region_b.span_bp.end)
                out["time_to_first_hit_ms"] = {
                    spec.params.region_a: metrics_mod.time_to_first_hit(session.event_log, span_a),
                    spec.params.region_b: metrics_mod.time_to_first_hit(session.event_log, span_b),
                }
                out["analysis_time_ms"] = metrics_mod.analysis_time(session.event_log, span_a, span_b)
        return out

    return app


app = create_app()
